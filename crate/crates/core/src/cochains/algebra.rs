use crate::cochains::{nr_bracket, AdjCochain, TrivCochain};
use crate::error::{Error, Result};
use crate::exterior::{enumerate_multiindices, sort_with_sign, MultiIndex};
use crate::linalg::{Matrix, Scalar};

/// A Lie algebra on `V = <e_1..e_n>`, given by its bracket as a 2-cochain `d`
/// with `[e_i, e_j] = sum_k c^k_ij e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    d: AdjCochain,
    /// Dense bracket table, `table[(i-1)*n + (j-1)]` = coordinates of `[e_i, e_j]`.
    table: Vec<Vec<Scalar>>,
}

impl LieAlgebra {
    /// Validates the Jacobi identity `[d,d] = 0`.
    pub fn new(d: AdjCochain) -> Result<Self> {
        let alg = Self::new_unchecked(d)?;
        let dd = nr_bracket(&alg.d, &alg.d)?;
        if !dd.is_zero() {
            return Err(Error::Jacobi(dd.to_string()));
        }
        Ok(alg)
    }

    /// Skips the Jacobi check; callers verify it as a result rather than a precondition.
    pub fn new_unchecked(d: AdjCochain) -> Result<Self> {
        if d.degree() != 2 {
            return Err(Error::Dimension(format!("a bracket is a 2-cochain, got degree {}", d.degree())));
        }
        let n = d.dim();
        let mut table = vec![vec![Scalar::zero(); n]; n * n];
        for (idx, t, c) in d.terms() {
            let (i, j) = (idx.entries()[0], idx.entries()[1]);
            table[(i - 1) * n + (j - 1)][t - 1] = c.clone();
            table[(j - 1) * n + (i - 1)][t - 1] = -c;
        }
        Ok(LieAlgebra { d, table })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new_unchecked(AdjCochain::zero(dim, 2)).expect("degree 2")
    }

    /// Structure constants `(i, j, k, c)` with `i < j`.
    pub fn from_structure_constants(dim: usize, consts: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut d = AdjCochain::zero(dim, 2);
        for (i, j, k, c) in consts {
            d.add_unsorted(&[*i, *j], *k, c.clone())?;
        }
        Self::new(d)
    }

    pub fn dim(&self) -> usize {
        self.d.dim()
    }

    pub fn cochain(&self) -> &AdjCochain {
        &self.d
    }

    /// `[e_i, e_j]` for 1-based indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim();
        &self.table[(i - 1) * n + (j - 1)]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = xi * yj;
                for (k, c) in self.bracket_basis(i + 1, j + 1).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &f * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_jacobi(&self) -> bool {
        nr_bracket(&self.d, &self.d).map(|dd| dd.is_zero()).unwrap_or(false)
    }

    /// Direct sum: `other` occupies basis indices `dim()+1 ..`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let shift = self.dim();
        let n = shift + other.dim();
        let mut d = AdjCochain::zero(n, 2);
        for (idx, t, c) in self.d.terms() {
            d.add_term(idx.clone(), t, c.clone()).expect("in range");
        }
        for (idx, t, c) in other.d.terms() {
            let moved = MultiIndex::new(idx.entries().iter().map(|e| e + shift).collect()).unwrap();
            d.add_term(moved, t + shift, c.clone()).expect("in range");
        }
        LieAlgebra::new_unchecked(d).expect("degree 2")
    }
}

/// Coboundary on adjoint cochains, the standard Chevalley–Eilenberg operator
///
/// `(Dφ)(v_0..v_p) = Σ_a (-1)^a [v_a, φ(..v̂_a..)] + Σ_{a<b} (-1)^{a+b} φ([v_a,v_b], ..v̂_a..v̂_b..)`.
///
/// In terms of the Nijenhuis–Richardson bracket, `Dφ = (-1)^{p+1} [d, φ]`
/// for every degree p (see [`coboundary_sign`]).
pub fn coboundary_adj(alg: &LieAlgebra, c: &AdjCochain) -> Result<AdjCochain> {
    let n = alg.dim();
    if c.dim() != n {
        return Err(Error::Dimension(format!("cochain on dimension {} for an algebra of dimension {n}", c.dim())));
    }
    let p = c.degree();
    let mut out = AdjCochain::zero(n, p + 1);
    if c.is_zero() {
        return Ok(out);
    }
    let by_index = c.by_index();
    let mut args = Vec::with_capacity(p);
    for j in enumerate_multiindices(n, p + 1) {
        let js = j.entries();
        let mut acc = vec![Scalar::zero(); n];
        // Action terms.
        for a in 0..=p {
            let rest = j.without_position(a);
            let Some(vals) = by_index.get(&rest) else { continue };
            let negate = a % 2 == 1;
            for (t, coef) in vals {
                for (k, b) in alg.bracket_basis(js[a], *t).iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let v = coef * b;
                    if negate {
                        acc[k] -= &v;
                    } else {
                        acc[k] += &v;
                    }
                }
            }
        }
        // Bracket-insertion terms.
        for a in 0..=p {
            for b in a + 1..=p {
                let br = alg.bracket_basis(js[a], js[b]);
                let negate = (a + b) % 2 == 1;
                for (m, bm) in br.iter().enumerate() {
                    if bm.is_zero() {
                        continue;
                    }
                    args.clear();
                    args.push(m + 1);
                    args.extend(js.iter().enumerate().filter(|(q, _)| *q != a && *q != b).map(|(_, &x)| x));
                    let Some((idx, s)) = sort_with_sign(&args) else { continue };
                    let Some(vals) = by_index.get(&idx) else { continue };
                    let flip = negate != (s < 0);
                    for (t, coef) in vals {
                        let v = bm * coef;
                        if flip {
                            acc[t - 1] -= &v;
                        } else {
                            acc[t - 1] += &v;
                        }
                    }
                }
            }
        }
        for (t, x) in acc.into_iter().enumerate() {
            out.add_term(j.clone(), t + 1, x)?;
        }
    }
    Ok(out)
}

/// The fixed sign ε_p with `coboundary_adj(c) = ε_p · [d, c]` for `c` of degree p.
pub fn coboundary_sign(p: usize) -> i32 {
    if p % 2 == 0 {
        -1
    } else {
        1
    }
}

/// Coboundary on trivial-coefficient cochains:
/// `(Dω)(v_1..v_{q+1}) = Σ_{σ ∈ Sh(2,q-1)} sgn(σ) ω([v_σ1, v_σ2], v_σ3, ..)`.
pub fn coboundary_triv(alg: &LieAlgebra, w: &TrivCochain) -> Result<TrivCochain> {
    let n = alg.dim();
    if w.dim() != n {
        return Err(Error::Dimension("form and algebra dimensions differ".into()));
    }
    let q = w.degree();
    let mut out = TrivCochain::zero(n, q + 1);
    if q == 0 || w.is_zero() {
        return Ok(out);
    }
    let mut args = Vec::with_capacity(q);
    for j in enumerate_multiindices(n, q + 1) {
        let js = j.entries();
        let mut acc = Scalar::zero();
        for a in 0..=q {
            for b in a + 1..=q {
                // Sign of the unshuffle moving positions (a, b) to the front.
                let negate = (a + b + 1) % 2 == 1;
                for (m, bm) in alg.bracket_basis(js[a], js[b]).iter().enumerate() {
                    if bm.is_zero() {
                        continue;
                    }
                    args.clear();
                    args.push(m + 1);
                    args.extend(js.iter().enumerate().filter(|(r, _)| *r != a && *r != b).map(|(_, &x)| x));
                    let v = bm * &w.eval(&args);
                    if negate {
                        acc -= &v;
                    } else {
                        acc += &v;
                    }
                }
            }
        }
        out.add_term(j, acc)?;
    }
    Ok(out)
}

/// A symmetric bilinear form, candidate invariant inner product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearForm { matrix })
    }

    pub fn identity(n: usize) -> Self {
        BilinearForm { matrix: Matrix::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    pub fn eval(&self, i: usize, j: usize) -> &Scalar {
        &self.matrix[(i - 1, j - 1)]
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &BilinearForm) -> BilinearForm {
        let (a, b) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                m[(i, j)] = self.matrix[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                m[(a + i, a + j)] = other.matrix[(i, j)].clone();
            }
        }
        BilinearForm { matrix: m }
    }

    fn require_nondegenerate(&self) -> Result<Matrix> {
        self.matrix.inverse().map_err(|_| Error::DegenerateForm)
    }
}

/// True iff `B([x,y],z) = B(x,[y,z])` on all basis triples.
pub fn is_invariant(alg: &LieAlgebra, b: &BilinearForm) -> Result<bool> {
    let n = alg.dim();
    if b.dim() != n {
        return Err(Error::Dimension("form and algebra dimensions differ".into()));
    }
    let form = |v: &[Scalar], k: usize| -> Scalar {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| x * b.eval(i + 1, k))
            .sum()
    };
    for x in 1..=n {
        for y in 1..=n {
            for z in 1..=n {
                let lhs = form(alg.bracket_basis(x, y), z);
                let rhs = form(alg.bracket_basis(y, z), x);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Values of `φ̃(v_1..v_{p+1}) = B(φ(v_1..v_p), v_{p+1})` on all `(e_I, e_j)`
/// with `I` increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeTable {
    dim: usize,
    degree: usize,
    values: std::collections::BTreeMap<(MultiIndex, usize), Scalar>,
}

impl TildeTable {
    /// Degree of the underlying cochain; the form has one more argument.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, index: &MultiIndex, last: usize) -> Scalar {
        self.values.get(&(index.clone(), last)).cloned().unwrap_or_default()
    }

    /// Value on an arbitrary argument tuple of length p+1.
    pub fn eval(&self, args: &[usize]) -> Scalar {
        let (last, head) = args.split_last().expect("at least one argument");
        match sort_with_sign(head) {
            None => Scalar::zero(),
            Some((idx, s)) => {
                let v = self.value(&idx, *last);
                if s < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// True iff the (p+1)-form is alternating in all arguments.
    pub fn is_alternating(&self) -> bool {
        let p = self.degree;
        // Repeated last argument must vanish.
        for ((idx, last), v) in &self.values {
            if idx.contains(*last) && !v.is_zero() {
                return false;
            }
        }
        // Moving each entry of an increasing J to the end must give the same value.
        for j in enumerate_multiindices(self.dim, p + 1) {
            let reference = self.value(&j.without_position(p), j.entries()[p]);
            for r in 0..p {
                let mut v = self.value(&j.without_position(r), j.entries()[r]);
                if (p - r) % 2 == 1 {
                    v = -v;
                }
                if v != reference {
                    return false;
                }
            }
        }
        true
    }

    /// The alternating form in `C^{p+1}(V,k)`, when the table is alternating.
    pub fn to_triv(&self) -> Option<TrivCochain> {
        if !self.is_alternating() {
            return None;
        }
        let p = self.degree;
        let mut out = TrivCochain::zero(self.dim, p + 1);
        for j in enumerate_multiindices(self.dim, p + 1) {
            let v = self.value(&j.without_position(p), j.entries()[p]);
            out.add_term(j, v).expect("shape");
        }
        Some(out)
    }
}

/// Lowers a V-valued cochain to a scalar-valued one with the form `b`.
pub fn tilde(c: &AdjCochain, b: &BilinearForm) -> Result<TildeTable> {
    let n = c.dim();
    if b.dim() != n {
        return Err(Error::Dimension("form and cochain dimensions differ".into()));
    }
    let mut values = std::collections::BTreeMap::new();
    for (idx, t, coef) in c.terms() {
        for j in 1..=n {
            let bij = b.eval(t, j);
            if bij.is_zero() {
                continue;
            }
            let slot = values.entry((idx.clone(), j)).or_insert_with(Scalar::zero);
            *slot += coef * bij;
        }
    }
    values.retain(|_, v: &mut Scalar| !v.is_zero());
    Ok(TildeTable { dim: n, degree: c.degree(), values })
}

/// A cochain is cyclic with respect to `b` iff its lowering is alternating.
pub fn is_cyclic(c: &AdjCochain, b: &BilinearForm) -> Result<bool> {
    b.require_nondegenerate()?;
    Ok(tilde(c, b)?.is_alternating())
}

/// Inverse of [`tilde`] on alternating forms: the unique `φ` of degree q-1
/// with `φ̃ = ω`.
pub fn raise(w: &TrivCochain, b: &BilinearForm) -> Result<AdjCochain> {
    let n = w.dim();
    if w.degree() == 0 {
        return Err(Error::Unsupported("cannot raise a 0-form".into()));
    }
    let binv = b.require_nondegenerate()?;
    let mut out = AdjCochain::zero(n, w.degree() - 1);
    for (j, c) in w.terms() {
        // Every position of J can play the role of the last argument.
        for r in 0..j.len() {
            let last = j.entries()[r];
            let head = j.without_position(r);
            let sign = if (j.len() - 1 - r) % 2 == 1 { -c.clone() } else { c.clone() };
            for i in 1..=n {
                let x = &binv[(last - 1, i - 1)];
                if !x.is_zero() {
                    out.add_term(head.clone(), i, &sign * x)?;
                }
            }
        }
    }
    Ok(out)
}

/// Bracket on alternating forms of degrees k+1 and l+1, giving degree k+l:
///
/// `[φ̃, ψ̃](v_1..v_{k+l}) = Σ_{σ ∈ Sh(l,k)} sgn(σ) φ̃(ψ(v_σ1..v_σl), v_σ(l+1)..v_σ(k+l))`
///
/// where `ψ` is `ψ̃` raised with `b`. Agrees with the lowering of the
/// Nijenhuis–Richardson bracket of the raised cochains.
pub fn bracket_triv(phi: &TrivCochain, psi: &TrivCochain, b: &BilinearForm) -> Result<TrivCochain> {
    if phi.dim() != psi.dim() || phi.dim() != b.dim() {
        return Err(Error::Dimension("forms on spaces of different dimension".into()));
    }
    if phi.degree() == 0 || psi.degree() == 0 {
        return Err(Error::NotCyclic);
    }
    let n = phi.dim();
    let (k, l) = (phi.degree() - 1, psi.degree() - 1);
    let inner = raise(psi, b)?;
    let mut out = TrivCochain::zero(n, k + l);
    let shuffles = crate::exterior::unshuffles(l, k);
    let mut args = Vec::with_capacity(k + 1);
    for j in enumerate_multiindices(n, k + l) {
        let js = j.entries();
        let mut acc = Scalar::zero();
        for (sh, sign) in &shuffles {
            let idx = MultiIndex::new(sh.first().iter().map(|&p| js[p - 1]).collect()).unwrap();
            let w = inner.eval_sorted(&idx);
            for (m, wm) in w.iter().enumerate() {
                if wm.is_zero() {
                    continue;
                }
                args.clear();
                args.push(m + 1);
                args.extend(sh.rest().iter().map(|&p| js[p - 1]));
                let v = wm * &phi.eval(&args);
                if *sign < 0 {
                    acc -= &v;
                } else {
                    acc += &v;
                }
            }
        }
        out.add_term(j, acc)?;
    }
    Ok(out)
}

/// A Lie algebra together with a nondegenerate invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricAlgebra {
    pub algebra: LieAlgebra,
    pub form: BilinearForm,
}

impl MetricAlgebra {
    pub fn new(algebra: LieAlgebra, form: BilinearForm) -> Result<Self> {
        if form.dim() != algebra.dim() {
            return Err(Error::Dimension("form and algebra dimensions differ".into()));
        }
        if !form.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        if !is_invariant(&algebra, &form)? {
            return Err(Error::NotInvariant);
        }
        Ok(MetricAlgebra { algebra, form })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Direct sum with block-diagonal form.
    pub fn direct_sum(&self, other: &MetricAlgebra) -> MetricAlgebra {
        MetricAlgebra {
            algebra: self.algebra.direct_sum(&other.algebra),
            form: self.form.direct_sum(&other.form),
        }
    }
}
