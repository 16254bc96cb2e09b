use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{binomial, enumerate_multiindices, sort_with_sign, unshuffles, MultiIndex};
use crate::linalg::Scalar;

/// A cochain in `C^p(V,V)`: a sparse combination of basis maps `psi^I_i`
/// sending `e_I` to `e_i` and every other increasing basis wedge to zero.
///
/// Exact zeros are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjCochain {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<(MultiIndex, usize), Scalar>,
}

impl AdjCochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        AdjCochain { dim, degree, coeffs: BTreeMap::new() }
    }

    /// The basis cochain `psi^I_target`.
    pub fn basis(dim: usize, index: MultiIndex, target: usize) -> Result<Self> {
        let mut c = Self::zero(dim, index.len());
        c.add_term(index, target, Scalar::one())?;
        Ok(c)
    }

    /// The identity map, as a 1-cochain.
    pub fn identity(dim: usize) -> Self {
        let mut c = Self::zero(dim, 1);
        for i in 1..=dim {
            c.coeffs.insert((MultiIndex::new(vec![i]).unwrap(), i), Scalar::one());
        }
        c
    }

    /// Builds a 1-cochain from a matrix acting on column vectors: `e_j -> sum_i m[i][j] e_i`.
    pub fn from_endomorphism(m: &crate::linalg::Matrix) -> Self {
        let n = m.rows();
        let mut c = Self::zero(n, 1);
        for i in 0..n {
            for j in 0..n {
                let x = &m[(i, j)];
                if !x.is_zero() {
                    c.coeffs.insert((MultiIndex::new(vec![j + 1]).unwrap(), i + 1), x.clone());
                }
            }
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, usize, &Scalar)> {
        self.coeffs.iter().map(|((i, t), c)| (i, *t, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, index: &MultiIndex, target: usize) -> Scalar {
        self.coeffs.get(&(index.clone(), target)).cloned().unwrap_or_default()
    }

    /// Adds `c * psi^index_target`.
    pub fn add_term(&mut self, index: MultiIndex, target: usize, c: Scalar) -> Result<()> {
        if index.len() != self.degree {
            return Err(Error::Dimension(format!(
                "term of degree {} added to a {}-cochain",
                index.len(),
                self.degree
            )));
        }
        for &i in index.entries().iter().chain([&target]) {
            if i == 0 || i > self.dim {
                return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
            }
        }
        if c.is_zero() {
            return Ok(());
        }
        let key = (index, target);
        let slot = self.coeffs.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    /// Adds `c * psi^{sort(args)}_target` with the sorting sign; repeated
    /// arguments contribute nothing.
    pub fn add_unsorted(&mut self, args: &[usize], target: usize, c: Scalar) -> Result<()> {
        if let Some((idx, s)) = sort_with_sign(args) {
            let c = if s < 0 { -c } else { c };
            self.add_term(idx, target, c)?;
        }
        Ok(())
    }

    fn check_compatible(&self, other: &AdjCochain) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "cochains of shape (dim {}, degree {}) and (dim {}, degree {})",
                self.dim, self.degree, other.dim, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AdjCochain) -> Result<AdjCochain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for ((i, t), c) in &other.coeffs {
            out.add_term(i.clone(), *t, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AdjCochain) -> Result<AdjCochain> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> AdjCochain {
        if c.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        AdjCochain {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Value on a sorted basis wedge `e_I`, as a coordinate vector of length `dim`.
    pub fn eval_sorted(&self, index: &MultiIndex) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        let lo = (index.clone(), 0);
        let hi = (index.clone(), usize::MAX);
        for ((_, t), c) in self.coeffs.range(lo..=hi) {
            v[t - 1] = c.clone();
        }
        v
    }

    /// Antisymmetric evaluation on basis vectors `e_{args[0]}, e_{args[1]}, ...`.
    pub fn eval(&self, args: &[usize]) -> Result<Vec<Scalar>> {
        if args.len() != self.degree {
            return Err(Error::Dimension(format!(
                "{}-cochain evaluated on {} arguments",
                self.degree,
                args.len()
            )));
        }
        if let Some(&bad) = args.iter().find(|&&a| a == 0 || a > self.dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim: self.dim });
        }
        Ok(match sort_with_sign(args) {
            None => vec![Scalar::zero(); self.dim],
            Some((idx, s)) => {
                let v = self.eval_sorted(&idx);
                if s < 0 {
                    v.into_iter().map(|x| -x).collect()
                } else {
                    v
                }
            }
        })
    }

    /// Coefficients grouped by multi-index, for repeated lookups.
    pub(crate) fn by_index(&self) -> HashMap<MultiIndex, Vec<(usize, Scalar)>> {
        let mut map: HashMap<MultiIndex, Vec<(usize, Scalar)>> = HashMap::new();
        for ((i, t), c) in &self.coeffs {
            map.entry(i.clone()).or_default().push((*t, c.clone()));
        }
        map
    }

    /// Dimension of `C^degree(V,V)`.
    pub fn space_dim(dim: usize, degree: usize) -> usize {
        binomial(dim, degree) * dim
    }

    /// Coordinates in the basis ordered by (lexicographic multi-index, target).
    pub fn to_vector(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); Self::space_dim(self.dim, self.degree)];
        for ((i, t), c) in &self.coeffs {
            v[i.rank_in(self.dim) * self.dim + t - 1] = c.clone();
        }
        v
    }

    pub fn from_vector(dim: usize, degree: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != Self::space_dim(dim, degree) {
            return Err(Error::Dimension(format!(
                "vector of length {} for C^{degree} in dimension {dim}",
                v.len()
            )));
        }
        let mut c = Self::zero(dim, degree);
        if dim == 0 {
            return Ok(c);
        }
        for (pos, idx) in enumerate_multiindices(dim, degree).into_iter().enumerate() {
            for t in 1..=dim {
                let x = &v[pos * dim + t - 1];
                if !x.is_zero() {
                    c.coeffs.insert((idx.clone(), t), x.clone());
                }
            }
        }
        Ok(c)
    }

    /// All basis cochains of `C^degree(V,V)` in vector order.
    pub fn basis_elements(dim: usize, degree: usize) -> Vec<AdjCochain> {
        enumerate_multiindices(dim, degree)
            .into_iter()
            .flat_map(|idx| {
                (1..=dim).map(move |t| {
                    let mut c = AdjCochain::zero(dim, degree);
                    c.coeffs.insert((idx.clone(), t), Scalar::one());
                    c
                })
            })
            .collect()
    }

    /// Composition `self ∘ other`: `other` consumes the first unshuffle block.
    ///
    /// For `self` of degree k and `other` of degree l the result has degree
    /// k+l-1 and is
    /// `sum over (l, k-1) unshuffles s of sign(s) self(other(v_s1..v_sl), v_s(l+1)..)`.
    /// A degree-0 outer cochain gives zero.
    pub fn compose(&self, other: &AdjCochain) -> Result<AdjCochain> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "composing cochains on spaces of dimension {} and {}",
                self.dim, other.dim
            )));
        }
        let (k, l, n) = (self.degree, other.degree, self.dim);
        if k == 0 {
            return Ok(AdjCochain::zero(n, l.saturating_sub(1)));
        }
        let out_deg = k + l - 1;
        let mut out = AdjCochain::zero(n, out_deg);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        let outer = self.by_index();
        let shuffles = unshuffles(l, k - 1);
        let mut args = Vec::with_capacity(k);
        for j in enumerate_multiindices(n, out_deg) {
            let js = j.entries();
            let mut acc = vec![Scalar::zero(); n];
            for (sh, sign) in &shuffles {
                let inner_idx =
                    MultiIndex::new(sh.first().iter().map(|&p| js[p - 1]).collect()).expect("increasing");
                let w = other.eval_sorted(&inner_idx);
                for (m, wm) in w.iter().enumerate() {
                    if wm.is_zero() {
                        continue;
                    }
                    args.clear();
                    args.push(m + 1);
                    args.extend(sh.rest().iter().map(|&p| js[p - 1]));
                    let Some((idx, s)) = sort_with_sign(&args) else { continue };
                    let Some(vals) = outer.get(&idx) else { continue };
                    let mut f = wm.clone();
                    if (s < 0) != (*sign < 0) {
                        f = -f;
                    }
                    for (t, c) in vals {
                        acc[t - 1] += &f * c;
                    }
                }
            }
            for (t, x) in acc.into_iter().enumerate() {
                if !x.is_zero() {
                    out.coeffs.insert((j.clone(), t + 1), x);
                }
            }
        }
        Ok(out)
    }
}

/// Nijenhuis–Richardson bracket
/// `[phi, psi] = phi∘psi - (-1)^{(k+1)(l+1)} psi∘phi`
/// of a k-cochain and an l-cochain; the result has degree k+l-1.
///
/// Degree-0 arguments are accepted with the convention that composing into a
/// 0-cochain vanishes, so `[d, x]` is insertion of `x` into `d`.
pub fn nr_bracket(phi: &AdjCochain, psi: &AdjCochain) -> Result<AdjCochain> {
    if phi.degree == 0 && psi.degree == 0 {
        return Err(Error::Unsupported("bracket of two 0-cochains".into()));
    }
    let (k, l) = (phi.degree, psi.degree);
    let a = phi.compose(psi)?;
    let b = psi.compose(phi)?;
    if ((k + 1) * (l + 1)) % 2 == 0 {
        a.sub(&b)
    } else {
        a.add(&b)
    }
}

impl fmt::Display for AdjCochain {
    /// Renders in the `c*psi[{i,j}->m]` text syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, ((idx, t), c)) in self.coeffs.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let inner: Vec<String> = idx.entries().iter().map(|i| i.to_string()).collect();
            write!(f, "psi[{{{}}}->{t}]", inner.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for AdjCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C^{}(dim {}): {}", self.degree, self.dim, self)
    }
}
