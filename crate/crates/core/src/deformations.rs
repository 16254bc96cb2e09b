//! Parameterized deformations of a bracket: evaluation, Jacobi and cyclicity
//! at parameter points, exact polynomial expansion of `[d_t, d_t]`, gauge
//! actions, isomorphism checks and the order-2 step of a miniversal
//! deformation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cochains::{
    coboundary_adj, is_cyclic, nr_bracket, parse_terms, AdjCochain, BilinearForm, LieAlgebra, MetricAlgebra,
    SymbolicTerm,
};
use crate::cohomology::{cyclic_cohomology, cyclic_subspace};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, Scalar};
use crate::poly::{Bindings, Expr, Monomial, Poly};

/// On-disk form of a deformation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DeformationSpec {
    /// Empty means the catalog entry's own bracket.
    #[serde(default)]
    pub base: String,
    pub params: Vec<String>,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermSpec {
    #[serde(default)]
    pub monomial: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<String>,
    pub cochain: String,
}

#[derive(Clone, Debug)]
struct Term {
    monomial: Monomial,
    denominator: Option<Expr>,
    cochain: Vec<SymbolicTerm>,
}

/// `d_t = base + Σ monomial(t) / denominator(t) · cochain`, where cochain
/// coefficients may themselves be expressions in the parameters or in fixed
/// bindings such as `lambda`.
#[derive(Clone, Debug)]
pub struct Deformation {
    dim: usize,
    params: Vec<String>,
    fixed: Bindings,
    base: Vec<SymbolicTerm>,
    terms: Vec<Term>,
    relations: RelationSet,
}

fn build_cochain(terms: &[SymbolicTerm], dim: usize, at: &Bindings) -> Result<AdjCochain> {
    let mut out = AdjCochain::zero(dim, 2);
    for t in terms {
        if t.indices.len() != 2 || t.target == 0 {
            return Err(Error::Parse("deformation terms must be V-valued 2-cochains".into()));
        }
        out.add_unsorted(&t.indices, t.target, t.coeff.eval(at)?)?;
    }
    Ok(out)
}

impl Deformation {
    /// `fixed` binds non-parameter names appearing in the cochains.
    pub fn from_spec(spec: &DeformationSpec, dim: usize, fixed: &Bindings) -> Result<Self> {
        let terms = spec
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    monomial: Monomial::from_exponents(t.monomial.iter().map(|(k, e)| (k.as_str(), *e))),
                    denominator: t.denominator.as_deref().map(Expr::parse).transpose()?,
                    cochain: parse_terms(&t.cochain)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for t in &terms {
            if let Some(bad) = t.monomial.exponents().keys().find(|k| !spec.params.contains(k)) {
                return Err(Error::Parse(format!("monomial uses unknown parameter {bad:?}")));
            }
        }
        let relations = RelationSet::new(spec.relations.iter().map(|r| Poly::parse(r)).collect::<Result<_>>()?)?;
        let def = Deformation {
            dim,
            params: spec.params.clone(),
            fixed: fixed.clone(),
            base: parse_terms(&spec.base)?,
            terms,
            relations,
        };
        // Shape check at the origin.
        build_cochain(&def.base, dim, &def.bindings(&vec![Scalar::zero(); def.params.len()])?)?;
        Ok(def)
    }

    /// A one-parameter deformation `d + t·psi`.
    pub fn linear(base: &AdjCochain, direction: &AdjCochain) -> Result<Self> {
        let spec = DeformationSpec {
            base: base.to_string(),
            params: vec!["t".into()],
            terms: vec![TermSpec {
                monomial: BTreeMap::from([("t".to_string(), 1)]),
                denominator: None,
                cochain: direction.to_string(),
            }],
            relations: Vec::new(),
        };
        Self::from_spec(&spec, base.dim(), &Bindings::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.denominator.is_none())
    }

    /// Highest total degree in the parameters, counting parameters that
    /// appear inside cochain coefficients.
    pub fn max_degree(&self) -> Result<u32> {
        Ok(self.expand()?.keys().map(Monomial::degree).max().unwrap_or(0))
    }

    fn bindings(&self, point: &[Scalar]) -> Result<Bindings> {
        if point.len() != self.params.len() {
            return Err(Error::Dimension(format!(
                "expected {} parameter values, got {}",
                self.params.len(),
                point.len()
            )));
        }
        let mut at = self.fixed.clone();
        for (k, v) in self.params.iter().zip(point) {
            at.insert(k.clone(), v.clone());
        }
        Ok(at)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<AdjCochain> {
        let at = self.bindings(point)?;
        let mut d = build_cochain(&self.base, self.dim, &at)?;
        for t in &self.terms {
            let mut f = t.monomial.eval(&at)?;
            if let Some(den) = &t.denominator {
                let v = den.eval(&at)?;
                if v.is_zero() {
                    return Err(Error::VanishingDenominator);
                }
                f = f / v;
            }
            if f.is_zero() {
                continue;
            }
            d = d.add(&build_cochain(&t.cochain, self.dim, &at)?.scale(&f))?;
        }
        Ok(d)
    }

    /// Exact expansion `d_t = Σ_m m(t) c_m` by parameter monomial. Fails for
    /// deformations with denominators.
    pub fn expand(&self) -> Result<BTreeMap<Monomial, AdjCochain>> {
        let mut out: BTreeMap<Monomial, AdjCochain> = BTreeMap::new();
        let mut push = |scale: &Monomial, terms: &[SymbolicTerm]| -> Result<()> {
            for t in terms {
                let coeff = t.coeff.to_poly()?.substitute(&self.fixed);
                for (m, c) in coeff.terms() {
                    if let Some(bad) = m.exponents().keys().find(|k| !self.params.contains(k)) {
                        return Err(Error::Parse(format!("unbound name {bad:?} in a cochain coefficient")));
                    }
                    let key = scale.mul(m);
                    let slot = out.entry(key).or_insert_with(|| AdjCochain::zero(self.dim, 2));
                    slot.add_unsorted(&t.indices, t.target, c.clone())?;
                }
            }
            Ok(())
        };
        push(&Monomial::one(), &self.base)?;
        for t in &self.terms {
            if t.denominator.is_some() {
                return Err(Error::Unsupported("exact expansion of a rational deformation".into()));
            }
            push(&t.monomial, &t.cochain)?;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `[d_t, d_t]` as an exact polynomial in the parameters, keeping only
    /// monomials with nonzero cochain coefficient.
    pub fn jacobi_expansion(&self) -> Result<BTreeMap<Monomial, AdjCochain>> {
        let parts: Vec<(Monomial, AdjCochain)> = self.expand()?.into_iter().collect();
        let mut out: BTreeMap<Monomial, AdjCochain> = BTreeMap::new();
        for (a, (ma, ca)) in parts.iter().enumerate() {
            for (b, (mb, cb)) in parts.iter().enumerate().skip(a) {
                let br = nr_bracket(ca, cb)?;
                if br.is_zero() {
                    continue;
                }
                // The bracket is symmetric on 2-cochains.
                let br = if a == b { br } else { br.scale(&Scalar::from_int(2)) };
                let key = ma.mul(mb);
                let slot = out.entry(key).or_insert_with(|| AdjCochain::zero(self.dim, 3));
                *slot = slot.add(&br)?;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn check_jacobi_at(&self, point: &[Scalar]) -> Result<bool> {
        let d = self.evaluate(point)?;
        Ok(nr_bracket(&d, &d)?.is_zero())
    }

    /// The Jacobiator `[d_t, d_t]` at a point, for failure reports.
    pub fn jacobi_residual(&self, point: &[Scalar]) -> Result<AdjCochain> {
        let d = self.evaluate(point)?;
        nr_bracket(&d, &d)
    }

    pub fn check_cyclic_at(&self, b: &BilinearForm, point: &[Scalar]) -> Result<bool> {
        is_cyclic(&self.evaluate(point)?, b)
    }

    pub fn relations_at(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.relations.eval(&self.bindings(point)?)
    }
}

/// Relations on the base of a deformation, each of order at least 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    polys: Vec<Poly>,
}

impl RelationSet {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        if let Some(p) = polys.iter().find(|p| p.min_degree().is_some_and(|d| d < 2)) {
            return Err(Error::Parse(format!("relation {p} has a constant or linear part")));
        }
        Ok(RelationSet { polys })
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn eval(&self, at: &Bindings) -> Result<Vec<Scalar>> {
        self.polys.iter().map(|p| p.eval(at)).collect()
    }
}

/// `(g·d)(x, y) = g⁻¹ d(gx, gy)`.
pub fn pushforward(g: &Matrix, d: &AdjCochain) -> Result<AdjCochain> {
    let n = d.dim();
    if g.rows() != n || g.cols() != n {
        return Err(Error::Dimension("matrix size differs from cochain dimension".into()));
    }
    let ginv = g.inverse()?;
    let alg = LieAlgebra::new_unchecked(d.clone())?;
    let mut out = AdjCochain::zero(n, 2);
    for i in 1..=n {
        for j in i + 1..=n {
            let br = alg.bracket(&g.column(i - 1), &g.column(j - 1));
            for (t, x) in ginv.mul_vec(&br).into_iter().enumerate() {
                out.add_unsorted(&[i, j], t + 1, x)?;
            }
        }
    }
    Ok(out)
}

/// True iff `G d1(e_i, e_j) = d2(G e_i, G e_j)` for all basis pairs.
pub fn check_isomorphism(g: &Matrix, d1: &AdjCochain, d2: &AdjCochain) -> Result<bool> {
    let n = d1.dim();
    if d2.dim() != n || g.rows() != n || g.cols() != n {
        return Err(Error::Dimension("isomorphism between spaces of different dimension".into()));
    }
    if g.rank() != n {
        return Err(Error::Singular);
    }
    let a1 = LieAlgebra::new_unchecked(d1.clone())?;
    let a2 = LieAlgebra::new_unchecked(d2.clone())?;
    for i in 1..=n {
        for j in i + 1..=n {
            let lhs = g.mul_vec(a1.bracket_basis(i, j));
            let rhs = a2.bracket(&g.column(i - 1), &g.column(j - 1));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ways a printed matrix may act on the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoConvention {
    /// `G` as printed: columns are the images of basis vectors.
    Direct,
    /// Rows are the images of basis vectors.
    Transpose,
    Inverse,
    InverseTranspose,
}

impl IsoConvention {
    pub const ALL: [IsoConvention; 4] =
        [IsoConvention::Direct, IsoConvention::Transpose, IsoConvention::Inverse, IsoConvention::InverseTranspose];

    pub fn apply(self, g: &Matrix) -> Result<Matrix> {
        Ok(match self {
            IsoConvention::Direct => g.clone(),
            IsoConvention::Transpose => g.transpose(),
            IsoConvention::Inverse => g.inverse()?,
            IsoConvention::InverseTranspose => g.inverse()?.transpose(),
        })
    }
}

/// Conventions under which `g` maps `d1` to `d2`, in the order of
/// [`IsoConvention::ALL`].
pub fn isomorphism_conventions(g: &Matrix, d1: &AdjCochain, d2: &AdjCochain) -> Result<Vec<IsoConvention>> {
    let mut out = Vec::new();
    for c in IsoConvention::ALL {
        if check_isomorphism(&c.apply(g)?, d1, d2)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Whether `beta` is cyclic, and the bracket `[d, beta]`.
pub fn gauge_orbit_check(beta: &AdjCochain, metric: &MetricAlgebra) -> Result<(bool, AdjCochain)> {
    if beta.degree() != 1 {
        return Err(Error::Dimension("gauge generators are 1-cochains".into()));
    }
    Ok((is_cyclic(beta, &metric.form)?, nr_bracket(metric.algebra.cochain(), beta)?))
}

/// Result of the order-2 step of a miniversal deformation.
#[derive(Clone, Debug)]
pub struct VersalOrder2 {
    /// First-order directions, a basis of cyclic 2-cocycles modulo coboundaries.
    pub first_order: Vec<AdjCochain>,
    /// `HC^3` representatives used to express obstructions.
    pub obstruction_basis: Vec<AdjCochain>,
    /// `ξ_ij` for `i <= j`; the quadratic term is `Σ_{i<=j} t_i t_j ξ_ij`.
    pub corrections: BTreeMap<(usize, usize), AdjCochain>,
    /// `a^k_ij`: component of the obstruction on the k-th `HC^3` class.
    pub relation_coefficients: Vec<BTreeMap<(usize, usize), Scalar>>,
}

impl VersalOrder2 {
    /// `r_k = Σ_{i<=j} a^k_ij t_i t_j` with parameters `t1, t2, ...`.
    pub fn leading_relations(&self) -> Vec<Poly> {
        self.relation_coefficients
            .iter()
            .map(|coeffs| {
                let mut p = Poly::zero();
                for ((i, j), a) in coeffs {
                    let m = Monomial::var(&param_name(*i)).mul(&Monomial::var(&param_name(*j)));
                    p.add_term(m, a.clone());
                }
                p
            })
            .collect()
    }

    pub fn relations_vanish(&self) -> bool {
        self.relation_coefficients.iter().all(|c| c.values().all(Scalar::is_zero))
    }

    /// `d + Σ t_i δ_i + Σ t_i t_j ξ_ij`.
    pub fn to_deformation(&self, d: &AdjCochain) -> Result<Deformation> {
        let params: Vec<String> = (0..self.first_order.len()).map(param_name).collect();
        let mut terms = Vec::new();
        for (i, delta) in self.first_order.iter().enumerate() {
            terms.push(TermSpec {
                monomial: BTreeMap::from([(param_name(i), 1)]),
                denominator: None,
                cochain: delta.to_string(),
            });
        }
        for ((i, j), xi) in &self.corrections {
            if xi.is_zero() {
                continue;
            }
            let mut monomial = BTreeMap::new();
            *monomial.entry(param_name(*i)).or_insert(0) += 1;
            *monomial.entry(param_name(*j)).or_insert(0) += 1;
            terms.push(TermSpec { monomial, denominator: None, cochain: xi.to_string() });
        }
        let spec = DeformationSpec { base: d.to_string(), params, terms, relations: Vec::new() };
        Deformation::from_spec(&spec, d.dim(), &Bindings::new())
    }
}

fn param_name(i: usize) -> String {
    format!("t{}", i + 1)
}

/// Second-order step of the miniversal deformation with first-order terms
/// `first_order` (computed as `HC^2` representatives when `None`).
///
/// Each `m_ij [δ_i, δ_j]` (with `m_ij = 2` for `i < j`, 1 on the diagonal)
/// is written as `Σ_k a^k_ij α_k - 2 [d, ξ_ij]` with `α_k` representatives of
/// `HC^3` and `ξ_ij` cyclic, so that the quadratic part of `[d_t, d_t]`
/// reduces to `Σ_k r_k α_k`.
pub fn versal_order2(metric: &MetricAlgebra, first_order: Option<Vec<AdjCochain>>) -> Result<VersalOrder2> {
    let alg = &metric.algebra;
    let b = &metric.form;
    let n = alg.dim();
    let deltas = match first_order {
        Some(v) => v,
        None => cyclic_cohomology(alg, b, 2)?.representatives,
    };
    for delta in &deltas {
        if !coboundary_adj(alg, delta)?.is_zero() {
            return Err(Error::Infeasible(format!("first-order term {delta} is not a cocycle")));
        }
    }
    let alphas = cyclic_cohomology(alg, b, 3)?.representatives;
    let gammas = cyclic_subspace(b, 2)?;
    let d = alg.cochain();
    let mut columns: Vec<Vec<Scalar>> = alphas.iter().map(AdjCochain::to_vector).collect();
    for g in gammas.basis() {
        let gamma = AdjCochain::from_vector(n, 2, g)?;
        columns.push(nr_bracket(d, &gamma)?.to_vector());
    }
    let system = Matrix::from_columns(AdjCochain::space_dim(n, 3), &columns);
    let r = alphas.len();
    let mut corrections = BTreeMap::new();
    let mut relation_coefficients = vec![BTreeMap::new(); r];
    for i in 0..deltas.len() {
        for j in i..deltas.len() {
            let mult = Scalar::from_int(if i == j { 1 } else { 2 });
            let x = nr_bracket(&deltas[i], &deltas[j])?.scale(&mult);
            let sol = solve(&system, &x.to_vector())?
                .ok_or_else(|| Error::Infeasible(format!("obstruction of (t{}, t{}) is not cyclic", i + 1, j + 1)))?;
            for k in 0..r {
                relation_coefficients[k].insert((i, j), sol[k].clone());
            }
            let mut xi = AdjCochain::zero(n, 2);
            for (y, g) in sol[r..].iter().zip(gammas.basis()) {
                if !y.is_zero() {
                    xi = xi.add(&AdjCochain::from_vector(n, 2, g)?.scale(y))?;
                }
            }
            corrections.insert((i, j), xi.scale(&Scalar::new(-1, 2)));
        }
    }
    Ok(VersalOrder2 { first_order: deltas, obstruction_basis: alphas, corrections, relation_coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::parse_adj;
    use crate::poly::bindings;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn adj(s: &str, n: usize) -> AdjCochain {
        parse_adj(s, n, &Bindings::new()).unwrap()
    }

    fn sl2() -> MetricAlgebra {
        let d = adj("psi[{1,2}->3] - 2*psi[{1,3}->1] + 2*psi[{2,3}->2]", 3);
        let b = BilinearForm::new(Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]])).unwrap();
        MetricAlgebra::new(LieAlgebra::new(d).unwrap(), b).unwrap()
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn evaluate_at_origin_is_base() {
        let m = sl2();
        let def = Deformation::linear(m.algebra.cochain(), m.algebra.cochain()).unwrap();
        assert_eq!(def.evaluate(&[Scalar::zero()]).unwrap(), *m.algebra.cochain());
        assert_eq!(def.evaluate(&[q(3, 1)]).unwrap(), m.algebra.cochain().scale(&q(4, 1)));
        assert!(def.check_jacobi_at(&[q(3, 1)]).unwrap());
        assert!(def.check_cyclic_at(&m.form, &[q(3, 1)]).unwrap());
        assert!(def.evaluate(&[]).is_err());
    }

    #[test]
    fn rational_terms_and_vanishing_denominators() {
        let spec = DeformationSpec {
            base: "psi[{1,2}->3]".into(),
            params: vec!["t1".into()],
            terms: vec![TermSpec {
                monomial: BTreeMap::from([("t1".into(), 2)]),
                denominator: Some("1+t1".into()),
                cochain: "psi[{1,3}->2]".into(),
            }],
            relations: vec![],
        };
        let def = Deformation::from_spec(&spec, 3, &Bindings::new()).unwrap();
        assert_eq!(def.evaluate(&[q(1, 1)]).unwrap(), adj("psi[{1,2}->3] + 1/2*psi[{1,3}->2]", 3));
        assert!(matches!(def.evaluate(&[q(-1, 1)]), Err(Error::VanishingDenominator)));
        assert!(def.expand().is_err());
    }

    #[test]
    fn fixed_bindings_in_coefficients() {
        let spec = DeformationSpec {
            base: "lambda*psi[{1,2}->2]".into(),
            params: vec!["t".into()],
            terms: vec![],
            relations: vec![],
        };
        let def = Deformation::from_spec(&spec, 2, &bindings([("lambda", q(5, 1))])).unwrap();
        assert_eq!(def.evaluate(&[q(0, 1)]).unwrap(), adj("5*psi[{1,2}->2]", 2));
        assert_eq!(def.expand().unwrap().len(), 1);
    }

    #[test]
    fn relation_sets_reject_low_order() {
        assert!(RelationSet::new(vec![Poly::parse("t1 + t2*t3").unwrap()]).is_err());
        assert!(RelationSet::new(vec![Poly::parse("1 + t2*t3").unwrap()]).is_err());
        let r = RelationSet::new(vec![Poly::parse("2*t1*t5 - 2*t6*t2").unwrap()]).unwrap();
        let at = bindings([("t1", q(1, 1)), ("t5", q(1, 1)), ("t6", q(0, 1)), ("t2", q(0, 1))]);
        assert_eq!(r.eval(&at).unwrap(), vec![q(2, 1)]);
    }

    #[test]
    fn jacobi_expansion_matches_point_evaluation() {
        // A deliberately non-Jacobi family to exercise nonzero coefficients.
        let spec = DeformationSpec {
            base: "psi[{1,2}->3]".into(),
            params: vec!["s".into(), "t".into()],
            terms: vec![
                TermSpec { monomial: BTreeMap::from([("s".into(), 1)]), denominator: None, cochain: "psi[{1,3}->1]".into() },
                TermSpec {
                    monomial: BTreeMap::from([("t".into(), 1)]),
                    denominator: None,
                    cochain: "s*psi[{2,3}->1]".into(),
                },
            ],
            relations: vec![],
        };
        let def = Deformation::from_spec(&spec, 3, &Bindings::new()).unwrap();
        let exp = def.jacobi_expansion().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let pt = [q(rng.gen_range(-5..=5), rng.gen_range(1..=4)), q(rng.gen_range(-5..=5), 1)];
            let at = bindings([("s", pt[0].clone()), ("t", pt[1].clone())]);
            let mut sum = AdjCochain::zero(3, 3);
            for (m, c) in &exp {
                sum = sum.add(&c.scale(&m.eval(&at).unwrap())).unwrap();
            }
            assert_eq!(sum, def.jacobi_residual(&pt).unwrap());
        }
    }

    #[test]
    fn pushforward_basics() {
        let m = sl2();
        let d = m.algebra.cochain();
        assert_eq!(pushforward(&Matrix::identity(3), d).unwrap(), *d);
        let c = q(3, 2);
        assert_eq!(pushforward(&Matrix::identity(3).scale(&c), d).unwrap(), d.scale(&c));
        let g = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, -1], &[1, 0, 1]]);
        let pd = pushforward(&g, d).unwrap();
        assert!(nr_bracket(&pd, &pd).unwrap().is_zero());
        // g maps pd to d: g pd(x,y) = d(gx, gy).
        assert!(check_isomorphism(&g, &pd, d).unwrap());
        assert!(matches!(pushforward(&Matrix::zeros(3, 3), d), Err(Error::Singular)));
    }

    #[test]
    fn isomorphisms_compose() {
        let d = sl2().algebra.cochain().clone();
        let g1 = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let g2 = Matrix::from_i64(&[&[1, 0, 0], &[2, 1, 0], &[0, 1, 1]]);
        let d1 = pushforward(&g1, &d).unwrap();
        let d0 = pushforward(&g2, &d1).unwrap();
        assert!(check_isomorphism(&g2, &d0, &d1).unwrap());
        assert!(check_isomorphism(&g1, &d1, &d).unwrap());
        assert!(check_isomorphism(&g1.mul(&g2).unwrap(), &d0, &d).unwrap());
        assert_eq!(isomorphism_conventions(&Matrix::identity(3), &d, &d).unwrap().len(), 4);
    }

    #[test]
    fn gauge_term_is_bracket_with_d() {
        // pushforward(I + εN) is polynomial in ε for nilpotent N; its
        // derivative at 0, by Lagrange interpolation, must be [d, N].
        let m = sl2();
        let d = m.algebra.cochain();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let mut nmat = Matrix::zeros(3, 3);
            for i in 0..3 {
                for j in i + 1..3 {
                    nmat[(i, j)] = Scalar::from_int(rng.gen_range(-3..=3));
                }
            }
            // N^3 = 0, so the pushforward has degree at most 4 in ε.
            let pts: Vec<i64> = (0..=4).collect();
            let vals: Vec<AdjCochain> = pts
                .iter()
                .map(|&e| {
                    let g = Matrix::identity(3).add(&nmat.scale(&Scalar::from_int(e))).unwrap();
                    pushforward(&g, d).unwrap()
                })
                .collect();
            let mut deriv = AdjCochain::zero(3, 2);
            for (k, &xk) in pts.iter().enumerate().skip(1) {
                // L_k'(0) for nodes 0..4 with x_0 = 0.
                let mut w = Scalar::one() / Scalar::from_int(xk);
                for (l, &xl) in pts.iter().enumerate() {
                    if l != k && l != 0 {
                        w = w * Scalar::from_int(-xl) / Scalar::from_int(xk - xl);
                    }
                }
                deriv = deriv.add(&vals[k].sub(&vals[0]).unwrap().scale(&w)).unwrap();
            }
            let n1 = AdjCochain::from_endomorphism(&nmat);
            assert_eq!(deriv, nr_bracket(d, &n1).unwrap());
        }
    }

    #[test]
    fn gauge_identity_on_sl2() {
        let m = sl2();
        let (cyc, img) = gauge_orbit_check(&AdjCochain::identity(3), &m).unwrap();
        assert!(!cyc);
        assert_eq!(img, *m.algebra.cochain());
    }

    #[test]
    fn versal_order2_on_sl2() {
        let m = sl2();
        let v = versal_order2(&m, None).unwrap();
        assert_eq!(v.first_order.len(), 1);
        assert!(v.obstruction_basis.is_empty());
        assert!(v.relations_vanish());
        let def = v.to_deformation(m.algebra.cochain()).unwrap();
        let quad: Vec<_> = def.jacobi_expansion().unwrap().into_iter().filter(|(k, _)| k.degree() <= 2).collect();
        assert!(quad.is_empty());
    }
}
