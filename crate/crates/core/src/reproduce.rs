//! The full table and identity suite behind `cyclolie reproduce`.
//!
//! Each check belongs to one numbered criterion and, where it concerns a
//! single algebra or dimension, carries that dimension so runs can be
//! filtered.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogEntry, IsoSpec};
use crate::cochains::reference::bracket_by_permutations;
use crate::cochains::{
    bracket_triv, coboundary_adj, is_cyclic, is_invariant, nr_bracket, raise, tilde, AdjCochain, BilinearForm,
    LieAlgebra, MetricAlgebra,
};
use crate::cohomology::{
    coboundary_matrix_adj, coboundary_matrix_triv, cyclic_subspace, kunneth_check, trivial_cohomology,
    CohomologyReport,
};
use crate::deformations::{gauge_orbit_check, isomorphism_conventions, pushforward, versal_order2, Deformation};
use crate::error::{Error, Result};
use crate::linalg::{signature, Matrix, Scalar};
use crate::poly::{Bindings, Expr, Monomial, Poly};
use crate::random;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Elementary operations per random change of basis.
pub const BASIS_CHANGE_SHEARS: usize = 4;

/// Values of `lambda` at which parameter families are checked.
pub const FAMILY_POINTS: [(i64, i64); 3] = [(2, 1), (3, 1), (-1, 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    /// Reported but not a failure; used for catalog open questions.
    Warn,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub dim: Option<usize>,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}. {}", self.status, self.criterion, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Only checks about algebras of this dimension.
    pub dim: Option<usize>,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { dim: None, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub warn: usize,
    pub fail: usize,
}

pub fn tally(results: &[CheckResult]) -> Tally {
    let mut t = Tally::default();
    for r in results {
        match r.status {
            Status::Pass => t.pass += 1,
            Status::Warn => t.warn += 1,
            Status::Fail => t.fail += 1,
        }
    }
    t
}

/// Runs every criterion. Errors are reserved for an unusable catalog;
/// a computation that fails inside a check is reported as that check failing.
pub fn run(catalog: &Catalog, opts: &Options) -> Result<Vec<CheckResult>> {
    let mut suite = Suite::new(catalog, opts)?;
    suite.tables();
    suite.gap();
    suite.two_routes();
    suite.kunneth();
    suite.structure();
    suite.signatures();
    suite.deformations();
    suite.versal();
    suite.properties();
    Ok(suite.results)
}

struct Suite<'a> {
    catalog: &'a Catalog,
    opts: &'a Options,
    entries: Vec<CatalogEntry>,
    reports: BTreeMap<String, std::result::Result<CohomologyReport, String>>,
    results: Vec<CheckResult>,
}

fn pass_if(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Stable per-label seed, so filtering never shifts another check's stream.
fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

impl<'a> Suite<'a> {
    fn new(catalog: &'a Catalog, opts: &'a Options) -> Result<Self> {
        let mut entries = Vec::new();
        for f in catalog.files() {
            if opts.dim.is_some_and(|d| d != f.dim) {
                continue;
            }
            if f.parameter.is_some() {
                for (p, q) in FAMILY_POINTS {
                    entries.push(catalog.load(&f.id, Some(Scalar::new(p, q)))?);
                }
            } else {
                entries.push(catalog.load(&f.id, None)?);
            }
        }
        let reports = entries
            .iter()
            .map(|e| (e.id(), CohomologyReport::compute(&e.id(), &e.metric, 3).map_err(|err| err.to_string())))
            .collect();
        Ok(Suite { catalog, opts, entries, reports, results: Vec::new() })
    }

    fn wants(&self, dim: usize) -> bool {
        self.opts.dim.is_none_or(|d| d == dim)
    }

    fn record(&mut self, criterion: u8, name: String, dim: Option<usize>, outcome: Result<(Status, String)>) {
        let (status, detail) = outcome.unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
        self.results.push(CheckResult { criterion, name, dim, status, detail });
    }

    fn report(&self, id: &str) -> Result<&CohomologyReport> {
        match &self.reports[id] {
            Ok(r) => Ok(r),
            Err(e) => Err(Error::Infeasible(e.clone())),
        }
    }

    fn tables(&mut self) {
        let mut out = Vec::new();
        for e in &self.entries {
            let Some(exp) = &e.file.expected else { continue };
            let outcome = self.report(&e.id()).map(|r| {
                let got = (r.hc(), r.hrc(), r.h());
                let ok = got == (exp.hc.clone(), exp.hrc.clone(), exp.h.clone());
                let mut detail = format!("HC {} / HRC {} / H {}", join(&got.0), join(&got.1), join(&got.2));
                if !ok {
                    detail += &format!(" (expected HC {} / HRC {} / H {})", join(&exp.hc), join(&exp.hrc), join(&exp.h));
                }
                pass_if(ok, detail)
            });
            out.push((format!("table {}", e.id()), e.dim(), outcome));
        }
        for (name, dim, o) in out {
            self.record(1, name, Some(dim), o);
        }
    }

    fn gap(&mut self) {
        let mut out = Vec::new();
        for e in &self.entries {
            let outcome = self.report(&e.id()).map(|r| {
                let (hc, hrc) = (r.hc(), r.hrc());
                let gap = hrc[2] < hc[2];
                let elsewhere = (0..hc.len()).all(|n| n == 2 || hc[n] == hrc[n]);
                let want = e.file.simple_quotient;
                pass_if(
                    gap == want && elsewhere && hrc[2] <= hc[2],
                    format!("HC2 {} HRC2 {}, simple quotient: {want}", hc[2], hrc[2]),
                )
            });
            out.push((format!("HRC/HC gap {}", e.id()), e.dim(), outcome));
        }
        for (name, dim, o) in out {
            self.record(2, name, Some(dim), o);
        }
    }

    fn two_routes(&mut self) {
        let mut out = Vec::new();
        for e in &self.entries {
            let outcome = self.report(&e.id()).map(|r| {
                let bad = r.two_route_mismatches();
                let triv = r.h_triv();
                pass_if(
                    bad.is_empty(),
                    format!("HC 1..3 = {}, H(V,k) 2..4 = {}", join(&r.hc()[1..]), join(&triv[2..])),
                )
            });
            out.push((format!("two routes {}", e.id()), e.dim(), outcome));
        }
        for (name, dim, o) in out {
            self.record(3, name, Some(dim), o);
        }
    }

    fn kunneth(&mut self) {
        let sl2 = match self.catalog.load("sl2C", None) {
            Ok(e) => e.algebra().clone(),
            Err(e) => {
                self.record(4, "Kunneth".into(), None, Err(e));
                return;
            }
        };
        let mut pairs: Vec<(String, LieAlgebra, LieAlgebra)> = vec![
            ("sl2 + C".into(), sl2.clone(), LieAlgebra::abelian(1)),
            ("sl2 + C^2".into(), sl2.clone(), LieAlgebra::abelian(2)),
        ];
        for (a, b) in [(1, 1), (2, 2), (2, 3)] {
            pairs.push((format!("C^{a} + C^{b}"), LieAlgebra::abelian(a), LieAlgebra::abelian(b)));
        }
        for (name, g, h) in pairs {
            let dim = g.dim() + h.dim();
            if !self.wants(dim) {
                continue;
            }
            let outcome = (0..=4)
                .map(|n| kunneth_check(&g, &h, n))
                .collect::<Result<Vec<bool>>>()
                .map(|v| pass_if(v.iter().all(|&x| x), "h(g+h) = h(g) * h(h) for n = 0..4".into()));
            self.record(4, format!("Kunneth {name}"), Some(dim), outcome);
        }
        if self.wants(4) {
            let sum = sl2.direct_sum(&LieAlgebra::abelian(1));
            let outcome = (0..=3).map(|n| trivial_cohomology(&sum, n)).collect::<Result<Vec<usize>>>().map(|v| {
                pass_if(v == [1, 1, 0, 1], format!("h^0..h^3 = {}", join(&v)))
            });
            self.record(4, "trivial cohomology of sl2 + C".into(), Some(4), outcome);
        }
    }

    fn structure(&mut self) {
        let mut out = Vec::new();
        for e in &self.entries {
            out.push((format!("identities {}", e.id()), e.dim(), structure_identities(e)));
            for g in &e.file.gauge {
                let outcome = (|| {
                    let beta = e.cochain(&g.beta)?;
                    let want = e.cochain(&g.bracket)?;
                    let (cyclic, got) = gauge_orbit_check(&beta, &e.metric)?;
                    Ok(pass_if(
                        got == want && cyclic == g.cyclic,
                        format!("[d, {}] = {got}, beta cyclic: {cyclic}", g.beta),
                    ))
                })();
                out.push((format!("gauge {}", e.id()), e.dim(), outcome));
            }
        }
        for (name, dim, o) in out {
            self.record(5, name, Some(dim), o);
        }
    }

    fn signatures(&mut self) {
        let mut out = Vec::new();
        for e in &self.entries {
            if e.file.forms.iter().all(|f| f.signature.is_none()) {
                continue;
            }
            let outcome = (|| {
                let mut ok = true;
                let mut parts = Vec::new();
                for spec in &e.file.forms {
                    let Some(want) = spec.signature else { continue };
                    let rows = spec
                        .matrix
                        .iter()
                        .map(|r| r.iter().map(|c| c.eval(&e.bindings())).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    let (p, q, z) = signature(&Matrix::from_rows(rows)?)?;
                    ok &= (p, q, z) == (want.0, want.1, 0);
                    parts.push(format!("({p},{q})"));
                }
                Ok(pass_if(ok, parts.join(" ")))
            })();
            out.push((format!("signature {}", e.id()), e.dim(), outcome));
        }
        for (name, dim, o) in out {
            self.record(6, name, Some(dim), o);
        }
    }

    fn deformations(&mut self) {
        let mut out = Vec::new();
        for e in &self.entries {
            let Some(spec) = &e.file.deformation else { continue };
            let def = match e.deformation() {
                Ok(d) => d.expect("entry has a deformation"),
                Err(err) => {
                    out.push((format!("deformation {}", e.id()), e.dim(), Err(err)));
                    continue;
                }
            };
            if spec.truncated {
                out.push((format!("first-order deformation {}", e.id()), e.dim(), first_order_only(&def)));
                continue;
            }
            if def.is_polynomial() && def.relations().is_empty() {
                out.push((format!("exact Jacobi expansion {}", e.id()), e.dim(), exact_expansion(&def)));
            }
            let mut rng = rng_for(self.opts.seed, &format!("deform {}", e.id()));
            if def.relations().is_empty() {
                let points = if e.file.id == "W3" { 25 } else { 10 };
                out.push((
                    format!("Jacobi and cyclicity at {points} points {}", e.id()),
                    e.dim(),
                    random_points(&def, &e.metric.form, points, &[], &mut rng),
                ));
            } else {
                out.push((
                    format!("Jacobi on the relation variety {}", e.id()),
                    e.dim(),
                    random_points(&def, &e.metric.form, 5, &spec.vanishing_on, &mut rng),
                ));
                out.push((format!("Jacobi fails off the relation variety {}", e.id()), e.dim(), off_variety(&def, &mut rng)));
                out.push((
                    format!("leading relations match the obstruction {}", e.id()),
                    e.dim(),
                    leading_relations(&def, &e.metric),
                ));
            }
        }
        for e in &self.entries {
            if e.lambda.as_ref().is_some_and(|l| *l != Scalar::from_int(2)) {
                continue;
            }
            for iso in &e.file.isomorphisms {
                let o = iso_check(self.catalog, e, iso);
                out.push((format!("isomorphism {} -> {}", e.file.id, iso.target), e.dim(), o));
            }
        }
        for (name, dim, o) in out {
            self.record(7, name, Some(dim), o);
        }
    }

    fn versal(&mut self) {
        if !self.wants(5) {
            return;
        }
        let outcome = (|| {
            let w3 = self.catalog.load("W3", None)?;
            let v = versal_order2(&w3.metric, None)?;
            let def = v.to_deformation(w3.algebra().cochain())?;
            let expansion = def.jacobi_expansion()?;
            let low = expansion.iter().filter(|(m, c)| m.degree() <= 2 && !c.is_zero()).count();
            Ok(pass_if(
                v.relations_vanish() && low == 0,
                format!(
                    "{} first-order terms, {} corrections, relations vanish: {}, nonzero terms of degree <= 2: {low}",
                    v.first_order.len(),
                    v.corrections.values().filter(|c| !c.is_zero()).count(),
                    v.relations_vanish()
                ),
            ))
        })();
        self.record(8, "versal order 2 on W3".into(), Some(5), outcome);
    }

    fn properties(&mut self) {
        let seed = self.opts.seed;
        for dim in 3..=6 {
            if !self.wants(dim) {
                continue;
            }
            let mut rng = rng_for(seed, &format!("antisymmetry {dim}"));
            self.record(9, format!("graded antisymmetry, dim {dim}"), Some(dim), antisymmetry(dim, 50, &mut rng));
        }
        for dim in 2..=3 {
            if !self.wants(dim) {
                continue;
            }
            let mut rng = rng_for(seed, &format!("oracle {dim}"));
            self.record(9, format!("naive bracket oracle, dim {dim}"), Some(dim), oracle(dim, 40, &mut rng));
        }
        let mut by_dim: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, e) in self.entries.iter().enumerate() {
            by_dim.entry(e.dim()).or_default().push(i);
        }
        let mut out = Vec::new();
        for (dim, idx) in &by_dim {
            let forms: Vec<&BilinearForm> = idx.iter().map(|&i| &self.entries[i].metric.form).collect();
            let mut rng = rng_for(seed, &format!("cyclic closure {dim}"));
            out.push((format!("cyclic closure, dim {dim}"), *dim, cyclic_closure(&forms, 20, &mut rng)));
            let mut rng = rng_for(seed, &format!("tilde {dim}"));
            out.push((format!("tilde compatibility, dim {dim}"), *dim, tilde_compatibility(&forms, 20, &mut rng)));
        }
        for e in &self.entries {
            let mut rng = rng_for(seed, &format!("basis change {}", e.id()));
            let outcome = self.report(&e.id()).and_then(|r| basis_change(e, r, 5, &mut rng));
            out.push((format!("basis change {}", e.id()), e.dim(), outcome));
        }
        for (name, dim, o) in out {
            self.record(9, name, Some(dim), o);
        }
    }
}

fn structure_identities(e: &CatalogEntry) -> Result<(Status, String)> {
    let alg = e.algebra();
    let d = alg.cochain();
    let n = alg.dim();
    let jacobi = nr_bracket(d, d)?.is_zero();
    let mut invariant = true;
    for b in &e.forms {
        invariant &= is_invariant(alg, b)?;
    }
    let mut square_zero = true;
    for p in 0..n.min(4) {
        square_zero &= coboundary_matrix_adj(alg, p + 1).mul(&coboundary_matrix_adj(alg, p))?.is_zero();
        square_zero &= coboundary_matrix_triv(alg, p + 1).mul(&coboundary_matrix_triv(alg, p))?.is_zero();
    }
    let euler = nr_bracket(d, &AdjCochain::identity(n))? == *d;
    Ok(pass_if(
        jacobi && invariant && square_zero && euler,
        format!("[d,d]=0: {jacobi}, invariant: {invariant}, D^2=0: {square_zero}, [d,I]=d: {euler}"),
    ))
}

fn random_point(rng: &mut impl Rng, params: &[String], vanishing: &[String]) -> Vec<Scalar> {
    params
        .iter()
        .map(|p| if vanishing.contains(p) { Scalar::zero() } else { random::scalar(rng) })
        .collect()
}

fn random_points(
    def: &Deformation,
    b: &BilinearForm,
    count: usize,
    vanishing: &[String],
    rng: &mut impl Rng,
) -> Result<(Status, String)> {
    let mut done = 0;
    let mut bad = Vec::new();
    let mut attempts = 0;
    while done < count {
        attempts += 1;
        if attempts > 20 * count {
            return Err(Error::Infeasible("could not sample points away from vanishing denominators".into()));
        }
        let point = random_point(rng, def.params(), vanishing);
        let jacobi = match def.check_jacobi_at(&point) {
            Ok(j) => j,
            Err(Error::VanishingDenominator) => continue,
            Err(e) => return Err(e),
        };
        let relations = def.relations_at(&point)?.iter().all(Scalar::is_zero);
        if !(jacobi && relations && def.check_cyclic_at(b, &point)?) {
            bad.push(format_point(def.params(), &point));
        }
        done += 1;
    }
    if bad.is_empty() {
        Ok((Status::Pass, format!("{count} points")))
    } else {
        Ok((Status::Fail, format!("fails at {}", bad.join("; "))))
    }
}

fn off_variety(def: &Deformation, rng: &mut impl Rng) -> Result<(Status, String)> {
    for _ in 0..50 {
        let point = random_point(rng, def.params(), &[]);
        let relations = match def.relations_at(&point) {
            Ok(r) => r,
            Err(Error::VanishingDenominator) => continue,
            Err(e) => return Err(e),
        };
        if relations.iter().all(Scalar::is_zero) {
            continue;
        }
        let residual = match def.jacobi_residual(&point) {
            Ok(r) => r,
            Err(Error::VanishingDenominator) => continue,
            Err(e) => return Err(e),
        };
        let values = relations.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ");
        return Ok(pass_if(
            !residual.is_zero(),
            format!("at {}: relations {values}, residual has {} terms", format_point(def.params(), &point), residual.num_terms()),
        ));
    }
    Err(Error::Infeasible("no sampled point left the relation variety".into()))
}

/// The quadratic parts of the stated relations span the same space as the
/// second-order obstruction of the first-order terms.
fn leading_relations(def: &Deformation, metric: &MetricAlgebra) -> Result<(Status, String)> {
    let origin = vec![Scalar::zero(); def.params().len()];
    let base = def.evaluate(&origin)?;
    let mut terms = Vec::new();
    for i in 0..origin.len() {
        let mut p = origin.clone();
        p[i] = Scalar::one();
        terms.push(def.evaluate(&p)?.sub(&base)?);
    }
    let computed = versal_order2(metric, Some(terms))?.leading_relations();
    let stated: Vec<Poly> = def.relations().polys().iter().map(|p| p.homogeneous_part(2)).collect();
    let mut monomials: Vec<Monomial> = computed.iter().chain(&stated).flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monomials.sort();
    monomials.dedup();
    let rows = |ps: &[Poly]| -> Vec<Vec<Scalar>> { ps.iter().map(|p| monomials.iter().map(|m| p.coeff(m)).collect()).collect() };
    let rank = |rs: Vec<Vec<Scalar>>| -> Result<usize> {
        if rs.is_empty() {
            return Ok(0);
        }
        Ok(Matrix::from_rows(rs)?.rank())
    };
    let (a, b) = (rank(rows(&computed))?, rank(rows(&stated))?);
    let both = rank(rows(&computed).into_iter().chain(rows(&stated)).collect())?;
    Ok(pass_if(a == b && b == both, format!("rank {a} computed, {b} stated, {both} combined")))
}

fn format_point(params: &[String], point: &[Scalar]) -> String {
    params.iter().zip(point).map(|(p, v)| format!("{p}={v}")).collect::<Vec<_>>().join(",")
}

fn exact_expansion(def: &Deformation) -> Result<(Status, String)> {
    let expansion = def.jacobi_expansion()?;
    let nonzero: Vec<String> = expansion.iter().filter(|(_, c)| !c.is_zero()).map(|(m, _)| m.to_string()).collect();
    Ok(pass_if(
        nonzero.is_empty(),
        if nonzero.is_empty() {
            format!("all coefficients of [d_t,d_t] vanish up to degree {}", 2 * def.max_degree()?)
        } else {
            format!("nonzero at {}", nonzero.join(", "))
        },
    ))
}

fn first_order_only(def: &Deformation) -> Result<(Status, String)> {
    let expansion = def.jacobi_expansion()?;
    let low: Vec<String> =
        expansion.iter().filter(|(m, c)| m.degree() <= 1 && !c.is_zero()).map(|(m, _)| m.to_string()).collect();
    let high = expansion.iter().filter(|(m, c)| m.degree() > 1 && !c.is_zero()).count();
    Ok(pass_if(
        low.is_empty(),
        format!("truncated: terms up to first order vanish, {high} higher coefficients not claimed"),
    ))
}

/// Tries every stored matrix of `iso` at every stored point and reports the
/// conventions under which it maps the deformed bracket onto the target.
pub fn iso_check(catalog: &Catalog, e: &CatalogEntry, iso: &IsoSpec) -> Result<(Status, String)> {
    let mut parts = Vec::new();
    let mut any = false;
    for m in &iso.matrices {
        let mut common: Option<Vec<_>> = None;
        for point in &iso.points {
            let at: Bindings = point.iter().map(|(k, c)| Ok((k.clone(), c.eval(&Bindings::new())?))).collect::<Result<_>>()?;
            let lambda = e.file.parameter.as_ref().and_then(|p| at.get(p).cloned());
            let source = catalog.load(&e.file.id, lambda)?;
            let def = match &iso.source {
                Some(src) => source.deformation_with_terms(src)?,
                None => source.deformation()?.ok_or_else(|| Error::Catalog {
                    id: e.file.id.clone(),
                    msg: "isomorphism listed without a deformation".into(),
                })?,
            };
            let values = def
                .params()
                .iter()
                .map(|p| at.get(p).cloned().ok_or_else(|| Error::Parse(format!("point does not bind {p}"))))
                .collect::<Result<Vec<_>>>()?;
            let d1 = def.evaluate(&values)?;
            let target_lambda = iso.target_parameter.as_deref().map(|t| Expr::parse(t)?.eval(&at)).transpose()?;
            let target = catalog.load(&iso.target, target_lambda)?;
            let mut all = source.bindings();
            all.extend(at.clone());
            let rows = m
                .rows
                .iter()
                .map(|r| r.iter().map(|c| c.eval(&all)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let g = Matrix::from_rows(rows)?;
            let found = match isomorphism_conventions(&g, &d1, target.algebra().cochain()) {
                Ok(c) => c,
                Err(Error::Singular) => Vec::new(),
                Err(err) => return Err(err),
            };
            common = Some(match common {
                None => found,
                Some(prev) => prev.into_iter().filter(|c| found.contains(c)).collect(),
            });
        }
        let conventions = common.unwrap_or_default();
        if conventions.is_empty() {
            parts.push(format!("'{}' fails", m.label));
        } else {
            any = true;
            let names: Vec<String> = conventions.iter().map(|c| format!("{c:?}")).collect();
            parts.push(format!("'{}' validates ({}) at {} points", m.label, names.join("/"), iso.points.len()));
        }
    }
    let status = match (any, iso.open_question) {
        (_, true) => Status::Warn,
        (true, false) => Status::Pass,
        (false, false) => Status::Fail,
    };
    Ok((status, parts.join("; ")))
}

fn graded_sign(k: usize, l: usize) -> Scalar {
    Scalar::from_int(if ((k + 1) * (l + 1)) % 2 == 0 { 1 } else { -1 })
}

fn antisymmetry(dim: usize, pairs: usize, rng: &mut impl Rng) -> Result<(Status, String)> {
    let mut bad = 0;
    for _ in 0..pairs {
        let k = rng.gen_range(1..=3);
        let l = rng.gen_range(1..=3);
        let a = random::adj(rng, dim, k, 0.3);
        let b = random::adj(rng, dim, l, 0.3);
        if nr_bracket(&a, &b)? != nr_bracket(&b, &a)?.scale(&-graded_sign(k, l)) {
            bad += 1;
        }
    }
    Ok(pass_if(bad == 0, format!("{pairs} pairs, {bad} violations")))
}

fn oracle(dim: usize, pairs: usize, rng: &mut impl Rng) -> Result<(Status, String)> {
    let mut bad = 0;
    for _ in 0..pairs {
        let k = rng.gen_range(0..=3);
        let l = rng.gen_range(if k == 0 { 1 } else { 0 }..=3);
        let a = random::adj(rng, dim, k, 0.5);
        let b = random::adj(rng, dim, l, 0.5);
        if nr_bracket(&a, &b)? != bracket_by_permutations(&a, &b)? {
            bad += 1;
        }
    }
    Ok(pass_if(bad == 0, format!("{pairs} pairs against the permutation-sum evaluator, {bad} differ")))
}

fn random_cyclic(rng: &mut impl Rng, b: &BilinearForm, degree: usize) -> Result<AdjCochain> {
    let n = b.dim();
    let space = cyclic_subspace(b, degree)?;
    let mut v = vec![Scalar::zero(); AdjCochain::space_dim(n, degree)];
    for basis in space.basis() {
        let c = Scalar::from_int(rng.gen_range(-2..=2));
        for (x, y) in v.iter_mut().zip(basis) {
            *x += &(&c * y);
        }
    }
    AdjCochain::from_vector(n, degree, &v)
}

fn cyclic_closure(forms: &[&BilinearForm], pairs: usize, rng: &mut impl Rng) -> Result<(Status, String)> {
    let mut bad = 0;
    for i in 0..pairs {
        let b = forms[i % forms.len()];
        let k = rng.gen_range(1..=3);
        let l = rng.gen_range(1..=3);
        let phi = random_cyclic(rng, b, k)?;
        let psi = random_cyclic(rng, b, l)?;
        if !is_cyclic(&nr_bracket(&phi, &psi)?, b)? {
            bad += 1;
        }
    }
    Ok(pass_if(bad == 0, format!("{pairs} cyclic pairs over {} forms, {bad} brackets not cyclic", forms.len())))
}

fn tilde_compatibility(forms: &[&BilinearForm], pairs: usize, rng: &mut impl Rng) -> Result<(Status, String)> {
    let mut bad = 0;
    for i in 0..pairs {
        let b = forms[i % forms.len()];
        let n = b.dim();
        let q1 = rng.gen_range(2..=3);
        let q2 = rng.gen_range(2..=3);
        let w1 = random::triv(rng, n, q1);
        let w2 = random::triv(rng, n, q2);
        let lowered = tilde(&nr_bracket(&raise(&w1, b)?, &raise(&w2, b)?)?, b)?.to_triv();
        if lowered.as_ref() != Some(&bracket_triv(&w1, &w2, b)?) {
            bad += 1;
        }
    }
    Ok(pass_if(bad == 0, format!("{pairs} pairs, {bad} differ")))
}

fn basis_change(e: &CatalogEntry, report: &CohomologyReport, count: usize, rng: &mut impl Rng) -> Result<(Status, String)> {
    let n = e.dim();
    let mut bad = 0;
    for _ in 0..count {
        let g = random::invertible(rng, n, BASIS_CHANGE_SHEARS);
        let d = pushforward(&g, e.algebra().cochain())?;
        let form = BilinearForm::new(g.transpose().mul(e.metric.form.matrix())?.mul(&g)?)?;
        let moved = MetricAlgebra::new(LieAlgebra::new(d.clone())?, form)?;
        let other = CohomologyReport::compute(&e.id(), &moved, 3)?;
        if (other.hc(), other.hrc(), other.h()) != (report.hc(), report.hrc(), report.h())
            || !coboundary_adj(&moved.algebra, &d)?.is_zero()
        {
            bad += 1;
        }
    }
    Ok(pass_if(bad == 0, format!("{count} conjugations, {bad} changed a dimension")))
}
