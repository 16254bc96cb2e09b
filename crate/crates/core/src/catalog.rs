//! The embedded catalog of metric Lie algebras of dimension at most 6.
//!
//! Each entry is a JSON file `catalog/<dim>/<id>.json`. The files are compiled
//! in; setting `CYCLOLIE_CATALOG` to a directory with the same layout replaces
//! them at run time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cochains::{
    coboundary_adj, is_cyclic, is_invariant, parse_adj, parse_terms, AdjCochain, BilinearForm, LieAlgebra,
    MetricAlgebra,
};
use crate::deformations::{Deformation, DeformationSpec};
use crate::error::{Error, Result};
use crate::linalg::{signature, Matrix, Scalar};
use crate::poly::{Bindings, Expr};

pub const ENV_VAR: &str = "CYCLOLIE_CATALOG";

static EMBEDDED: &[(&str, &str)] = &[
    ("3/sl2C", include_str!("../catalog/3/sl2C.json")),
    ("3/sl2R", include_str!("../catalog/3/sl2R.json")),
    ("3/so3R", include_str!("../catalog/3/so3R.json")),
    ("4/sl2C_plus_C", include_str!("../catalog/4/sl2C_plus_C.json")),
    ("4/sl2R_plus_R", include_str!("../catalog/4/sl2R_plus_R.json")),
    ("4/so3R_plus_R", include_str!("../catalog/4/so3R_plus_R.json")),
    ("4/diamond4C", include_str!("../catalog/4/diamond4C.json")),
    ("4/diamond4R", include_str!("../catalog/4/diamond4R.json")),
    ("4/oscillator4R", include_str!("../catalog/4/oscillator4R.json")),
    ("5/sl2C_plus_C2", include_str!("../catalog/5/sl2C_plus_C2.json")),
    ("5/diamond_plus_C", include_str!("../catalog/5/diamond_plus_C.json")),
    ("5/oscillator_plus_R", include_str!("../catalog/5/oscillator_plus_R.json")),
    ("5/W3", include_str!("../catalog/5/W3.json")),
    ("6/sl2sl2", include_str!("../catalog/6/sl2sl2.json")),
    ("6/Tstar_sl2", include_str!("../catalog/6/Tstar_sl2.json")),
    ("6/sl2C3", include_str!("../catalog/6/sl2C3.json")),
    ("6/g62", include_str!("../catalog/6/g62.json")),
    ("6/g62_0", include_str!("../catalog/6/g62_0.json")),
    ("6/g63", include_str!("../catalog/6/g63.json")),
    ("6/g62_1", include_str!("../catalog/6/g62_1.json")),
    ("6/W3plusC", include_str!("../catalog/6/W3plusC.json")),
    ("6/W4", include_str!("../catalog/6/W4.json")),
];

/// A number or an expression in the entry's parameter names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Text(String),
}

impl Coef {
    pub fn eval(&self, at: &Bindings) -> Result<Scalar> {
        match self {
            Coef::Int(n) => Ok(Scalar::from_int(*n)),
            Coef::Text(s) => Expr::parse(s)?.eval(at),
        }
    }

    fn render(&self) -> String {
        match self {
            Coef::Int(n) => n.to_string(),
            Coef::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Complex,
    Real,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Complex => "complex",
            Field::Real => "real",
        })
    }
}

/// `[e_i, e_j] = c e_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Coef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormSpec {
    pub matrix: Vec<Vec<Coef>>,
    /// Expected `(positive, negative)` for real forms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
    /// The matrix is known to be printed with a possible typo; failures are
    /// warnings.
    #[serde(default)]
    pub verbatim: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTable {
    pub hc: Vec<usize>,
    pub hrc: Vec<usize>,
    pub h: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainSpec {
    pub name: String,
    pub cochain: String,
    /// Alternative readings when the printed cochain is garbled.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub readings: Vec<String>,
    #[serde(default)]
    pub uncertain: bool,
}

/// `[d, beta] = bracket`, where `bracket` may be the literal `d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeSpec {
    pub beta: String,
    pub bracket: String,
    pub cyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub label: String,
    pub rows: Vec<Vec<Coef>>,
}

/// An isomorphism from the entry's deformation at given parameter values to
/// another catalog algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoSpec {
    pub target: String,
    /// Expression for the target's family parameter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_parameter: Option<String>,
    pub matrices: Vec<MatrixSpec>,
    /// Bindings for deformation parameters and auxiliary names in the matrix.
    pub points: Vec<BTreeMap<String, Coef>>,
    /// Overrides for the deformation's terms, e.g. a corrected sign reading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default)]
    pub open_question: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

/// Position in the jump-deformation ordering of dimension 6.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingSpec {
    #[serde(rename = "type")]
    pub type_label: String,
    #[serde(default)]
    pub jumps: Vec<String>,
    #[serde(default)]
    pub smooth: Vec<String>,
}

/// Deformation plus how far it may be trusted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationEntry {
    #[serde(flatten)]
    pub spec: DeformationSpec,
    /// Higher-order terms are omitted, so only first-order claims hold.
    #[serde(default)]
    pub truncated: bool,
    /// Parameters held at zero to sample points where the relations hold.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vanishing_on: Vec<String>,
}

/// One catalog file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryFile {
    pub id: String,
    pub name: String,
    pub dim: usize,
    pub field: Field,
    /// Sort key within a dimension.
    #[serde(default)]
    pub order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    /// Parameter values handled by other entries.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub special: BTreeMap<String, String>,
    pub brackets: Vec<BracketSpec>,
    pub forms: Vec<FormSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedTable>,
    #[serde(default)]
    pub simple_quotient: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hc2_basis: Vec<CochainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gauge: Vec<GaugeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub isomorphisms: Vec<IsoSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<OrderingSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl EntryFile {
    pub fn parse(json: &str) -> Result<Self> {
        let f: EntryFile = serde_json::from_str(json)?;
        if f.forms.is_empty() {
            return Err(Error::Catalog { id: f.id, msg: "no invariant form".into() });
        }
        Ok(f)
    }

    /// The bracket as text, with coefficients left symbolic.
    pub fn bracket_text(&self) -> String {
        if self.brackets.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.brackets.iter().map(|b| format!("({})*psi[{{{},{}}}->{}]", b.c.render(), b.i, b.j, b.k)).collect();
        parts.join(" + ")
    }

    fn bindings(&self, lambda: Option<&Scalar>) -> Bindings {
        let mut at = Bindings::new();
        if let (Some(name), Some(v)) = (&self.parameter, lambda) {
            at.insert(name.clone(), v.clone());
        }
        at
    }
}

fn matrix_at(rows: &[Vec<Coef>], at: &Bindings) -> Result<Matrix> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|c| c.eval(at)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?)
}

/// A loaded and validated entry, specialized at its parameter if any.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub file: EntryFile,
    pub lambda: Option<Scalar>,
    /// The algebra with the first usable form.
    pub metric: MetricAlgebra,
    pub forms: Vec<BilinearForm>,
    pub warnings: Vec<String>,
}

impl CatalogEntry {
    pub fn id(&self) -> String {
        match &self.lambda {
            Some(l) => format!("{}({l})", self.file.id),
            None => self.file.id.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.file.dim
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.metric.algebra
    }

    pub fn bindings(&self) -> Bindings {
        self.file.bindings(self.lambda.as_ref())
    }

    /// Parses a cochain written in this entry's parameter names.
    pub fn cochain(&self, text: &str) -> Result<AdjCochain> {
        if text.trim() == "d" {
            return Ok(self.algebra().cochain().clone());
        }
        parse_adj(text, self.dim(), &self.bindings())
    }

    pub fn deformation(&self) -> Result<Option<Deformation>> {
        self.file.deformation.as_ref().map(|d| self.build_deformation(&d.spec)).transpose()
    }

    fn build_deformation(&self, spec: &DeformationSpec) -> Result<Deformation> {
        let mut spec = spec.clone();
        if spec.base.trim().is_empty() || spec.base.trim() == "d" {
            spec.base = self.file.bracket_text();
        }
        Deformation::from_spec(&spec, self.dim(), &self.bindings())
    }

    /// The deformation with its terms replaced by `source`, for isomorphism
    /// checks that rely on a corrected reading.
    pub fn deformation_with_terms(&self, source: &str) -> Result<Deformation> {
        let spec: DeformationSpec = serde_json::from_str(source)?;
        self.build_deformation(&spec)
    }

    /// HC² cochains with their accepted reading. Uncertain cochains with no
    /// valid reading are omitted.
    pub fn hc2_cochains(&self) -> Result<Vec<(String, AdjCochain)>> {
        let mut out = Vec::new();
        for spec in &self.file.hc2_basis {
            if let Some(c) = self.valid_reading(spec)? {
                out.push((spec.name.clone(), c));
            }
        }
        Ok(out)
    }

    fn valid_reading(&self, spec: &CochainSpec) -> Result<Option<AdjCochain>> {
        for text in std::iter::once(&spec.cochain).chain(&spec.readings) {
            let Ok(c) = self.cochain(text) else { continue };
            if c.degree() == 2 && is_cocycle_and_cyclic(&self.metric, &c)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    pub fn is_solvable(&self) -> bool {
        is_solvable(self.algebra())
    }
}

fn is_cocycle_and_cyclic(metric: &MetricAlgebra, c: &AdjCochain) -> Result<bool> {
    Ok(is_cyclic(c, &metric.form)? && coboundary_adj(&metric.algebra, c)?.is_zero())
}

/// Derived series reaches zero.
pub fn is_solvable(alg: &LieAlgebra) -> bool {
    let n = alg.dim();
    let mut basis: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        })
        .collect();
    loop {
        let mut next = Vec::new();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                next.push(alg.bracket(x, y));
            }
        }
        let span = crate::linalg::Subspace::span(n, next);
        if span.dim() == 0 {
            return true;
        }
        if span.dim() == basis.len() {
            return false;
        }
        basis = span.basis().to_vec();
    }
}

/// Validates a file at a parameter value.
pub fn instantiate(file: &EntryFile, lambda: Option<Scalar>) -> Result<CatalogEntry> {
    let err = |msg: String| Error::Catalog { id: file.id.clone(), msg };
    match (&file.parameter, &lambda) {
        (Some(p), None) => return Err(err(format!("family entry needs a value for {p}"))),
        (None, Some(_)) => return Err(err("entry has no parameter".into())),
        _ => {}
    }
    let at = file.bindings(lambda.as_ref());
    let mut d = AdjCochain::zero(file.dim, 2);
    for b in &file.brackets {
        d.add_unsorted(&[b.i, b.j], b.k, b.c.eval(&at)?)?;
    }
    let algebra = LieAlgebra::new(d).map_err(|e| err(e.to_string()))?;
    let mut warnings = Vec::new();
    let mut forms = Vec::new();
    let mut metric = None;
    for (n, spec) in file.forms.iter().enumerate() {
        let m = matrix_at(&spec.matrix, &at)?;
        if m.rows() != file.dim || m.cols() != file.dim {
            return Err(err(format!("form {n} has the wrong size")));
        }
        let problem = match BilinearForm::new(m) {
            Err(e) => Some((e.to_string(), None)),
            Ok(b) if !b.is_nondegenerate() => Some(("form is degenerate".into(), Some(b))),
            Ok(b) if !is_invariant(&algebra, &b)? => Some(("form is not invariant".into(), Some(b))),
            Ok(b) => {
                if let Some((p, q)) = spec.signature {
                    let (pos, neg, _) = signature(b.matrix())?;
                    if (pos, neg) != (p, q) {
                        return Err(err(format!("form {n} has signature ({pos},{neg}), expected ({p},{q})")));
                    }
                }
                if metric.is_none() {
                    metric = Some(MetricAlgebra::new(algebra.clone(), b.clone())?);
                }
                forms.push(b);
                None
            }
        };
        if let Some((msg, _)) = problem {
            if spec.verbatim {
                warnings.push(format!("form {n}: {msg}"));
            } else {
                return Err(err(format!("form {n}: {msg}")));
            }
        }
    }
    let metric = metric.ok_or_else(|| err("no usable invariant form".into()))?;
    let entry = CatalogEntry { file: file.clone(), lambda, metric, forms, warnings };
    let mut warnings = Vec::new();
    for spec in &file.hc2_basis {
        match entry.valid_reading(spec)? {
            Some(_) => {}
            None if spec.uncertain => warnings.push(format!("{}: no reading is a cyclic cocycle", spec.name)),
            None => return Err(err(format!("{} is not a cyclic cocycle", spec.name))),
        }
        for text in std::iter::once(&spec.cochain).chain(&spec.readings) {
            if parse_terms(text).is_err() && !spec.uncertain {
                return Err(err(format!("{} does not parse", spec.name)));
            }
        }
    }
    if let Some(def) = &file.deformation {
        entry.build_deformation(&def.spec).map_err(|e| err(format!("deformation: {e}")))?;
    }
    let mut entry = entry;
    entry.warnings.extend(warnings);
    Ok(entry)
}

/// One line of a [`validate`] report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub ok: bool,
    /// Failures of optional checks (verbatim forms, uncertain cochains) are
    /// reported but do not fail the entry.
    pub required: bool,
    pub detail: String,
}

/// Checks every stated property of a file without stopping at the first
/// failure: Jacobi, and for each form symmetry, nondegeneracy, invariance and
/// signature, then cyclicity and closedness of the listed HC² cochains.
pub fn validate(file: &EntryFile, lambda: Option<Scalar>) -> Result<Vec<ValidationCheck>> {
    match (&file.parameter, &lambda) {
        (Some(p), None) => return Err(Error::Catalog { id: file.id.clone(), msg: format!("family entry needs a value for {p}") }),
        (None, Some(_)) => return Err(Error::Catalog { id: file.id.clone(), msg: "entry has no parameter".into() }),
        _ => {}
    }
    let at = file.bindings(lambda.as_ref());
    let mut d = AdjCochain::zero(file.dim, 2);
    for b in &file.brackets {
        d.add_unsorted(&[b.i, b.j], b.k, b.c.eval(&at)?)?;
    }
    let mut out = Vec::new();
    let mut push = |name: String, ok: bool, required: bool, detail: String| {
        out.push(ValidationCheck { name, ok, required, detail });
    };
    let algebra = match LieAlgebra::new(d) {
        Ok(a) => {
            push("jacobi".into(), true, true, "[d,d] = 0".into());
            a
        }
        Err(e) => {
            push("jacobi".into(), false, true, e.to_string());
            return Ok(out);
        }
    };
    let mut metric = None;
    for (n, spec) in file.forms.iter().enumerate() {
        let required = !spec.verbatim;
        let m = matrix_at(&spec.matrix, &at)?;
        if m.rows() != file.dim || m.cols() != file.dim {
            push(format!("form {n} size"), false, true, format!("{}x{} for dimension {}", m.rows(), m.cols(), file.dim));
            continue;
        }
        let b = match BilinearForm::new(m) {
            Ok(b) => b,
            Err(e) => {
                push(format!("form {n} symmetric"), false, required, e.to_string());
                continue;
            }
        };
        let nondeg = b.is_nondegenerate();
        push(format!("form {n} nondegenerate"), nondeg, required, String::new());
        let inv = is_invariant(&algebra, &b)?;
        push(format!("form {n} invariant"), inv, required, String::new());
        let (pos, neg, zero) = signature(b.matrix())?;
        let (ok, detail) = match spec.signature {
            Some((p, q)) => ((pos, neg) == (p, q), format!("({pos},{neg}), stated ({p},{q})")),
            None => (true, format!("({pos},{neg})")),
        };
        let detail = if zero > 0 { format!("{detail}, {zero} null") } else { detail };
        push(format!("form {n} signature"), ok, true, detail);
        if nondeg && inv && metric.is_none() {
            metric = Some(MetricAlgebra::new(algebra.clone(), b)?);
        }
    }
    let Some(metric) = metric else {
        push("metric".into(), false, true, "no usable invariant form".into());
        return Ok(out);
    };
    let entry = CatalogEntry { file: file.clone(), lambda, metric, forms: Vec::new(), warnings: Vec::new() };
    for spec in &file.hc2_basis {
        let ok = entry.valid_reading(spec)?.is_some();
        push(format!("{} cyclic cocycle", spec.name), ok, !spec.uncertain, String::new());
    }
    Ok(out)
}

/// Filter for [`Catalog::enumerate`]; `None` matches anything.
#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub dim: Option<usize>,
    pub field: Option<Field>,
    pub solvable: Option<bool>,
    pub simple_quotient: Option<bool>,
}

/// Jump-deformation graph over the dimension-6 type labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpGraph {
    /// Type label to catalog id.
    pub nodes: BTreeMap<String, String>,
    pub jumps: BTreeSet<(String, String)>,
    pub smooth: BTreeSet<(String, String)>,
}

impl JumpGraph {
    pub fn out_edges(&self, label: &str) -> Vec<String> {
        self.jumps.iter().filter(|(a, _)| a == label).map(|(_, b)| b.clone()).collect()
    }

    /// Kahn's algorithm on jump edges.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg: BTreeMap<&str, usize> = self.nodes.keys().map(|k| (k.as_str(), 0)).collect();
        for (_, b) in &self.jumps {
            *indeg.entry(b).or_insert(0) += 1;
        }
        let mut ready: Vec<&str> = indeg.iter().filter(|(_, &v)| v == 0).map(|(k, _)| *k).collect();
        let mut seen = 0;
        while let Some(n) = ready.pop() {
            seen += 1;
            for (a, b) in &self.jumps {
                if a == n {
                    let e = indeg.get_mut(b.as_str()).unwrap();
                    *e -= 1;
                    if *e == 0 {
                        ready.push(b);
                    }
                }
            }
        }
        seen == indeg.len()
    }
}

/// A set of catalog files.
#[derive(Clone, Debug)]
pub struct Catalog {
    files: Vec<EntryFile>,
}

impl Catalog {
    /// The compiled-in catalog.
    pub fn embedded() -> Result<Self> {
        let files = EMBEDDED.iter().map(|(_, json)| EntryFile::parse(json)).collect::<Result<Vec<_>>>()?;
        Ok(Self::sorted(files))
    }

    /// Reads `<dir>/<dim>/<id>.json` files.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut files = Vec::new();
        for sub in std::fs::read_dir(dir)? {
            let sub = sub?.path();
            if !sub.is_dir() {
                continue;
            }
            for f in std::fs::read_dir(&sub)? {
                let f = f?.path();
                if f.extension().is_some_and(|e| e == "json") {
                    files.push(EntryFile::parse(&std::fs::read_to_string(&f)?)?);
                }
            }
        }
        Ok(Self::sorted(files))
    }

    /// `CYCLOLIE_CATALOG` if set, else the embedded catalog.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(ENV_VAR) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Self::embedded(),
        }
    }

    fn sorted(mut files: Vec<EntryFile>) -> Self {
        files.sort_by(|a, b| (a.dim, a.order, &a.id).cmp(&(b.dim, b.order, &b.id)));
        Catalog { files }
    }

    pub fn files(&self) -> &[EntryFile] {
        &self.files
    }

    pub fn ids(&self) -> Vec<&str> {
        self.files.iter().map(|f| f.id.as_str()).collect()
    }

    pub fn file(&self, id: &str) -> Result<&EntryFile> {
        self.files.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownEntry(id.into()))
    }

    /// Loads `id` at `lambda`; special parameter values redirect to their
    /// own entries.
    pub fn load(&self, id: &str, lambda: Option<Scalar>) -> Result<CatalogEntry> {
        let file = self.file(id)?;
        if let Some(l) = &lambda {
            if let Some(other) = file.special.get(&l.to_string()) {
                return instantiate(self.file(other)?, None);
            }
        }
        instantiate(file, lambda)
    }

    /// Accepts `id` or `id(value)`, e.g. `g62(1/2)`.
    pub fn load_str(&self, spec: &str) -> Result<CatalogEntry> {
        let spec = spec.trim();
        match spec.split_once('(') {
            Some((id, rest)) => {
                let value = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parameter in {spec:?}")))?;
                self.load(id, Some(value.trim().parse()?))
            }
            None => self.load(spec, None),
        }
    }

    /// Ids matching the filter, in catalog order. Family entries are
    /// classified at a generic parameter value.
    pub fn enumerate(&self, filter: &Filter) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for f in &self.files {
            if filter.dim.is_some_and(|d| d != f.dim)
                || filter.field.is_some_and(|x| x != f.field)
                || filter.simple_quotient.is_some_and(|s| s != f.simple_quotient)
            {
                continue;
            }
            if let Some(want) = filter.solvable {
                let lambda = f.parameter.as_ref().map(|_| Scalar::from_int(2));
                if instantiate(f, lambda)?.is_solvable() != want {
                    continue;
                }
            }
            out.push(f.id.clone());
        }
        Ok(out)
    }

    pub fn jump_graph(&self) -> JumpGraph {
        let mut graph = JumpGraph { nodes: BTreeMap::new(), jumps: BTreeSet::new(), smooth: BTreeSet::new() };
        for f in &self.files {
            let Some(o) = &f.ordering else { continue };
            graph.nodes.insert(o.type_label.clone(), f.id.clone());
            for j in &o.jumps {
                graph.jumps.insert((o.type_label.clone(), j.clone()));
            }
            for s in &o.smooth {
                graph.smooth.insert((o.type_label.clone(), s.clone()));
            }
        }
        graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Catalog {
        Catalog::embedded().unwrap()
    }

    #[test]
    fn every_entry_validates() {
        let c = catalog();
        for f in c.files() {
            let lambda = f.parameter.as_ref().map(|_| Scalar::from_int(3));
            let e = instantiate(f, lambda).unwrap_or_else(|e| panic!("{}: {e}", f.id));
            assert!(e.algebra().is_jacobi());
        }
    }

    #[test]
    fn load_examples() {
        let c = catalog();
        let sl2 = c.load("sl2C", None).unwrap();
        assert_eq!(sl2.dim(), 3);
        assert_eq!(sl2.algebra().cochain(), &parse_adj("psi[{1,2}->3] - 2*psi[{1,3}->1] + 2*psi[{2,3}->2]", 3, &Bindings::new()).unwrap());
        assert_eq!(sl2.metric.form.matrix(), &Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]));

        let w4 = c.load("W4", None).unwrap();
        let d = parse_adj("psi[{1,5}->4] - psi[{1,3}->2] - psi[{3,5}->6]", 6, &Bindings::new()).unwrap();
        assert_eq!(w4.algebra().cochain(), &d);

        let g = c.load_str("g62(5)").unwrap();
        assert_eq!(g.id(), "g62(5)");
        assert_eq!(g.algebra().cochain().coeff(&crate::exterior::MultiIndex::new(vec![1, 3]).unwrap(), 3), Scalar::from_int(5));
        let g2 = c.load_str("g62(-1/2)").unwrap();
        assert_eq!(g.metric.form, g2.metric.form);
    }

    #[test]
    fn special_values_redirect() {
        let c = catalog();
        assert_eq!(c.load("g62", Some(Scalar::zero())).unwrap().id(), "g62_0");
        assert_eq!(c.load("g62", Some(Scalar::one())).unwrap().id(), "g62_1");
        assert!(matches!(c.load("g62", None), Err(Error::Catalog { .. })));
        assert!(matches!(c.load("nope", None), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn enumerate_by_dimension() {
        let c = catalog();
        let dim3 = c.enumerate(&Filter { dim: Some(3), ..Default::default() }).unwrap();
        assert_eq!(dim3, ["sl2C", "sl2R", "so3R"]);
        let dim5 = c.enumerate(&Filter { dim: Some(5), ..Default::default() }).unwrap();
        assert!(dim5.contains(&"W3".to_string()));
        let six = c.enumerate(&Filter { dim: Some(6), field: Some(Field::Complex), ..Default::default() }).unwrap();
        assert_eq!(six, ["sl2sl2", "Tstar_sl2", "sl2C3", "g62", "g62_0", "g63", "g62_1", "W3plusC", "W4"]);
        let solvable = c.enumerate(&Filter { dim: Some(6), solvable: Some(true), ..Default::default() }).unwrap();
        assert_eq!(solvable, ["g62", "g62_0", "g63", "g62_1", "W3plusC", "W4"]);
    }

    #[test]
    fn jump_graph_matches_table() {
        let g = catalog().jump_graph();
        assert_eq!(g.out_edges("7"), ["1", "2", "3", "4", "5", "6"]);
        assert_eq!(g.out_edges("3"), ["1"]);
        assert_eq!(g.out_edges("6"), ["1", "2", "3", "4(0)", "4(1)"]);
        assert_eq!(g.out_edges("5"), ["1", "2", "3", "4(1)"]);
        assert!(g.is_acyclic());
    }

    #[test]
    fn real_form_signatures() {
        let c = catalog();
        for (id, sig) in [("sl2R", (2, 1)), ("so3R", (3, 0)), ("diamond4R", (2, 2)), ("oscillator4R", (3, 1))] {
            let e = c.load(id, None).unwrap();
            let (p, q, z) = signature(e.metric.form.matrix()).unwrap();
            assert_eq!(((p, q), z), (sig, 0), "{id}");
        }
    }

    #[test]
    fn entry_files_round_trip() {
        for f in catalog().files() {
            let json = serde_json::to_string(f).unwrap();
            assert_eq!(&EntryFile::parse(&json).unwrap(), f);
        }
    }
}
