use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cyclolie::catalog::{self, instantiate, Catalog, CatalogEntry, EntryFile, Field, Filter};
use cyclolie::cohomology::CohomologyReport;
use cyclolie::deformations::Deformation;
use cyclolie::error::Error;
use cyclolie::linalg::Scalar;
use cyclolie::random;
use cyclolie::reproduce::{self, iso_check, tally, Options, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Cohomology and metric deformations of small Lie algebras, in exact arithmetic.
#[derive(Parser)]
#[command(name = "cyclolie", version)]
struct Cli {
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Jacobi, invariance, nondegeneracy and signature of an algebra.
    Validate {
        /// Catalog id, `id(value)` for families, or a JSON file.
        input: String,
        /// Parameter value for a family read from a file.
        #[arg(long)]
        at: Option<String>,
    },
    /// Print HC, HRC and H for each degree.
    Cohomology {
        input: String,
        #[arg(long)]
        at: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Compare with the expected table stored with the entry.
        #[arg(long)]
        expected: bool,
    },
    /// Check the deformation stored with a catalog entry.
    Deform {
        input: String,
        check: DeformCheck,
        #[arg(long)]
        at: Option<String>,
        /// Number of random points.
        #[arg(long)]
        points: Option<usize>,
        /// Explicit point such as `t1=1,t2=-1/2`; unnamed parameters are 0.
        #[arg(long = "point")]
        explicit: Vec<String>,
        #[arg(long, default_value_t = reproduce::DEFAULT_SEED)]
        seed: u64,
    },
    /// Inspect the catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Run every reproduction check.
    Reproduce {
        /// Only checks about algebras of this dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = reproduce::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DeformCheck {
    Jacobi,
    Cyclic,
    Relations,
    Iso,
}

#[derive(Subcommand)]
enum CatalogCommand {
    List {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        field: Option<FieldArg>,
    },
    /// Jump and smooth deformations between the dimension-6 types.
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Complex,
    Real,
}

/// Input problems exit with 2, failed checks with 1.
enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let catalog = Catalog::from_env().context("loading the catalog")?;
    match &cli.command {
        Command::Validate { input, at } => validate(&catalog, input, at.as_deref(), cli.json),
        Command::Cohomology { input, at, max_degree, expected } => {
            cohomology(&catalog, input, at.as_deref(), *max_degree, *expected, cli.json)
        }
        Command::Deform { input, check, at, points, explicit, seed } => {
            let entry = load(&catalog, input, at.as_deref())?;
            let run = DeformRun { catalog: &catalog, entry: &entry, points: *points, explicit, seed: *seed, json: cli.json };
            run.check(*check)
        }
        Command::Catalog { command: CatalogCommand::List { dim, field } } => list(&catalog, *dim, *field, cli.json),
        Command::Catalog { command: CatalogCommand::Graph } => graph(&catalog, cli.json),
        Command::Reproduce { dim, seed } => reproduce_all(&catalog, *dim, *seed, cli.json),
    }
}

/// Resolves `input` to a file and an optional parameter value.
fn resolve(catalog: &Catalog, input: &str, at: Option<&str>) -> Result<(EntryFile, Option<Scalar>)> {
    let parse_value = |s: &str| s.trim().parse::<Scalar>().map_err(|e| anyhow!("bad parameter value {s:?}: {e}"));
    if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
        let file = EntryFile::parse(&text).with_context(|| format!("parsing {input}"))?;
        return Ok((file, at.map(parse_value).transpose()?));
    }
    let (id, value) = match input.split_once('(') {
        Some((id, rest)) => {
            let v = rest.strip_suffix(')').ok_or_else(|| anyhow!("unbalanced parameter in {input:?}"))?;
            (id.trim(), Some(v))
        }
        None => (input.trim(), at),
    };
    let mut file = catalog.file(id)?.clone();
    let value = value.map(parse_value).transpose()?;
    if let Some(v) = &value {
        if let Some(other) = file.special.get(&v.to_string()) {
            file = catalog.file(other)?.clone();
            return Ok((file, None));
        }
    }
    Ok((file, value))
}

fn load(catalog: &Catalog, input: &str, at: Option<&str>) -> Result<CatalogEntry> {
    let (file, value) = resolve(catalog, input, at)?;
    Ok(instantiate(&file, value)?)
}

fn label(file: &EntryFile, value: &Option<Scalar>) -> String {
    match value {
        Some(v) => format!("{}({v})", file.id),
        None => file.id.clone(),
    }
}

fn validate(catalog: &Catalog, input: &str, at: Option<&str>, as_json: bool) -> Result<Outcome> {
    let (file, value) = resolve(catalog, input, at)?;
    let checks = catalog::validate(&file, value.clone())?;
    let failed = checks.iter().any(|c| c.required && !c.ok);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&json!({ "id": label(&file, &value), "checks": checks, "ok": !failed }))?);
    } else {
        println!("{} ({}, dim {})", label(&file, &value), file.field, file.dim);
        for c in &checks {
            let status = match (c.ok, c.required) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "WARN",
            };
            if c.detail.is_empty() {
                println!("  [{status}] {}", c.name);
            } else {
                println!("  [{status}] {}: {}", c.name, c.detail);
            }
        }
    }
    Ok(if failed { Outcome::CheckFailed } else { Outcome::Ok })
}

fn cohomology(
    catalog: &Catalog,
    input: &str,
    at: Option<&str>,
    max_degree: usize,
    expected: bool,
    as_json: bool,
) -> Result<Outcome> {
    let entry = load(catalog, input, at)?;
    if max_degree > entry.dim() {
        bail!("degree {max_degree} exceeds the dimension {}", entry.dim());
    }
    let report = CohomologyReport::compute(&entry.id(), &entry.metric, max_degree)?;
    let mut mismatches = Vec::new();
    if expected {
        let table = entry.file.expected.as_ref().ok_or_else(|| anyhow!("{} has no expected table", entry.id()))?;
        for (name, got, want) in [("HC", report.hc(), &table.hc), ("HRC", report.hrc(), &table.hrc), ("H", report.h(), &table.h)] {
            let n = got.len().min(want.len());
            if got[..n] != want[..n] {
                mismatches.push(json!({ "row": name, "computed": &got[..n], "expected": &want[..n] }));
            }
        }
    }
    if as_json {
        let mut value = serde_json::to_value(&report)?;
        if expected {
            value["mismatches"] = json!(mismatches);
        }
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        print_table(&report);
        for m in &mismatches {
            println!("mismatch in {}: computed {} expected {}", m["row"].as_str().unwrap_or(""), m["computed"], m["expected"]);
        }
    }
    Ok(if mismatches.is_empty() { Outcome::Ok } else { Outcome::CheckFailed })
}

fn print_table(report: &CohomologyReport) {
    println!("{}", report.id);
    let header: String = report.rows.iter().map(|r| format!("{:>5}", r.n)).collect();
    println!("{:<6}{header}", "n");
    for (name, row) in [("HC", report.hc()), ("HRC", report.hrc()), ("H", report.h())] {
        let cells: String = row.iter().map(|x| format!("{x:>5}")).collect();
        println!("{name:<6}{cells}");
    }
}

struct DeformRun<'a> {
    catalog: &'a Catalog,
    entry: &'a CatalogEntry,
    points: Option<usize>,
    explicit: &'a [String],
    seed: u64,
    json: bool,
}

impl DeformRun<'_> {
    fn check(&self, check: DeformCheck) -> Result<Outcome> {
        if let DeformCheck::Iso = check {
            return self.isomorphisms();
        }
        let def = self.entry.deformation()?.ok_or_else(|| anyhow!("{} has no stored deformation", self.entry.id()))?;
        let default_points = if matches!(check, DeformCheck::Relations) { 1 } else { 10 };
        let on_variety = !matches!(check, DeformCheck::Relations);
        let points = self.sample(&def, self.points.unwrap_or(default_points), on_variety)?;
        let mut records = Vec::new();
        let mut failed = false;
        for point in &points {
            let at = format_point(def.params(), point);
            let record = match check {
                DeformCheck::Jacobi => match def.jacobi_residual(point) {
                    Ok(r) => {
                        failed |= !r.is_zero();
                        json!({ "point": at, "pass": r.is_zero(), "residual": r.to_string() })
                    }
                    Err(Error::VanishingDenominator) => json!({ "point": at, "rejected": "denominator vanishes" }),
                    Err(e) => return Err(e.into()),
                },
                DeformCheck::Cyclic => match def.evaluate(point) {
                    Ok(c) => {
                        let mut all = true;
                        for b in &self.entry.forms {
                            all &= cyclolie::cochains::is_cyclic(&c, b)?;
                        }
                        failed |= !all;
                        json!({ "point": at, "pass": all })
                    }
                    Err(Error::VanishingDenominator) => json!({ "point": at, "rejected": "denominator vanishes" }),
                    Err(e) => return Err(e.into()),
                },
                DeformCheck::Relations => {
                    let values: Vec<String> = def.relations_at(point)?.iter().map(Scalar::to_string).collect();
                    json!({ "point": at, "values": values })
                }
                DeformCheck::Iso => unreachable!(),
            };
            records.push(record);
        }
        if self.json {
            println!("{}", serde_json::to_string_pretty(&json!({ "id": self.entry.id(), "points": records }))?);
        } else {
            for r in &records {
                print_point(r);
            }
        }
        Ok(if failed { Outcome::CheckFailed } else { Outcome::Ok })
    }

    /// Explicit points if given, else random ones. With `on_variety` the
    /// parameters the entry holds at zero stay zero, so the relations hold.
    fn sample(&self, def: &Deformation, count: usize, on_variety: bool) -> Result<Vec<Vec<Scalar>>> {
        if !self.explicit.is_empty() {
            return self.explicit.iter().map(|p| parse_point(def.params(), p)).collect();
        }
        let vanishing = match &self.entry.file.deformation {
            Some(d) if on_variety => d.vanishing_on.clone(),
            _ => Vec::new(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        Ok((0..count)
            .map(|_| {
                let mut p = random::point(&mut rng, def.params().len());
                for (x, name) in p.iter_mut().zip(def.params()) {
                    if vanishing.contains(name) {
                        *x = Scalar::from_int(0);
                    }
                }
                p
            })
            .collect())
    }

    fn isomorphisms(&self) -> Result<Outcome> {
        let isos = &self.entry.file.isomorphisms;
        if isos.is_empty() {
            bail!("{} has no stored isomorphisms", self.entry.id());
        }
        let mut failed = false;
        let mut records = Vec::new();
        for iso in isos {
            let (status, detail) = iso_check(self.catalog, self.entry, iso)?;
            failed |= status == Status::Fail;
            records.push(json!({ "target": iso.target, "status": status, "detail": detail }));
        }
        if self.json {
            println!("{}", serde_json::to_string_pretty(&json!({ "id": self.entry.id(), "isomorphisms": records }))?);
        } else {
            for r in &records {
                println!("[{}] {} -> {}: {}", r["status"].as_str().unwrap_or(""), self.entry.id(), r["target"].as_str().unwrap_or(""), r["detail"].as_str().unwrap_or(""));
            }
        }
        Ok(if failed { Outcome::CheckFailed } else { Outcome::Ok })
    }
}

fn format_point(params: &[String], point: &[Scalar]) -> String {
    params.iter().zip(point).map(|(p, v)| format!("{p}={v}")).collect::<Vec<_>>().join(",")
}

fn parse_point(params: &[String], text: &str) -> Result<Vec<Scalar>> {
    let mut point = vec![Scalar::from_int(0); params.len()];
    for part in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| anyhow!("expected name=value in {part:?}"))?;
        let i = params.iter().position(|p| p == name.trim()).ok_or_else(|| anyhow!("unknown parameter {:?}", name.trim()))?;
        point[i] = value.trim().parse().map_err(|e| anyhow!("bad value {value:?}: {e}"))?;
    }
    Ok(point)
}

fn print_point(r: &serde_json::Value) {
    let at = r["point"].as_str().unwrap_or("");
    if let Some(reason) = r["rejected"].as_str() {
        println!("[SKIP] {at}: {reason}");
    } else if let Some(values) = r["values"].as_array() {
        let v: Vec<&str> = values.iter().filter_map(|x| x.as_str()).collect();
        println!("{at}: {}", v.join(", "));
    } else if r["pass"].as_bool() == Some(true) {
        println!("[PASS] {at}");
    } else {
        match r["residual"].as_str() {
            Some(res) => println!("[FAIL] {at}: residual {res}"),
            None => println!("[FAIL] {at}"),
        }
    }
}

fn list(catalog: &Catalog, dim: Option<usize>, field: Option<FieldArg>, as_json: bool) -> Result<Outcome> {
    let field = field.map(|f| match f {
        FieldArg::Complex => Field::Complex,
        FieldArg::Real => Field::Real,
    });
    let ids = catalog.enumerate(&Filter { dim, field, ..Filter::default() })?;
    let files: Vec<&EntryFile> = ids.iter().map(|id| catalog.file(id)).collect::<Result<_, _>>()?;
    if as_json {
        let rows: Vec<_> = files
            .iter()
            .map(|f| json!({ "id": f.id, "name": f.name, "dim": f.dim, "field": f.field, "parameter": f.parameter }))
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else {
        for f in files {
            let param = f.parameter.as_deref().map(|p| format!(" [{p}]")).unwrap_or_default();
            println!("{:<20} {:>3}  {:<8} {}{param}", f.id, f.dim, f.field.to_string(), f.name);
        }
    }
    Ok(Outcome::Ok)
}

fn graph(catalog: &Catalog, as_json: bool) -> Result<Outcome> {
    let g = catalog.jump_graph();
    if as_json {
        println!("{}", serde_json::to_string_pretty(&g)?);
        return Ok(Outcome::Ok);
    }
    for (label, id) in &g.nodes {
        let jumps = g.out_edges(label);
        let smooth: Vec<&str> = g.smooth.iter().filter(|(a, _)| a == label).map(|(_, b)| b.as_str()).collect();
        println!("{label:<5} {id:<12} jumps to: {:<24} smooth to: {}", jumps.join(" "), smooth.join(" "));
    }
    Ok(Outcome::Ok)
}

fn reproduce_all(catalog: &Catalog, dim: Option<usize>, seed: u64, as_json: bool) -> Result<Outcome> {
    let results = reproduce::run(catalog, &Options { dim, seed })?;
    let t = tally(&results);
    if as_json {
        println!("{}", serde_json::to_string_pretty(&results)?);
    } else {
        for r in &results {
            println!("{r}");
        }
        println!("{} checks: {} pass, {} warn, {} fail", results.len(), t.pass, t.warn, t.fail);
    }
    Ok(if t.fail > 0 { Outcome::CheckFailed } else { Outcome::Ok })
}
