mod fixtures;
mod recipes;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use lieform_core::cohomology::{cohomology_with_weights, graded_cohomology, positive_cohomology, Coefficients};
use lieform_core::deform::{enumerate, verdict, ExtensionContext, ParamsJson};
use lieform_core::invariants::invariant_report;
use lieform_core::schema::{table_from_str, table_to_json, ConstructionSpec};
use lieform_core::{AlgebraTable, Subspace};

use fixtures::{FixtureError, FixtureFile, Report};

/// Exact computations with finite-dimensional algebras over GF(2).
#[derive(Parser, Debug)]
#[command(name = "lieform", version)]
struct Cli {
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an algebra from a construction spec and print its table.
    Build { spec: PathBuf },
    /// Check the axioms of an algebra table.
    Validate { algebra: PathBuf },
    /// Chevalley–Eilenberg cohomology with trivial or adjoint coefficients.
    Cohomology(CohomologyArgs),
    /// Structural invariants of a Lie algebra.
    Invariants {
        algebra: PathBuf,
        /// Exhaustive scans over all GF(2) points (dimension at most 16).
        #[arg(long)]
        deep: bool,
    },
    /// Evaluate a deformation of 𝔰 ⊗ O₁(n) + g ⊗ U + K∂.
    Deform { spec: PathBuf },
    /// Run the verification fixtures.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    algebra: PathBuf,
    #[arg(long, value_parser = ["trivial", "adjoint"])]
    module: String,
    #[arg(long)]
    degree: usize,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "positive")]
    weight: Option<i64>,
    #[arg(long)]
    positive: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Glob over check names.
    #[arg(long)]
    filter: Option<String>,
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Fixture file (default: fixtures/paper.json).
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Recompute DERIVED expectations with the brute-force oracles and save.
    #[arg(long)]
    regenerate_fixtures: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] lieform_core::Error),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// Exit statuses: success, verification failure, usage or input error.
const OK: u8 = 0;
const FAILED: u8 = 1;
const INPUT: u8 = 2;

fn read_input(path: &Path) -> Result<String, CliError> {
    let read = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn json_error(path: &Path, e: serde_json::Error) -> CliError {
    lieform_core::Error::Json(format!("{}: {e}", path.display())).into()
}

/// Accepts either a table or a construction spec (an object with `construct`).
fn load_algebra(path: &Path) -> Result<AlgebraTable, CliError> {
    let text = read_input(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| json_error(path, e))?;
    if value.get("construct").is_some() {
        let spec: ConstructionSpec = serde_json::from_str(&text).map_err(|e| json_error(path, e))?;
        Ok(spec.build()?)
    } else {
        table_from_str(&text).map_err(|e| match e {
            lieform_core::Error::Json(m) => lieform_core::Error::Json(format!("{}: {m}", path.display())).into(),
            other => other.into(),
        })
    }
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json serializes"));
}

fn format_table(t: &AlgebraTable) -> String {
    let mut out = format!("{} algebra of dimension {}\n", t.kind().as_str(), t.dim());
    if let Some(w) = t.weights() {
        let cols: Vec<String> = (0..t.dim()).map(|i| format!("{}:{}", t.label(i), w[i])).collect();
        out += &format!("weights  {}\n", cols.join("  "));
    }
    for i in 0..t.dim() {
        for j in i..t.dim() {
            let p = t.product(i, j);
            if !p.is_zero() {
                out += &format!("  {} · {} = {}\n", t.label(i), t.label(j), t.format_vector(p));
            }
        }
    }
    out
}

fn format_rows(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:width$}  {v}\n"))
        .collect()
}

fn value_rows(v: &Value) -> Vec<(String, String)> {
    match v {
        Value::Object(m) => m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        other => vec![("value".into(), other.to_string())],
    }
}

fn cmd_build(cli: &Cli, spec: &Path) -> Result<u8, CliError> {
    let text = read_input(spec)?;
    let spec: ConstructionSpec = serde_json::from_str(&text).map_err(|e| json_error(spec, e))?;
    let t = spec.build()?;
    if cli.pretty {
        print!("{}", format_table(&t));
    } else {
        emit(&table_to_json(&t));
    }
    Ok(OK)
}

fn cmd_validate(cli: &Cli, path: &Path) -> Result<u8, CliError> {
    let t = load_algebra(path)?;
    let report = t.validate();
    if cli.pretty {
        if report.is_valid() {
            println!("valid {} algebra of dimension {}", t.kind().as_str(), t.dim());
        }
        for v in &report.violations {
            println!("violation: {v}");
        }
    } else {
        emit(&json!({"valid": report.is_valid(), "violations": report.violations}));
    }
    Ok(if report.is_valid() { OK } else { FAILED })
}

fn cmd_cohomology(cli: &Cli, a: &CohomologyArgs) -> Result<u8, CliError> {
    let t = load_algebra(&a.algebra)?;
    let m: Coefficients = a.module.parse()?;
    let c = match (a.weight, a.positive) {
        (Some(w), _) => graded_cohomology(&t, m, a.degree, w)?,
        (None, true) => positive_cohomology(&t, m, a.degree)?,
        (None, false) if t.weights().is_some() => cohomology_with_weights(&t, m, a.degree)?,
        (None, false) => lieform_core::cohomology::cohomology(&t, m, a.degree)?,
    };
    let r = c.report;
    if cli.pretty {
        let mut rows = vec![
            ("module".to_string(), r.module.as_str().to_string()),
            ("degree".to_string(), r.degree.to_string()),
            ("dimZ".to_string(), r.dim_z.to_string()),
            ("dimB".to_string(), r.dim_b.to_string()),
            ("dimH".to_string(), r.dim_h.to_string()),
        ];
        if let Some(by) = &r.by_weight {
            for (w, d) in by {
                rows.push((format!("weight {w}"), d.to_string()));
            }
        }
        print!("{}", format_rows(&rows));
    } else {
        emit(&serde_json::to_value(&r).expect("report serializes"));
    }
    Ok(OK)
}

fn cmd_invariants(cli: &Cli, path: &Path, deep: bool) -> Result<u8, CliError> {
    let t = load_algebra(path)?;
    let r = serde_json::to_value(invariant_report(&t, deep)?).expect("report serializes");
    if cli.pretty {
        print!("{}", format_rows(&value_rows(&r)));
    } else {
        emit(&r);
    }
    Ok(OK)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeformSpec {
    n: u32,
    #[serde(default)]
    u: Vec<usize>,
    #[serde(default)]
    params: Option<ParamsJson>,
    #[serde(default)]
    enumerate: bool,
}

fn cmd_deform(cli: &Cli, path: &Path) -> Result<u8, CliError> {
    let text = read_input(path)?;
    let spec: DeformSpec = serde_json::from_str(&text).map_err(|e| json_error(path, e))?;
    let dim = lieform_core::constructions::divided_powers(spec.n)?.dim();
    let ctx = ExtensionContext::divided_powers(spec.n, &Subspace::coordinate(dim, &spec.u)?)?;
    let (out, ok) = match (spec.params, spec.enumerate) {
        (Some(_), true) => return Err(CliError::Usage("give either `params` or `enumerate`, not both".into())),
        (None, false) => return Err(CliError::Usage("deform spec needs `params` or `\"enumerate\": true`".into())),
        (Some(p), false) => {
            let v = verdict(&ctx, &p.into_params(dim)?)?;
            let ok = v.jacobi_ok;
            (serde_json::to_value(v).expect("verdict serializes"), ok)
        }
        (None, true) => {
            let e = enumerate(&ctx)?;
            let ok = e.disagreements == 0;
            let v = json!({
                "tuples": e.verdicts.len(),
                "jacobi_valid": e.jacobi_valid,
                "disagreements": e.disagreements,
                "verdicts": e.verdicts,
            });
            (v, ok)
        }
    };
    if cli.pretty {
        let mut rows = value_rows(&out);
        rows.retain(|(k, _)| k != "verdicts");
        print!("{}", format_rows(&rows));
    } else {
        emit(&out);
    }
    Ok(if ok { OK } else { FAILED })
}

fn default_fixtures() -> PathBuf {
    let local = PathBuf::from("fixtures/paper.json");
    if local.exists() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/paper.json")
}

fn envelope(report: &Report) -> Value {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    json!({
        "meta": {
            "tool": "lieform",
            "version": env!("CARGO_PKG_VERSION"),
            "generated_at_unix": now,
        },
        "report": report,
    })
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> Result<u8, CliError> {
    let path = a.fixtures.clone().unwrap_or_else(default_fixtures);
    let mut file = FixtureFile::load(&path)?;
    if a.regenerate_fixtures {
        let names = file.regenerate(a.filter.as_deref()).map_err(CliError::Usage)?;
        file.save(&path)?;
        emit(&json!({"fixture_file": path.display().to_string(), "regenerated": names}));
        return Ok(OK);
    }
    let selected = file.select(a.filter.as_deref())?;
    if selected.is_empty() {
        return Err(CliError::Usage(format!(
            "no checks match `{}`",
            a.filter.as_deref().unwrap_or("*")
        )));
    }
    let report = fixtures::run(&selected);
    let env = envelope(&report);
    if let Some(out) = &a.report {
        let text = serde_json::to_string_pretty(&env).expect("report serializes") + "\n";
        std::fs::write(out, text).map_err(|source| CliError::Write {
            path: out.clone(),
            source,
        })?;
    }
    if cli.pretty {
        for c in &report.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let prov = serde_json::to_value(c.provenance).expect("serializes");
            println!("{status}  {:<40} {}", c.name, prov.as_str().unwrap_or(""));
            if !c.pass {
                let actual = c.actual.as_ref().map_or("-".to_string(), Value::to_string);
                println!("      expected {}  actual {actual}", c.expected);
                if let Some(e) = &c.error {
                    println!("      error: {e}");
                }
            }
        }
        println!("{} of {} checks passed", report.passed, report.total);
    } else {
        emit(&env);
    }
    Ok(if report.all_pass() { OK } else { FAILED })
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("LIEFORM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("LIEFORM_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure threads: {e}")))
}

fn dispatch(cli: &Cli) -> Result<u8, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Build { spec } => cmd_build(cli, spec),
        Command::Validate { algebra } => cmd_validate(cli, algebra),
        Command::Cohomology(a) => cmd_cohomology(cli, a),
        Command::Invariants { algebra, deep } => cmd_invariants(cli, algebra, *deep),
        Command::Deform { spec } => cmd_deform(cli, spec),
        Command::VerifyPaper(a) => cmd_verify(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    std::panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    match std::panic::catch_unwind(|| dispatch(&cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT)
        }
        Err(_) => ExitCode::from(INPUT),
    }
}
