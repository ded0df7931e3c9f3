//! Command-line front end. Every command reads JSON inputs, prints one JSON
//! document wrapped in `{"schema_version", "kind", "data"}` and maps the
//! outcome to an exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success / positive verdict |
//! | 1 | unreadable or malformed input |
//! | 2 | definite failure (a condition is violated) |
//! | 3 | undecided (irreducibility unknown, sign undetermined) |
//! | 4 | bounded search exhausted |

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::{check_type_j, FactoredCharPoly, TypeStatus};
use crate::config::{Budgets, FloatPrecision};
use crate::error::Error;
use crate::invariants::report_for_manifold;
use crate::linalg::IntMatrix;
use crate::manifold::{build_manifold, ManifoldData};
use crate::otbridge::compare_with_tm;
use crate::polyring::IntPoly;
use crate::units::{build_dirichlet_family, verify_dirichlet, DirichletFamily, FamilyMode, Mode};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_EXHAUSTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "otforge", version, about = "Build and verify OT-type manifold data from integer matrices")]
pub struct Cli {
    #[command(flatten)]
    pub budgets: BudgetArgs,

    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Largest coefficient tried when searching for units.
    #[arg(long, global = true, default_value_t = 8)]
    pub coeff_bound: u32,
    /// Largest |n_i| tried when searching for a specialness witness.
    #[arg(long, global = true, default_value_t = 3)]
    pub search_bound: u32,
    /// Bits of precision for certified enclosures.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    /// Acceptance threshold for floating residuals.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Floating-point width for the numeric eigenstructure.
    #[arg(long, global = true, value_enum, default_value_t = FloatArg::Double)]
    pub float: FloatArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FloatArg {
    Double,
    DoubleDouble,
}

impl BudgetArgs {
    pub fn budgets(&self) -> Budgets {
        Budgets {
            coeff_bound: self.coeff_bound,
            search_bound: self.search_bound,
            precision_bits: self.precision,
            tolerance: self.tolerance,
            float_precision: match self.float {
                FloatArg::Double => FloatPrecision::Double,
                FloatArg::DoubleDouble => FloatPrecision::DoubleDouble,
            },
            ..Budgets::default()
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify the type of a matrix against a factorization of its
    /// characteristic polynomial.
    Classify { matrix: PathBuf, factorization: PathBuf },
    /// Construct and verify a Dirichlet family.
    Dirichlet {
        matrix: PathBuf,
        factorization: PathBuf,
        /// Residue t modulo b0 (the default).
        #[arg(long, conflicts_with = "custom")]
        primary: bool,
        /// JSON list of residues modulo b0 (one, or one per member).
        #[arg(long)]
        custom: Option<PathBuf>,
    },
    /// Assemble the manifold data for a matrix and a Dirichlet family.
    Build { matrix: PathBuf, factorization: PathBuf, family: PathBuf },
    /// Specialness, b1 and obstruction verdicts for built manifold data.
    Invariants { manifold: PathBuf },
    /// Compare the OT action of a field with the matrix construction.
    OtCompare { poly: PathBuf, units: PathBuf },
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema_version: u32,
    kind: String,
    data: T,
}

/// Result of one CLI invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn parse_error(path: &Path, e: &serde_json::Error) -> Error {
    Error::Parse(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_error(path, &e))
}

/// Reads either a bare payload or one wrapped in an envelope of `kind`.
fn read_payload<T: DeserializeOwned>(path: &Path, kind: &str) -> Result<T, Error> {
    let v: Value = read_json(path)?;
    let inner = match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => v.get("data").cloned().unwrap_or(Value::Null),
        Some(k) => return Err(Error::Parse(format!("{}: expected a {kind} document, found {k}", path.display()))),
        None => v,
    };
    serde_json::from_value(inner).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Io(_) => EXIT_PARSE,
        Error::Undetermined(_) => EXIT_UNKNOWN,
        Error::SearchExhausted(_) => EXIT_EXHAUSTED,
        _ => EXIT_FAILURE,
    }
}

fn render<T: Serialize>(kind: &str, data: &T) -> Result<String, Error> {
    let env = Envelope { schema_version: SCHEMA_VERSION, kind: kind.to_string(), data };
    Ok(serde_json::to_string_pretty(&env)? + "\n")
}

fn execute(cli: &Cli) -> Result<(i32, String), Error> {
    let budgets = cli.budgets.budgets();
    budgets.validate().map_err(|e| Error::Parse(e.to_string()))?;
    match &cli.command {
        Command::Classify { matrix, factorization } => {
            let m: IntMatrix = read_json(matrix)?;
            let f: FactoredCharPoly = read_json(factorization)?;
            let cert = check_type_j(&m, &f)?;
            let code = match cert.status {
                TypeStatus::TypeJ1 | TypeStatus::TypeJ => EXIT_OK,
                TypeStatus::Unknown => EXIT_UNKNOWN,
                TypeStatus::NotTypeJ => EXIT_FAILURE,
            };
            Ok((code, render("type-certificate", &cert)?))
        }
        Command::Dirichlet { matrix, factorization, custom, .. } => {
            let m: IntMatrix = read_json(matrix)?;
            let f: FactoredCharPoly = read_json(factorization)?;
            let mode = match custom {
                Some(path) => Mode::Custom(read_json(path)?),
                None => Mode::Primary,
            };
            let family = build_dirichlet_family(&m, &f, &mode, &budgets)?;
            Ok((EXIT_OK, render("dirichlet-family", &family)?))
        }
        Command::Build { matrix, factorization, family } => {
            let m: IntMatrix = read_json(matrix)?;
            let f: FactoredCharPoly = read_json(factorization)?;
            let family = read_family(&m, family, budgets.precision_bits)?;
            let data = build_manifold(&m, &f, &family, &budgets)?;
            Ok((EXIT_OK, render("manifold", &data)?))
        }
        Command::Invariants { manifold } => {
            let data: ManifoldData = read_payload(manifold, "manifold")?;
            let report = report_for_manifold(&data, &budgets)?;
            Ok((EXIT_OK, render("obstruction-report", &report)?))
        }
        Command::OtCompare { poly, units } => {
            let p: IntPoly = read_json(poly)?;
            let us: Vec<IntPoly> = read_json(units)?;
            let cert = compare_with_tm(&p, &us, &budgets)?;
            Ok((EXIT_OK, render("identity-certificate", &cert)?))
        }
    }
}

/// A family file is either `dirichlet` output or a bare list of
/// polynomials, which is verified here.
fn read_family(m: &IntMatrix, path: &Path, precision_bits: u32) -> Result<DirichletFamily, Error> {
    let v: Value = read_json(path)?;
    if v.is_array() {
        let polys: Vec<IntPoly> =
            serde_json::from_value(v).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let certificate = verify_dirichlet(m, &polys, precision_bits)?;
        return Ok(DirichletFamily { polys, labels: Vec::new(), mode: FamilyMode::External, certificate });
    }
    read_payload(path, "dirichlet-family")
}

/// Runs the CLI on `args` (including the program name) with at most
/// `threads` worker threads; `None` uses the rayon default.
pub fn run_with<I, S>(args: I, threads: Option<usize>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            return Outcome { code, stdout: String::new(), stderr: e.render().to_string() };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return Outcome { code: EXIT_FAILURE, stdout: String::new(), stderr: e.to_string() },
    };
    let result = pool.install(|| execute(&cli));
    match result {
        Ok((code, json)) => match &cli.output {
            Some(path) => match std::fs::write(path, &json) {
                Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                Err(e) => Outcome { code: EXIT_FAILURE, stdout: String::new(), stderr: format!("{}: {e}\n", path.display()) },
            },
            None => Outcome { code, stdout: json, stderr: String::new() },
        },
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if matches!(e, Error::SearchExhausted(_)) {
                stderr.push_str("hint: raise --coeff-bound or --search-bound\n");
            }
            Outcome { code: exit_code(&e), stdout: String::new(), stderr }
        }
    }
}

/// Thread cap from `OTFORGE_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("OTFORGE_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Entry point used by the binary.
pub fn main_with_env() -> i32 {
    let out = run_with(std::env::args_os(), threads_from_env());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
