//! Command-line front end. [`dispatch`] parses arguments, runs one command
//! and returns the exit code together with a JSON report; the `cubex`
//! binary only prints or writes that report.
//!
//! Exit codes: 0 pass, 1 verified violation or negative verdict, 2 input
//! or usage error.

mod commands;
mod load;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;

pub const SCHEMA: &str = "cubical-exactness/1";

#[derive(Debug, Parser)]
#[command(name = "cubex", version, about = "CAT(0) cube complexes, weight functions, Property A certificates and FC-type Artin groups")]
pub struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the parallel sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for sampled checks on large inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ComplexArg {
    /// `grid:WxH`, `star:M`, `tree:V,D`, `cube:N`, `path:L`, `edge`,
    /// `product(<f>,<f>)` or `file:<path>` (a bare `.json` path also works).
    #[arg(long, alias = "family")]
    pub complex: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the structural invariants of a complex.
    Validate(ComplexArg),
    /// Median of three points (vertex names, `ideal:<label>` or sign arrays).
    Median {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(num_args = 3, required = true)]
        points: Vec<String>,
    },
    /// Weight vector from a source vertex towards a target point.
    Weights {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        n: usize,
        /// Ambient dimension (defaults to the complex's).
        #[arg(long = "N")]
        ambient: Option<usize>,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        normalized: bool,
    },
    /// Exact sweep of the weight identities (mass, support, adjacent
    /// difference, triangle bound, equivariance).
    #[command(name = "verify-weights", visible_alias = "verify-thm31")]
    VerifyWeights {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long = "max-n")]
        max_n: usize,
        /// Action whose generators are checked for equivariance.
        #[arg(long)]
        action: Option<String>,
        /// Also use the family's ideal points as targets.
        #[arg(long)]
        with_ideal: bool,
    },
    /// Level sets and continuity of z ↦ phi^n_{x,z}(a).
    Continuity {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        n: usize,
        /// Classify only this point (default: every probed point).
        #[arg(long)]
        z: Option<String>,
        /// Length of the discontinuity witness prefix.
        #[arg(long, default_value_t = 8)]
        witness: usize,
    },
    /// Build and verify the Property A measures for a finite group action.
    #[command(name = "property-a")]
    PropertyA {
        #[command(flatten)]
        complex: ComplexArg,
        /// Action file, or `builtin:<swap|dihedral|hyperoctahedral|trivial>`.
        #[arg(long)]
        action: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        epsilon: String,
        /// Comma-separated generator names forming E (default: all).
        #[arg(long = "gen-set")]
        gen_set: Option<String>,
        /// `uniform` or a JSON file of stabilizer measures.
        #[arg(long, default_value = "uniform")]
        nu: String,
        /// Orbit basepoint (default: the complex's base vertex).
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Coxeter matrices and Artin groups.
    Artin {
        #[command(subcommand)]
        command: ArtinCommand,
    },
    /// Standard families of complexes.
    Family {
        #[command(subcommand)]
        command: FamilyCommand,
    },
    /// Enumerate the admissible sign vectors of a complex.
    Admissible {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ArtinCommand {
    /// Decide FC type (exit 0 FC, 1 not FC).
    Fc {
        #[arg(long)]
        matrix: String,
    },
    /// FC verdict plus the exactness conclusion and stabilizer types.
    Report {
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// Emit the truncated complex with its annotations and ideal points.
    Truncate(ComplexArg),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub status: Status,
    pub findings: Vec<Value>,
    pub result: Value,
    pub timing: Timing,
}

impl RunReport {
    /// The report without its timing block, for byte-level comparisons.
    pub fn deterministic_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialise");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timing");
        }
        v
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn help_text(&self) -> Option<&str> {
        self.findings.iter().find(|f| f["kind"] == "help").and_then(|f| f["text"].as_str())
    }
}

/// A finding; `violation` marks it as a failed check or negative verdict.
pub fn finding(kind: &str, violation: bool, data: Value) -> Value {
    let mut v = json!({"kind": kind, "violation": violation});
    if let (Some(obj), Value::Object(extra)) = (v.as_object_mut(), data) {
        obj.extend(extra);
    }
    v
}

/// What a command produced.
pub(crate) struct Outcome {
    pub findings: Vec<Value>,
    pub result: Value,
}

/// Parses `argv` (including the program name), runs the command and builds
/// the report. Never panics on bad input; usage errors give exit code 2.
pub fn dispatch<I, T>(argv: I) -> (i32, RunReport)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let start = Instant::now();
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let report = |status: Status, findings: Vec<Value>, result: Value| RunReport {
        schema: SCHEMA,
        command: echo.clone(),
        status,
        findings,
        result,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() },
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (0, report(Status::Pass, vec![finding("help", false, json!({"text": text}))], Value::Null))
                }
                _ => (2, report(Status::Error, vec![finding("usage", false, json!({"message": text}))], Value::Null)),
            };
        }
    };
    let run = || commands::run(&cli);
    let outcome = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::input(format!("cannot start {jobs} worker threads: {e}"))),
        },
        None => run(),
    };
    let (code, rep) = match outcome {
        Ok(Outcome { findings, result }) => {
            let status = if findings.iter().any(|f| f["violation"] == true) { Status::Fail } else { Status::Pass };
            (status.exit_code(), report(status, findings, result))
        }
        Err(e) => (2, report(Status::Error, vec![finding("error", false, error_json(&e))], Value::Null)),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, rep.to_pretty()) {
            let err = Error::Io(format!("{}: {e}", path.display()));
            return (2, report(Status::Error, vec![finding("error", false, error_json(&err))], Value::Null));
        }
    }
    (code, rep)
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Input(_) => "input",
        Error::UnknownVertex(_) => "unknown-vertex",
        Error::UnknownHyperplane(_) => "unknown-hyperplane",
        Error::Domain(_) => "domain",
        Error::AmbientDimension { .. } => "ambient-dimension",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::Action(_) => "action",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
    };
    json!({"error": kind, "message": e.to_string()})
}

/// Runs the CLI on the process arguments; returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let writes_file = args.iter().any(|a| a == "--out");
    let (code, report) = dispatch(args);
    // A closed stdout (for example `cubex ... | head`) is not an error worth reporting.
    let mut out = std::io::stdout().lock();
    if let Some(help) = report.help_text() {
        let _ = writeln!(out, "{help}");
    } else if code == 2 || !writes_file {
        let _ = writeln!(out, "{}", report.to_pretty());
    }
    if code == 2 {
        if let Some(msg) = report.findings.first().and_then(|f| f.get("message")).and_then(Value::as_str) {
            eprintln!("{msg}");
        }
    }
    code
}
