//! The `urprior` command-line tool.
//!
//! Exit codes: 0 when an ur-prior exists (or the command succeeded), 1 when
//! none exists (or no counterexample can be built), 2 for unreadable or
//! invalid input, 3 if an internal consistency check fails.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::cohomology::cohomology;
use crate::compat::{decide_urprior, pairwise_compatibility};
use crate::complex::{build_overlap_complex, SimplicialComplex};
use crate::numerics::rank;
use crate::oracle::feasibility_oracle;
use crate::witness::{generate_counterexample, WitnessError};
use format::{FormatError, Input};
use report::{CheckReport, CohomologyReport, InvalidReport, MatrixJson, OracleReport};

pub const EXIT_EXISTS: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "urprior", version, about = "Decide whether overlapping credence functions share an ur-prior")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the full decision pipeline on a system file
    Check {
        file: PathBuf,
        /// Emit the JSON report instead of text
        #[arg(long)]
        json: bool,
        /// Highest overlap-complex dimension to enumerate and report
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// Cohomology of a complex file, or of the overlap complex of a system file
    Cohomology {
        file: PathBuf,
        /// Cohomology degree
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        json: bool,
        /// For system files: enumerate the overlap complex at least this far
        #[arg(long)]
        max_dim: Option<usize>,
        /// Print the labeled coboundary matrices
        #[arg(long)]
        dump_matrices: bool,
    },
    /// Build a pairwise compatible system without an ur-prior from a complex file
    Counterexample {
        file: PathBuf,
        /// Where to write the system file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Brute-force ur-prior search, independent of the overlap complex
    Oracle {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name) and runs the command. Reports
/// go to `out`, diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_EXISTS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    execute(&args.command, out, err)
}

pub fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match command {
        Command::Check { file, json, max_dim } => cmd_check(file, *json, *max_dim, out),
        Command::Cohomology { file, dim, json, max_dim, dump_matrices } => {
            cmd_cohomology(file, *dim, *json, *max_dim, *dump_matrices, out)
        }
        Command::Counterexample { file, output } => cmd_counterexample(file, output.as_deref(), out, err),
        Command::Oracle { file, json } => cmd_oracle(file, *json, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(e, json)) => {
            let report = match &e {
                FormatError::Invalid(v) => InvalidReport::from_validation(v),
                other => InvalidReport::new(vec![other.to_string()]),
            };
            if json {
                let _ = emit_json(out, &report);
            } else {
                let _ = write!(err, "{}", report.render_text());
            }
            EXIT_INVALID
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
        Err(Failure::Output(e)) => {
            let _ = writeln!(err, "cannot write output: {e}");
            EXIT_INVALID
        }
    }
}

enum Failure {
    Input(FormatError, bool),
    Internal(String),
    Output(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e)
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")
}

fn load(file: &std::path::Path, json: bool) -> Result<Input, Failure> {
    format::read_file(file).and_then(|t| format::parse_input(&t)).map_err(|e| Failure::Input(e, json))
}

fn load_system(file: &std::path::Path, json: bool) -> Result<crate::credence::AgentSystem, Failure> {
    format::read_file(file).and_then(|t| format::parse_system(&t)).map_err(|e| Failure::Input(e, json))
}

/// Builds the check report for an already validated system.
pub fn check_report(system: &crate::credence::AgentSystem, max_dim: usize) -> Result<CheckReport, String> {
    let compatibility = pairwise_compatibility(system);
    let complex = build_overlap_complex(system, Some(max_dim.max(2)));
    let counts = (0..=max_dim).map(|k| complex.count(k)).collect();
    let h1 = cohomology(&complex, 1).dim();
    let result = decide_urprior(system).map_err(|e| e.to_string())?;
    Ok(CheckReport::new(system, &compatibility, counts, h1, &result))
}

fn cmd_check(file: &std::path::Path, json: bool, max_dim: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let system = load_system(file, json)?;
    let report = check_report(&system, max_dim).map_err(Failure::Internal)?;
    if json {
        emit_json(out, &report)?;
    } else {
        write!(out, "{}", report.render_text())?;
    }
    Ok(if report.ur_prior.is_some() { EXIT_EXISTS } else { EXIT_NONE })
}

/// Builds the cohomology report for a complex.
pub fn cohomology_report(source: &str, complex: &SimplicialComplex, k: usize, dump: bool) -> CohomologyReport {
    let top = complex.dimension().unwrap_or(0).max(k + 1);
    let counts = (0..=top).map(|d| complex.count(d)).collect();
    let ranks = (0..=k).map(|d| rank(&complex.coboundary_matrix(d))).collect();
    let mut report = CohomologyReport::new(source, counts, ranks, cohomology(complex, k));
    if dump {
        report.matrices = Some((0..=k).map(|d| MatrixJson::new(complex, d, &complex.coboundary_matrix(d))).collect());
    }
    report
}

fn cmd_cohomology(
    file: &std::path::Path,
    k: usize,
    json: bool,
    max_dim: Option<usize>,
    dump: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (source, complex) = match load(file, json)? {
        Input::System(system) => {
            let levels = max_dim.unwrap_or(0).max(k + 1);
            ("system", build_overlap_complex(&system, Some(levels)))
        }
        Input::Complex(complex) => ("complex", complex),
    };
    let report = cohomology_report(source, &complex, k, dump);
    if json {
        emit_json(out, &report)?;
    } else {
        write!(out, "{}", report.render_text())?;
    }
    Ok(EXIT_EXISTS)
}

fn cmd_counterexample(
    file: &std::path::Path,
    output: Option<&std::path::Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let complex =
        format::read_file(file).and_then(|t| format::parse_complex(&t)).map_err(|e| Failure::Input(e, false))?;
    let system = match generate_counterexample(&complex) {
        Ok(s) => s,
        Err(WitnessError::NoHole) => {
            writeln!(err, "NoHole: {}", WitnessError::NoHole)?;
            return Ok(EXIT_NONE);
        }
        Err(WitnessError::Invalid(v)) => return Err(Failure::Input(FormatError::Invalid(v), false)),
    };
    let text = format::system_to_json(&system);
    match output {
        Some(path) => {
            std::fs::write(path, format!("{text}\n"))?;
            writeln!(
                out,
                "wrote {}-agent, {}-outcome system to {}",
                system.len(),
                system.space().len(),
                path.display()
            )?;
        }
        None => writeln!(out, "{text}")?,
    }
    Ok(EXIT_EXISTS)
}

fn cmd_oracle(file: &std::path::Path, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let system = load_system(file, json)?;
    let measure = feasibility_oracle(&system);
    let report = OracleReport::new(&system, measure.as_ref());
    if json {
        emit_json(out, &report)?;
    } else {
        write!(out, "{}", report.render_text())?;
    }
    Ok(if measure.is_some() { EXIT_EXISTS } else { EXIT_NONE })
}
