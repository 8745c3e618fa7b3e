//! The `skewgas` command line: `sop`, `moments`, `partition`, `verify` and
//! `sweep`.
//!
//! Exit codes: 0 success, 1 a tolerance or numerical failure, 2 a usage
//! error such as an unknown flag, 3 a missing parameter, 4 an invalid one.

pub mod args;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use crate::error::Error;
use crate::moments::MomentEngine;
use crate::partition::{z_sweep_with_nodes, SweepPoint};
use crate::sop::{build_q_with_nodes, coefficient_table, Source};

pub use args::{parse_args, CliError, Command, Format, RunConfig};
use args::{EXIT_INVALID, EXIT_OK, EXIT_TOLERANCE};
use output::Header;

/// Rendered output and, on a tolerance failure, the message for stderr.
pub struct Outcome {
    pub text: String,
    pub failure: Option<String>,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::Domain(_) | Error::Range(_) => EXIT_INVALID,
        _ => EXIT_TOLERANCE,
    }
}

fn disagreement(points: &[SweepPoint]) -> Option<String> {
    let bad: Vec<String> = points
        .iter()
        .filter(|p| !p.agrees())
        .map(|p| {
            format!(
                "X={}: max relative difference {} ({:.2} x tolerance)",
                p.x.to_sci_string(6),
                p.max_rel_diff.to_sci_string(3),
                p.worst_ratio
            )
        })
        .collect();
    (!bad.is_empty()).then(|| format!("routes disagree or Z is not positive at {}", bad.join("; ")))
}

/// Executes a parsed configuration.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, Error> {
    let h = Header { command: cfg.command.as_str(), family: &cfg.family, n: cfg.n, digits: cfg.digits };
    let (w, n) = (&cfg.family, cfg.n);
    match cfg.command {
        Command::Sop => {
            let x = cfg.xs[0];
            let fam = build_q_with_nodes(w, x, n, cfg.nodes)?;
            let text = match cfg.format {
                Format::Csv => output::sop_csv(&h, &fam),
                _ => output::sop_json(&h, &fam, &coefficient_table(w, x, n, Source::Recurrence)?),
            };
            Ok(Outcome { text, failure: None })
        }
        Command::Moments => {
            let x = cfg.xs[0];
            let engine = MomentEngine::new(w, 2 * n, cfg.nodes)?;
            let m = engine.moment_matrix(x, n)?;
            let text = match cfg.format {
                Format::Csv => output::moments_csv(&h, x, &m),
                _ => output::moments_json(&h, x, &m, engine.table().max_relative_error()),
            };
            Ok(Outcome { text, failure: None })
        }
        Command::Partition | Command::Sweep => {
            let points = z_sweep_with_nodes(w, &cfg.xs, n, &cfg.routes, cfg.slow, cfg.nodes)?;
            let text = match (cfg.format, cfg.command) {
                (Format::Csv, _) => output::partition_csv(&h, &points),
                (_, Command::Partition) => output::partition_json(&h, &points[0]),
                _ => output::sweep_json(&h, &points),
            };
            Ok(Outcome { text, failure: disagreement(&points) })
        }
        Command::Verify => {
            let checks = verify::run_checks(w, n, &cfg.xs, cfg.nodes, cfg.slow);
            let text = match cfg.format {
                Format::Json => output::verify_json(&h, &cfg.xs, &checks),
                Format::Csv => output::verify_csv(&h, &checks),
                Format::Table => output::verify_table(&h, &cfg.xs, &checks),
            };
            let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
            let failure = (!failed.is_empty()).then(|| format!("checks outside tolerance: {}", failed.join(", ")));
            Ok(Outcome { text, failure })
        }
    }
}

/// Parses, runs and prints; returns the process exit code.
pub fn run<I, T>(argv: I, env_precision: Option<&str>, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(argv, env_precision) {
        Ok(cfg) => cfg,
        Err(e) => {
            if e.code == EXIT_OK {
                let _ = write!(out, "{}", e.message);
            } else {
                let _ = writeln!(err, "skewgas: {}", e.message.trim_end());
            }
            return e.code;
        }
    };
    match execute(&cfg) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            match outcome.failure {
                Some(msg) => {
                    let _ = writeln!(err, "skewgas: {msg}");
                    EXIT_TOLERANCE
                }
                None => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "skewgas: {e}");
            error_code(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args() -> i32 {
    let env = std::env::var("SKEWGAS_PRECISION").ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), env.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}
