//! Command-line front end. Every verb prints one line of JSON on stdout.
//!
//! Exit codes: 0 success, 1 validation error, 2 precondition violation,
//! 3 parse or usage error, 4 internal assertion or failed check.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::chain_complex::{
    complex_to_text, cone, parse_chain_map, parse_complex, ChainMap, GradedComplex,
};
use crate::error::Error;
use crate::homology::LaurentChain;
use crate::homology::{homology, mapping_torus_betti, perfect_pairing_check, Flavor};
use crate::lefschetz_duality::{
    cotrace_map, delta_quantity, lefschetz_oracle_details, run_campaign, trace_map, CampaignParams,
    DualFactor,
};
use crate::normal_form::decompose;

#[derive(Parser, Debug)]
#[command(
    name = "uchain",
    version,
    about = "Chain complexes over F2[U]: classification, homology and Lefschetz numbers"
)]
struct Cli {
    /// Also write the result to this file (for `cone`, the complex text).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Minus,
    Plus,
    Infinity,
    RedMinus,
    RedPlus,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Minus => Flavor::Minus,
            FlavorArg::Plus => Flavor::Plus,
            FlavorArg::Infinity => Flavor::Infinity,
            FlavorArg::RedMinus => Flavor::RedMinus,
            FlavorArg::RedPlus => Flavor::RedPlus,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form: one-step and two-step summands.
    Classify { complex: PathBuf },
    /// One homology flavor.
    Homology {
        complex: PathBuf,
        #[arg(long, value_enum, default_value = "minus")]
        flavor: FlavorArg,
    },
    /// Δ(C, F) for an endomorphism F.
    DeltaQuantity { complex: PathBuf, map: PathBuf },
    /// Brute-force trace of F on H^+.
    Lefschetz { complex: PathBuf, map: PathBuf },
    /// Seeded campaign comparing Δ(C, F) with the Lefschetz number.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 6)]
        max_exponent: u32,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Mapping cone: `cone <source.cx> [<target.cx>] <map>`.
    Cone {
        #[arg(num_args = 2..=3, required = true)]
        files: Vec<PathBuf>,
    },
    /// Betti numbers over F2 of the mapping torus of a self-map.
    MappingTorus { complex: PathBuf, map: PathBuf },
    /// Invertibility of the F2 pairing between H^+(C) and H^-_red(C^∨).
    PairingCheck { complex: PathBuf },
}

/// Outcome of a command: exit code and the stdout payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

enum Failure {
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    detail: &'a str,
}

#[derive(Serialize)]
struct ErrorPayload<'a> {
    error: ErrorBody<'a>,
}

fn error_payload(kind: &str, detail: &str) -> String {
    to_json(&ErrorPayload {
        error: ErrorBody { kind, detail },
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<Arc<GradedComplex>, Failure> {
    Ok(Arc::new(parse_complex(&read(path)?)?))
}

fn load_map(
    path: &Path,
    source: &Arc<GradedComplex>,
    target: &Arc<GradedComplex>,
) -> Result<ChainMap, Failure> {
    Ok(parse_chain_map(
        &read(path)?,
        source.clone(),
        target.clone(),
    )?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn bit(b: bool) -> u8 {
    u8::from(b)
}

#[derive(Serialize)]
struct LefschetzOut {
    value: u8,
    h_plus_dimension: usize,
    traces_by_grading: BTreeMap<i64, u8>,
    window: i64,
}

#[derive(Serialize)]
struct ConeOut {
    name: String,
    rank: usize,
    text: String,
}

#[derive(Serialize)]
struct PairingOut {
    plus_dimension: usize,
    dual_minus_dimension: usize,
    invertible: bool,
    trace_cotrace: u8,
}

/// Returns (exit code, payload, optional file contents for `--output`).
fn dispatch(cli: &Cli) -> Result<(i32, String, Option<String>), Failure> {
    match &cli.command {
        Command::Classify { complex } => {
            let c = load_complex(complex)?;
            Ok((0, to_json(&decompose(&c)?.report()), None))
        }
        Command::Homology { complex, flavor } => {
            let c = load_complex(complex)?;
            Ok((
                0,
                to_json(&homology(&c, (*flavor).into())?.report(&c)),
                None,
            ))
        }
        Command::DeltaQuantity { complex, map } => {
            let c = load_complex(complex)?;
            let f = load_map(map, &c, &c)?;
            Ok((
                0,
                json!({"value": bit(delta_quantity(&c, &f)?)}).to_string(),
                None,
            ))
        }
        Command::Lefschetz { complex, map } => {
            let c = load_complex(complex)?;
            let f = load_map(map, &c, &c)?;
            let r = lefschetz_oracle_details(&c, &f)?;
            let out = LefschetzOut {
                value: bit(r.value),
                h_plus_dimension: r.h_plus_dimension,
                traces_by_grading: r
                    .traces_by_grading
                    .iter()
                    .map(|(&k, &t)| (k, bit(t)))
                    .collect(),
                window: r.window,
            };
            Ok((0, to_json(&out), None))
        }
        Command::Verify {
            seed,
            trials,
            max_rank,
            max_exponent,
            jobs,
        } => {
            let params = CampaignParams {
                campaign_seed: *seed,
                trials: *trials,
                max_rank: *max_rank,
                max_exponent: *max_exponent,
                jobs: *jobs,
            };
            let report = run_campaign(&params, DualFactor::PhiDual)?;
            let code = if report.passed() { 0 } else { 4 };
            Ok((code, to_json(&report), None))
        }
        Command::Cone { files } => {
            let source = load_complex(&files[0])?;
            let target = if files.len() == 3 {
                load_complex(&files[1])?
            } else {
                source.clone()
            };
            let f = load_map(
                files.last().expect("clap enforces 2..=3 files"),
                &source,
                &target,
            )?;
            let c = cone(&f)?.with_name(format!("cone_{}", f.name()));
            let text = complex_to_text(&c);
            let out = ConeOut {
                name: c.name().to_string(),
                rank: c.rank(),
                text: text.clone(),
            };
            Ok((0, to_json(&out), Some(text)))
        }
        Command::MappingTorus { complex, map } => {
            let c = load_complex(complex)?;
            let f = load_map(map, &c, &c)?;
            Ok((
                0,
                json!({"betti": mapping_torus_betti(&c, &f)?}).to_string(),
                None,
            ))
        }
        Command::PairingCheck { complex } => {
            let c = load_complex(complex)?;
            let r = perfect_pairing_check(&c)?;
            let tc = LaurentChain::term(0, 0)
                .apply(cotrace_map(&c).matrix())
                .apply(trace_map(&c).matrix());
            let out = PairingOut {
                plus_dimension: r.plus_dimension,
                dual_minus_dimension: r.dual_minus_dimension,
                invertible: r.invertible,
                trace_cotrace: bit(tc.contains(0, 0)),
            };
            Ok((if r.invertible { 0 } else { 4 }, to_json(&out), None))
        }
    }
}

/// Parses arguments (the first is the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                },
                _ => Outcome {
                    code: 3,
                    stdout: error_payload("usage", e.to_string().trim()),
                },
            };
        }
    };
    let result = dispatch(&cli).and_then(|(code, payload, file)| {
        if let Some(path) = &cli.output {
            let contents = file.unwrap_or_else(|| format!("{payload}\n"));
            std::fs::write(path, contents)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        Ok((code, payload))
    });
    match result {
        Ok((code, payload)) => Outcome {
            code,
            stdout: payload,
        },
        Err(Failure::Engine(e)) => Outcome {
            code: e.exit_code(),
            stdout: error_payload(e.kind(), &e.to_string()),
        },
        Err(Failure::Io(detail)) => Outcome {
            code: 3,
            stdout: error_payload("io", &detail),
        },
    }
}

/// Entry point for the binary: prints the payload and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run(args);
    println!("{}", out.stdout.trim_end());
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_3() {
        let out = run(["uchain", "frobnicate"]);
        assert_eq!(out.code, 3);
        assert!(out.stdout.starts_with(r#"{"error":{"kind":"usage""#));
        let out = run(["uchain", "homology", "x.cx", "--flavor", "sideways"]);
        assert_eq!(out.code, 3);
    }

    #[test]
    fn missing_file_is_reported() {
        let out = run(["uchain", "classify", "/nonexistent/x.cx"]);
        assert_eq!(out.code, 3);
        assert!(out.stdout.contains(r#""kind":"io""#));
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["uchain", "--help"]).code, 0);
    }
}
