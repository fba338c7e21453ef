//! `jrsp` — run, verify, and inspect the deterministic JRSP protocol.
//!
//! Exit codes: 0 = success / all checks pass, 1 = a verification check
//! failed, 2 = usage or input error.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use jrsp_core::TargetParams;

mod commands;

#[derive(Parser)]
#[command(
    name = "jrsp",
    about = "Deterministic joint remote preparation of four-qubit cluster-type states over GHZ channels",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one protocol run and print the transcript.
    Run(RunArgs),
    /// Run the full verification suite over random and edge-case parameters.
    Verify(VerifyArgs),
    /// Print Alice's or Bob's measurement basis matrix.
    Bases(BasesArgs),
    /// Print the resource comparison table.
    Resources(ResourcesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Alice,
    Bob,
}

#[derive(Args)]
struct RunArgs {
    /// Coefficients a,b,c,d of the desired state (comma-separated).
    #[arg(long, value_parser = parse_coeffs)]
    coeffs: [f64; 4],

    /// Phases theta1,theta2,theta3 (radians unless --degrees).
    #[arg(long, value_parser = parse_phases, default_value = "0,0,0")]
    phases: [f64; 3],

    /// Interpret --phases in degrees.
    #[arg(long)]
    degrees: bool,

    /// Force the outcome pair m,n instead of sampling.
    #[arg(long, value_parser = parse_force, conflicts_with = "seed")]
    force: Option<(u8, u8)>,

    /// Seed for outcome sampling (sampling is always seeded; default 0).
    #[arg(long)]
    seed: Option<u64>,

    /// Fidelity tolerance (default 1e-10; JRSP_TOL overrides the default).
    #[arg(long)]
    tolerance: Option<f64>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of random parameter draws (ignored in single-parameter mode).
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,

    /// Seed for the parameter draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Audit a single coefficient vector instead of sweeping.
    #[arg(long, value_parser = parse_coeffs)]
    coeffs: Option<[f64; 4]>,

    /// Phases for single-parameter mode (radians unless --degrees).
    #[arg(long, value_parser = parse_phases)]
    phases: Option<[f64; 3]>,

    /// Interpret --phases in degrees.
    #[arg(long)]
    degrees: bool,

    /// Fidelity tolerance (default 1e-10; JRSP_TOL overrides the default).
    #[arg(long)]
    tolerance: Option<f64>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BasesArgs {
    /// Whose basis to print.
    #[arg(long, value_enum, default_value = "alice")]
    which: Which,

    /// Alice's announced outcome selecting Bob's basis (0..=3).
    #[arg(long)]
    m: Option<u8>,

    #[arg(long, value_parser = parse_coeffs, default_value = "1,0,0,0")]
    coeffs: [f64; 4],

    #[arg(long, value_parser = parse_phases, default_value = "0,0,0")]
    phases: [f64; 3],

    /// Interpret --phases in degrees.
    #[arg(long)]
    degrees: bool,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ResourcesArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_csv<const N: usize>(s: &str, what: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated {what}, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad {what} entry {part:?}: {e}"))?;
    }
    Ok(out)
}

fn parse_coeffs(s: &str) -> Result<[f64; 4], String> {
    parse_csv::<4>(s, "coefficients")
}

fn parse_phases(s: &str) -> Result<[f64; 3], String> {
    parse_csv::<3>(s, "phases")
}

fn parse_force(s: &str) -> Result<(u8, u8), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected m,n; got {s:?}"));
    }
    let parse = |p: &str| -> Result<u8, String> {
        let v: u8 = p
            .trim()
            .parse()
            .map_err(|e| format!("bad outcome {p:?}: {e}"))?;
        if v > 3 {
            return Err(format!("outcome {v} out of range 0..=3"));
        }
        Ok(v)
    };
    Ok((parse(parts[0])?, parse(parts[1])?))
}

/// Minimum coefficient norm below which a vector cannot be renormalized.
const RENORM_FLOOR: f64 = 1e-6;
/// Norm deviations up to this are accepted without comment.
const SILENT_RENORM: f64 = 1e-9;

/// Builds protocol parameters from CLI input: exact coefficient vectors
/// pass through, slightly-off ones are renormalized silently, anything
/// else is renormalized with a warning, and near-zero vectors are
/// rejected.
fn build_params(coeffs: [f64; 4], phases: [f64; 3], degrees: bool) -> Result<TargetParams> {
    if coeffs.iter().any(|x| !x.is_finite()) || phases.iter().any(|x| !x.is_finite()) {
        bail!("coefficients and phases must be finite");
    }
    let sum_sq: f64 = coeffs.iter().map(|x| x * x).sum();
    let norm = sum_sq.sqrt();
    if norm < RENORM_FLOOR {
        bail!("coefficients {coeffs:?} are not normalizable (norm {norm:.3e})");
    }
    if (sum_sq - 1.0).abs() > SILENT_RENORM {
        let scaled = coeffs.map(|x| x / norm);
        eprintln!(
            "warning: coefficients renormalized from {coeffs:?} to {scaled:?} (squared sum was {sum_sq})"
        );
    }
    let theta = if degrees {
        phases.map(f64::to_radians)
    } else {
        phases
    };
    TargetParams::new(
        coeffs[0] / norm,
        coeffs[1] / norm,
        coeffs[2] / norm,
        coeffs[3] / norm,
        theta,
    )
    .map_err(|e| anyhow!("invalid parameters: {e}"))
}

/// Flag > env `JRSP_TOL` > built-in default.
fn effective_tolerance(flag: Option<f64>) -> Result<f64> {
    if let Some(t) = flag {
        if !(t.is_finite() && t > 0.0) {
            bail!("--tolerance must be a positive number, got {t}");
        }
        return Ok(t);
    }
    if let Ok(raw) = std::env::var("JRSP_TOL") {
        let t: f64 = raw
            .parse()
            .with_context(|| format!("JRSP_TOL={raw:?} is not a number"))?;
        if !(t.is_finite() && t > 0.0) {
            bail!("JRSP_TOL must be a positive number, got {raw:?}");
        }
        return Ok(t);
    }
    Ok(jrsp_core::FIDELITY_TOL)
}

fn try_main() -> Result<u8> {
    match Cli::parse().command {
        Command::Run(args) => commands::cmd_run(args),
        Command::Verify(args) => commands::cmd_verify(args),
        Command::Bases(args) => commands::cmd_bases(args),
        Command::Resources(args) => commands::cmd_resources(args),
    }
}

fn main() -> ExitCode {
    match try_main() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
