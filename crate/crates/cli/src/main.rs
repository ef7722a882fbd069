mod complex;
mod error;
mod eval;
mod output;
mod spectrum;
mod transform;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use heun::DcheParams;

use error::CliError;
use output::Format;

#[derive(Parser)]
#[command(name = "heun", version, about = "Double-confluent Heun equation: series solutions, spectra, checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Common {
    /// Output format
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a solution pair at a list of points
    Eval(eval::EvalArgs),
    /// Energy levels of the double-Morse type potentials
    Spectrum(spectrum::SpectrumArgs),
    /// Run a verification suite
    Verify(verify::VerifyArgs),
    /// Apply a transformation rule to a parameter set
    Transform(transform::TransformArgs),
}

/// "B1,B2,B3,omega,eta"
pub fn parse_params(s: &str) -> Result<DcheParams, CliError> {
    let v = complex::parse_list(s)?;
    if v.len() != 5 {
        return Err(CliError::usage(format!("--params needs B1,B2,B3,omega,eta (got {} values)", v.len())));
    }
    Ok(DcheParams::new(v[0], v[1], v[2], v[3], v[4])?)
}

pub fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(CliError::usage(format!("tolerance must be positive, got {tol}")))
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Eval(a) => eval::run(a, out).map(|_| 0),
        Command::Spectrum(a) => spectrum::run(a, out).map(|_| 0),
        Command::Verify(a) => verify::run(a, out),
        Command::Transform(a) => transform::run(a, out).map(|_| 0),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
