use std::io::Write;

use clap::{Args, ValueEnum};
use heun::qes::{infinite_spectrum, qes_spectrum, QesProblem, SpectrumMethod};
use heun::HeunError;
use serde::Serialize;
use serde_json::json;

use crate::error::CliError;
use crate::output::{num, opt_num, Record, Report};
use crate::Common;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Potential {
    DoubleMorse,
    SecondType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Finite tridiagonal matrix (quasi-exactly solvable levels only)
    Tridiag,
    /// Characteristic equation scanned over a bracket
    Cf,
}

#[derive(Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    potential: Potential,
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, value_enum, default_value = "tridiag")]
    method: Method,
    /// Energy window lo,hi for the cf method
    #[arg(long, allow_hyphen_values = true, default_value = "-10,10")]
    bracket: String,
    /// Maximum number of levels for the cf method
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Serialize)]
pub struct LevelRecord {
    index: usize,
    energy: f64,
    imag: f64,
    residual: f64,
    mismatch: Option<f64>,
}

impl Record for LevelRecord {
    fn header() -> &'static [&'static str] {
        &["index", "energy", "imag", "residual", "mismatch"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            format!("{}", self.energy),
            num(self.imag),
            num(self.residual),
            opt_num(self.mismatch),
        ]
    }
}

fn bracket(s: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let parsed: Option<Vec<f64>> = parts.iter().map(|p| p.parse::<f64>().ok().filter(|v| v.is_finite())).collect();
    match parsed.as_deref() {
        Some(&[lo, hi]) if lo < hi => Ok((lo, hi)),
        _ => Err(CliError::usage(format!("--bracket needs lo,hi with lo < hi, got '{s}'"))),
    }
}

pub fn run(a: SpectrumArgs, out: &mut impl Write) -> Result<(), CliError> {
    let problem = match a.potential {
        Potential::DoubleMorse => QesProblem::double_morse(a.b, a.c, a.s)?,
        Potential::SecondType => QesProblem::second_type(a.b, a.s)?,
    };
    let window = bracket(&a.bracket)?;
    let result = match a.method {
        Method::Tridiag => Some(qes_spectrum(&problem)?),
        Method::Cf => match infinite_spectrum(&problem, window, a.count) {
            Ok(r) => Some(r),
            Err(HeunError::NoRoots { .. }) => None,
            Err(e) => return Err(e.into()),
        },
    };
    let records = result
        .iter()
        .flat_map(|r| r.certificates.iter().enumerate())
        .map(|(index, c)| LevelRecord {
            index,
            energy: c.energy,
            imag: c.imag,
            residual: c.residual,
            mismatch: c.mismatch,
        })
        .collect();
    let method = result.as_ref().map(|r| match r.method {
        SpectrumMethod::Tridiagonal => "tridiagonal",
        SpectrumMethod::ContinuedFraction => "continued_fraction",
        SpectrumMethod::Matching => "matching",
    });
    let report = Report {
        command: "spectrum",
        config: json!({
            "potential": match a.potential { Potential::DoubleMorse => "double-morse", Potential::SecondType => "second-type" },
            "b": a.b,
            "c": a.c,
            "s": a.s,
            "method": match a.method { Method::Tridiag => "tridiag", Method::Cf => "cf" },
            "bracket": [window.0, window.1],
            "count": a.count,
        }),
        meta: json!({
            "method_used": method,
            "certified_real": result.as_ref().map(|r| r.certified_real),
            "off_diagonal_products": result.as_ref().map(|r| r.off_diagonal_products.clone()).unwrap_or_default(),
        }),
        records,
    };
    report.write(a.common.format, out)
}
