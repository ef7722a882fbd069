use std::io::Write;

use clap::{Args, ValueEnum};
use heun::solutions::{
    build_pair_coulomb, build_pair_coulomb_nu, build_pair_power, r3_family, solve_b3, solve_b3_coulomb, solve_nu,
    SectorWarning,
};
use heun::{Complex, DcheSolution};
use serde::Serialize;
use serde_json::json;

use crate::complex::{format as fc, parse as parse_c, parse_list};
use crate::error::CliError;
use crate::output::{num, Record, Report};
use crate::{parse_params, Common};

/// Coefficient window of the two-sided expansions.
const NU_WINDOW: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// Power-series pairs 1..8
    Power,
    /// One-sided Coulomb-wave pairs 1..4
    Coulomb,
    /// Two-sided Coulomb-wave pairs 1..2 with phase parameter
    CoulombNu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Inf,
    Zero,
}

#[derive(Args)]
pub struct EvalArgs {
    /// B1,B2,B3,omega,eta as complex literals
    #[arg(long, allow_hyphen_values = true)]
    params: String,
    #[arg(long, value_enum, default_value = "power")]
    family: FamilyArg,
    #[arg(long, default_value_t = 1)]
    pair: u8,
    /// Member to evaluate; both when omitted
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Comma-separated evaluation points
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Number of series coefficients
    #[arg(long, default_value_t = 150)]
    terms: usize,
    /// Solve the characteristic equation for B3, starting from the given B3
    #[arg(long)]
    solve_b3: bool,
    /// Phase parameter for the two-sided pairs; solved for when omitted
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Serialize)]
pub struct EvalRecord {
    member: &'static str,
    z: String,
    value: String,
    derivative: String,
    second_derivative: String,
    residual: f64,
    terms: usize,
    warnings: Vec<String>,
}

impl Record for EvalRecord {
    fn header() -> &'static [&'static str] {
        &["member", "z", "value", "derivative", "second_derivative", "residual", "terms", "warnings"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.member.into(),
            self.z.clone(),
            self.value.clone(),
            self.derivative.clone(),
            self.second_derivative.clone(),
            num(self.residual),
            self.terms.to_string(),
            self.warnings.join(";"),
        ]
    }
}

fn warnings(u: &DcheSolution, z: Complex) -> Vec<String> {
    let mut out: Vec<String> = u
        .sector_warnings(z)
        .iter()
        .map(|w| match w {
            SectorWarning::OutsideSector { arg } => format!("outside_sector(arg={arg:.6})"),
            SectorWarning::PrincipalBranch { arg } => format!("principal_branch(arg={arg:.6})"),
        })
        .collect();
    // the member keeps its asymptotic form only where the exponent decays
    let s = &u.sector;
    let w = if s.inverse { s.k / z } else { s.k * z };
    if w.re < 0.0 {
        out.push(format!("half_plane(re={:.6})", w.re));
    }
    out
}

pub fn run(a: EvalArgs, out: &mut impl Write) -> Result<(), CliError> {
    let mut p = parse_params(&a.params)?;
    let zs = parse_list(&a.z)?;
    if a.terms == 0 {
        return Err(CliError::usage("--terms must be positive"));
    }
    let mut nu = None;
    let pair = match a.family {
        FamilyArg::Power => {
            if !(1..=8).contains(&a.pair) {
                return Err(CliError::usage(format!("power-series pairs are 1..8, got {}", a.pair)));
            }
            if a.solve_b3 {
                p = solve_b3(a.pair, &p, Some(p.b3))?.0;
            }
            if a.pair <= 4 {
                build_pair_power(a.pair, &p, a.terms)?
            } else {
                r3_family(a.pair - 4, &p, a.terms)?
            }
        }
        FamilyArg::Coulomb => {
            if !(1..=4).contains(&a.pair) {
                return Err(CliError::usage(format!("one-sided Coulomb pairs are 1..4, got {}", a.pair)));
            }
            if a.solve_b3 {
                p = solve_b3_coulomb(a.pair, &p, Some(p.b3))?.0;
            }
            build_pair_coulomb(a.pair, &p, a.terms)?
        }
        FamilyArg::CoulombNu => {
            if !(1..=2).contains(&a.pair) {
                return Err(CliError::usage(format!("two-sided Coulomb pairs are 1..2, got {}", a.pair)));
            }
            let v = match &a.nu {
                Some(s) => parse_c(s)?,
                None => solve_nu(a.pair, &p, None)?.root,
            };
            nu = Some(v);
            build_pair_coulomb_nu(a.pair, &p, v, NU_WINDOW)?
        }
    };
    let members: Vec<(&'static str, &DcheSolution)> = match a.variant {
        Some(VariantArg::Inf) => vec![("inf", &pair.0)],
        Some(VariantArg::Zero) => vec![("zero", &pair.1)],
        None => vec![("inf", &pair.0), ("zero", &pair.1)],
    };
    let mut records = Vec::new();
    for &z in &zs {
        for &(name, u) in &members {
            let ev = u.evaluate(z)?;
            records.push(EvalRecord {
                member: name,
                z: fc(z),
                value: fc(ev.jet.v),
                derivative: fc(ev.jet.d1),
                second_derivative: fc(ev.jet.d2),
                residual: u.residual(z)?.relative,
                terms: ev.terms,
                warnings: warnings(u, z),
            });
        }
    }
    let report = Report {
        command: "eval",
        config: json!({
            "family": a.family.to_possible_value().map(|v| v.get_name().to_string()),
            "pair": a.pair,
            "terms": a.terms,
            "params": [fc(p.b1), fc(p.b2), fc(p.b3), fc(p.omega), fc(p.eta)],
        }),
        meta: json!({
            "nu": nu.map(fc),
            "finite_terms": pair.0.coeffs.finite,
            "char_defect": pair.0.char_defect,
        }),
        records,
    };
    report.write(a.common.format, out)
}
