use std::f64::consts::PI;
use std::io::Write;

use clap::{Args, ValueEnum};
use heun::equation::{apply_rule, residual, residual_scale};
use heun::integral::{
    appendix_integral, verify_adjoint, verify_transform, whittaker_a2_rhs, AppendixIntegral, KernelSpec,
};
use heun::solutions::{
    build_pair_coulomb, build_pair_coulomb_nu, build_pair_power, proportionality, r3_family, solve_b3, solve_nu,
};
use heun::{Complex, DcheParams, Rule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, EXIT_INTERNAL};
use crate::output::{num, Record, Report};
use crate::{check_tol, Common};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rules,
    Kernels,
    Integrals,
    Pairs,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Rules => "rules",
            Suite::Kernels => "kernels",
            Suite::Integrals => "integrals",
            Suite::Pairs => "pairs",
        }
    }

    fn default_tol(self) -> f64 {
        match self {
            Suite::Rules | Suite::Integrals => 1e-8,
            Suite::Kernels | Suite::Pairs => 1e-6,
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance of the suite's main checks
    #[arg(long)]
    tol: Option<f64>,
    /// Random draws per randomized check
    #[arg(long, default_value_t = 10)]
    draws: usize,
    /// Add this to the exponent of every kernel (negative control)
    #[arg(long, allow_hyphen_values = true)]
    corrupt_kernel: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Serialize)]
pub struct CheckRecord {
    check: String,
    value: f64,
    tol: f64,
    pass: bool,
}

impl Record for CheckRecord {
    fn header() -> &'static [&'static str] {
        &["check", "value", "tol", "pass"]
    }

    fn row(&self) -> Vec<String> {
        vec![self.check.clone(), num(self.value), num(self.tol), self.pass.to_string()]
    }
}

struct Checks(Vec<CheckRecord>);

impl Checks {
    /// Passes when value < tol.
    fn below(&mut self, check: String, value: f64, tol: f64) {
        self.0.push(CheckRecord {
            check,
            value,
            tol,
            pass: value < tol,
        });
    }

    /// Passes when value > tol (an expected failure).
    fn above(&mut self, check: String, value: f64, tol: f64) {
        self.0.push(CheckRecord {
            check,
            value,
            tol,
            pass: value > tol,
        });
    }

    fn flag(&mut self, check: String, ok: bool) {
        self.0.push(CheckRecord {
            check,
            value: if ok { 1.0 } else { 0.0 },
            tol: 1.0,
            pass: ok,
        });
    }
}

fn cx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn rand_c(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> Complex {
    cx(rng.random_range(re.0..re.1), rng.random_range(im.0..im.1))
}

fn polar(rng: &mut ChaCha8Rng, r: (f64, f64)) -> Complex {
    Complex::from_polar(rng.random_range(r.0..r.1), rng.random_range(-PI..PI))
}

fn random_params(rng: &mut ChaCha8Rng) -> DcheParams {
    DcheParams::unchecked(
        polar(rng, (0.5, 2.0)),
        rand_c(rng, (0.2, 3.5), (-0.3, 0.3)),
        rand_c(rng, (-1.0, 1.0), (-0.5, 0.5)),
        polar(rng, (0.5, 1.5)),
        rand_c(rng, (-0.6, 0.6), (-0.6, 0.6)),
    )
}

fn param_distance(a: &DcheParams, b: &DcheParams) -> f64 {
    let d = |x: Complex, y: Complex| (x - y).norm() / (1.0 + x.norm().max(y.norm()));
    d(a.b1, b.b1).max(d(a.b2, b.b2)).max(d(a.b3, b.b3)).max(d(a.omega, b.omega)).max(d(a.eta, b.eta))
}

fn rules(rng: &mut ChaCha8Rng, draws: usize, tol: f64, c: &mut Checks) {
    let ulp = 4.0 * f64::EPSILON;
    for k in 0..draws {
        let p = random_params(rng);
        for (rule, name) in [(Rule::R2, "r2"), (Rule::R3, "r3")] {
            let back = apply_rule(rule, &apply_rule(rule, &p).0).0;
            c.below(format!("{name}_involution[{k}]"), param_distance(&back, &p), ulp);
        }
        for (rule, name) in [(Rule::R1, "r1"), (Rule::R2, "r2"), (Rule::R3, "r3")] {
            let (q, gauge) = apply_rule(rule, &p);
            let worst = solve_nu(1, &q, None)
                .and_then(|nu| build_pair_coulomb_nu(1, &q, nu.root, 80))
                .and_then(|(u, _)| {
                    let mut worst = 0.0f64;
                    for z in [cx(0.9, 0.4), cx(1.4, -0.3), cx(0.6, 0.1)] {
                        if !u.sector_warnings(gauge.map_point(z)).is_empty() {
                            continue;
                        }
                        let j = gauge.apply(|w| Ok(u.evaluate(w)?.jet), z)?;
                        worst = worst.max(residual(&p, j, z)?.norm() / residual_scale(&p, j, z));
                    }
                    Ok(worst)
                });
            // parameter draws where no phase parameter is found are skipped
            if let Ok(w) = worst {
                c.below(format!("{name}_covariance[{k}]"), w, tol);
            }
        }
    }
    let fixed = DcheParams::unchecked(cx(2.0, 0.0), cx(2.0, 0.0), cx(5.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0));
    c.below("r1_fixed_point".into(), param_distance(&apply_rule(Rule::R1, &fixed).0, &fixed), ulp);
}

fn kernels(corrupt: Option<f64>, tol: f64, c: &mut Checks) {
    let delta = cx(corrupt.unwrap_or(0.0), 0.0);
    for pid in 1..=8u8 {
        let base = if pid > 4 { pid - 4 } else { pid };
        let odd = base % 2 == 1;
        let g = DcheParams::unchecked(cx(1.3, 0.2), cx(if odd { 3.1 } else { 0.6 }, 0.0), cx(0.4, 0.0), cx(0.8, 0.1), cx(0.3, 0.2));
        let built = solve_b3(pid, &g, None).and_then(|(q, _)| {
            let pair = if pid <= 4 { build_pair_power(pid, &q, 80)? } else { r3_family(base, &q, 80)? };
            Ok((q, pair))
        });
        let Ok((q, (ui, u0))) = built else {
            c.flag(format!("pair{pid}_setup"), false);
            continue;
        };
        let spec = KernelSpec::for_pair(pid, q).expect("pair id in range").with_perturbation(delta);
        let s = if odd { 1.0 } else { -1.0 };
        let zs: Vec<Complex> = [0.6, 1.0, 1.7].iter().map(|&r| s * cx(r, 0.15 * r)).collect();
        let dev = verify_transform(&ui, &u0, &spec, &zs).map_or(f64::INFINITY, |r| r.max_deviation);
        c.below(format!("pair{pid}_transform"), dev, tol);
        let grid = [(cx(0.9, 0.3), cx(2.1, -0.7)), (cx(1.4, -0.2), cx(-0.8, 1.5))];
        let adj = verify_adjoint(&spec, &grid).map_or(f64::INFINITY, |r| r.max_defect);
        c.below(format!("pair{pid}_adjoint"), adj, 1e-8);
        if pid == 1 {
            let bad_z = verify_transform(&ui, &u0, &spec, &[-zs[1]]).is_err();
            c.flag("pair1_rejects_wrong_half_plane".into(), bad_z);
        }
    }
    // exponent condition violated: B2 = 0.6 on a pair-1 kernel
    let g = DcheParams::unchecked(cx(1.3, 0.2), cx(0.6, 0.0), cx(0.4, 0.0), cx(0.8, 0.1), cx(0.3, 0.2));
    let rejected = solve_b3(1, &g, None)
        .and_then(|(q, _)| {
            let (ui, u0) = build_pair_power(1, &q, 80)?;
            Ok(verify_transform(&ui, &u0, &KernelSpec::for_pair(1, q)?, &[cx(1.0, 0.15)]).is_err())
        })
        .unwrap_or(false);
    c.flag("pair1_rejects_exponent_condition".into(), rejected);
}

fn integrals(rng: &mut ChaCha8Rng, draws: usize, tol: f64, c: &mut Checks) {
    for k in 0..draws {
        let a1 = AppendixIntegral::A1 {
            alpha: rand_c(rng, (0.3, 3.0), (-1.0, 1.0)),
            beta: rand_c(rng, (-2.0, 3.0), (-1.0, 1.0)),
            y: rand_c(rng, (0.3, 4.0), (-2.0, 2.0)),
        };
        let (kappa, lambda, mu, a) = (
            rand_c(rng, (-1.0, 1.0), (-0.5, 0.5)),
            rand_c(rng, (-0.3, 0.3), (-0.5, 0.5)),
            rand_c(rng, (0.3, 2.5), (-0.5, 0.5)),
            rand_c(rng, (0.5, 3.0), (-1.0, 1.0)),
        );
        let a2 = AppendixIntegral::A2 { kappa, lambda, mu, a };
        let a3 = AppendixIntegral::A3 { kappa, lambda, mu, a };
        for (name, which) in [("a1", a1), ("a2", a2), ("a3", a3)] {
            let e = appendix_integral(which).map_or(f64::INFINITY, |r| r.relative_error);
            c.below(format!("{name}[{k}]"), e, tol);
        }
        if let Ok(r) = appendix_integral(a2) {
            let exact = r.quadrature;
            let rel = |v: heun::Result<Complex>| v.map_or(f64::INFINITY, |v| (v - exact).norm() / exact.norm());
            c.below(format!("a2_whittaker[{k}]"), rel(whittaker_a2_rhs(kappa, lambda, mu, a, lambda + mu / 2.0)), tol);
            c.above(
                format!("a2_misprint_rejected[{k}]"),
                rel(whittaker_a2_rhs(kappa, lambda, mu, a, lambda - mu / 2.0)),
                tol,
            );
        }
    }
}

fn pairs(rng: &mut ChaCha8Rng, draws: usize, tol: f64, c: &mut Checks) {
    for pid in 1..=4u8 {
        let mut done = 0;
        let mut attempts = 0;
        while done < draws && attempts < 10 * draws {
            attempts += 1;
            let g = random_params(rng);
            let Ok((q, _)) = solve_b3(pid, &g, None) else { continue };
            let (Ok(power), Ok(coul)) = (build_pair_power(pid, &q, 150), build_pair_coulomb(pid, &q, 150)) else {
                continue;
            };
            let all = [&power.0, &power.1, &coul.0, &coul.1];
            let zs: Vec<Complex> = (0..40)
                .map(|_| polar(rng, (0.4, 2.5)))
                .filter(|&z| all.iter().all(|u| u.sector_warnings(z).is_empty()))
                .take(6)
                .collect();
            if zs.len() < 3 {
                continue;
            }
            for (name, a, b) in [("inf", &power.0, &coul.0), ("zero", &power.1, &coul.1)] {
                let v: heun::Result<Vec<_>> = zs.iter().map(|&z| Ok((a.value(z)?, b.value(z)?))).collect();
                let dev = v.and_then(|v| proportionality(&v)).map_or(f64::INFINITY, |r| r.max_deviation);
                c.below(format!("pair{pid}_{name}_proportional[{done}]"), dev, tol);
            }
            let res = all
                .iter()
                .flat_map(|u| zs.iter().map(move |&z| u.residual(z).map_or(f64::INFINITY, |r| r.relative)))
                .fold(0.0, f64::max);
            c.below(format!("pair{pid}_residual[{done}]"), res, 1e-8);
            done += 1;
        }
    }
}

pub fn run(a: VerifyArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let tol = check_tol(a.tol.unwrap_or(a.suite.default_tol()))?;
    if a.draws == 0 {
        return Err(CliError::usage("--draws must be positive"));
    }
    if a.corrupt_kernel.is_some() && a.suite != Suite::Kernels {
        return Err(CliError::usage("--corrupt-kernel applies to the kernels suite"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut c = Checks(Vec::new());
    match a.suite {
        Suite::Rules => rules(&mut rng, a.draws, tol, &mut c),
        Suite::Kernels => kernels(a.corrupt_kernel, tol, &mut c),
        Suite::Integrals => integrals(&mut rng, a.draws, tol, &mut c),
        Suite::Pairs => pairs(&mut rng, a.draws, tol, &mut c),
    }
    let failures = c.0.iter().filter(|r| !r.pass).count();
    let report = Report {
        command: "verify",
        config: json!({
            "suite": a.suite.name(),
            "seed": a.seed,
            "tol": tol,
            "draws": a.draws,
            "corrupt_kernel": a.corrupt_kernel,
        }),
        meta: json!({
            "passed": failures == 0,
            "checks": c.0.len(),
            "failures": failures,
        }),
        records: c.0,
    };
    report.write(a.common.format, out)?;
    Ok(if failures == 0 { 0 } else { EXIT_INTERNAL })
}
