use serde::{Deserialize, Serialize};

use super::{IndexDomain, ThreeTermCoeffs};
use crate::error::{HeunError, Result};
use crate::Complex;

const TINY: f64 = 1e-30;

/// b0 + a1/(b1 + a2/(b2 + …)) by the modified Lentz algorithm.
fn lentz<F>(b0: Complex, term: F, depth: usize, tol: f64) -> Result<Complex>
where
    F: Fn(usize) -> (Complex, Complex),
{
    let tiny = Complex::new(TINY, 0.0);
    let mut f = if b0.norm() == 0.0 { tiny } else { b0 };
    let mut c = f;
    let mut d = Complex::new(0.0, 0.0);
    for k in 1..=depth {
        let (a, b) = term(k);
        if !(a.is_finite() && b.is_finite()) {
            return Err(HeunError::Denominator {
                index: k as i64,
                remedy: "perturb the parameters".into(),
            });
        }
        d = b + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        if !delta.is_finite() {
            return Err(HeunError::CfBreakdown(k));
        }
        f *= delta;
        if (delta - 1.0).norm() < tol {
            break;
        }
    }
    if !f.is_finite() {
        return Err(HeunError::CfBreakdown(depth));
    }
    Ok(f)
}

/// Characteristic function of the recurrence. One-sided: β_0 minus
/// α_0γ_1/(β_1 − α_1γ_2/(β_2 − …)) with the form-specific first rows;
/// two-sided: β_0 minus the right and the left continued fractions.
/// A zero of this function is the condition for a minimal solution.
pub fn char_value(coeffs: &ThreeTermCoeffs, depth: usize, tol: f64) -> Result<Complex> {
    if depth == 0 {
        return Err(HeunError::Domain("continued fraction depth must be at least 1".into()));
    }
    let zero = Complex::new(0.0, 0.0);
    match coeffs.domain {
        IndexDomain::OneSided => lentz(
            coeffs.row_beta(0),
            |k| {
                let k = k as i64;
                (-coeffs.alpha(k - 1) * coeffs.row_gamma(k), coeffs.beta(k))
            },
            depth,
            tol,
        ),
        IndexDomain::TwoSided => {
            let right = lentz(
                zero,
                |k| {
                    let k = k as i64;
                    (-coeffs.alpha(k - 1) * coeffs.gamma(k), coeffs.beta(k))
                },
                depth,
                tol,
            )?;
            let left = lentz(
                zero,
                |k| {
                    let k = k as i64;
                    (-coeffs.gamma(1 - k) * coeffs.alpha(-k), coeffs.beta(-k))
                },
                depth,
                tol,
            )?;
            Ok(coeffs.beta(0) + right + left)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootOptions {
    /// Acceptance threshold on |char_value| relative to max(1, |β_0|).
    pub tol: f64,
    pub depth: usize,
    pub cf_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-12,
            depth: 5000,
            cf_tol: 1e-16,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharRoot {
    pub root: Complex,
    pub residual: f64,
    pub iterations: usize,
}

/// Solves char_value(family(x)) = 0 for x by the secant method started
/// from `guess` and a small complex offset.
pub fn char_root<F>(family: F, guess: Complex, opts: RootOptions) -> Result<CharRoot>
where
    F: Fn(Complex) -> Result<ThreeTermCoeffs>,
{
    let eval = |x: Complex| -> Result<(Complex, f64)> {
        let c = family(x)?;
        let v = char_value(&c, opts.depth, opts.cf_tol)?;
        Ok((v, c.row_beta(0).norm().max(1.0)))
    };
    let mut x0 = guess;
    let (mut f0, s0) = eval(x0)?;
    if f0.norm() <= opts.tol * s0 {
        return Ok(CharRoot {
            root: x0,
            residual: f0.norm(),
            iterations: 0,
        });
    }
    let step = 1e-4 * guess.norm().max(1.0);
    let mut x1 = guess + Complex::from_polar(step, 0.3);
    let (mut f1, mut s1) = eval(x1)?;
    for it in 1..=opts.max_iter {
        if f1.norm() <= opts.tol * s1 {
            return Ok(CharRoot {
                root: x1,
                residual: f1.norm(),
                iterations: it,
            });
        }
        let denom = f1 - f0;
        if denom.norm() == 0.0 {
            break;
        }
        let mut dx = -f1 * (x1 - x0) / denom;
        let cap = 10.0 * (1.0 + x1.norm());
        if dx.norm() > cap {
            dx *= cap / dx.norm();
        }
        if dx.norm() <= 1e-16 * x1.norm().max(1.0) {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 += dx;
        (f1, s1) = eval(x1)?;
    }
    if f1.norm() <= opts.tol * s1 {
        return Ok(CharRoot {
            root: x1,
            residual: f1.norm(),
            iterations: opts.max_iter,
        });
    }
    Err(HeunError::NoConvergence {
        iterations: opts.max_iter,
        residual: f1.norm(),
    })
}
