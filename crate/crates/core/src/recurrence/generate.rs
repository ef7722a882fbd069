use serde::{Deserialize, Serialize};

use super::{CoeffSeq, IndexDomain, ThreeTermCoeffs};
use crate::error::{HeunError, Result};
use crate::Complex;

const TINY: f64 = 1e-300;

fn finite_or(v: Complex, n: i64) -> Result<Complex> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(HeunError::Denominator {
            index: n,
            remedy: "perturb the parameters or shift the phase parameter by an integer".into(),
        })
    }
}

/// Forward generation b_0 = 1, b_1, …, b_{n_max}. Exact row by row, but it
/// follows the dominant solution of an infinite recurrence; use
/// [`generate_minimal`] for convergent infinite series.
pub fn generate(coeffs: &ThreeTermCoeffs, n_max: usize) -> Result<CoeffSeq> {
    if coeffs.domain == IndexDomain::TwoSided {
        return Err(HeunError::Domain("forward generation needs a one-sided recurrence".into()));
    }
    let mut b = vec![Complex::new(1.0, 0.0)];
    for n in 0..n_max as i64 {
        let a = finite_or(coeffs.alpha(n), n)?;
        if a.norm() == 0.0 {
            return Err(HeunError::Generation {
                index: n,
                reason: "alpha_n vanishes".into(),
            });
        }
        let beta = finite_or(coeffs.row_beta(n), n)?;
        let prev = if n >= 1 {
            finite_or(coeffs.row_gamma(n), n)? * b[n as usize - 1]
        } else {
            Complex::new(0.0, 0.0)
        };
        b.push(-(beta * b[n as usize] + prev) / a);
    }
    Ok(CoeffSeq {
        n_min: 0,
        values: b,
        finite: None,
    })
}

/// Ratios r_n = b_n/b_{n−1} for n = 1..len−1 of the minimal solution, by
/// backward recurrence from depth `m`.
fn right_ratios(coeffs: &ThreeTermCoeffs, len: usize, m: usize) -> Result<Vec<Complex>> {
    let mut r = vec![Complex::new(0.0, 0.0); len.max(1)];
    let mut next = Complex::new(0.0, 0.0);
    for n in (1..m.max(len) as i64).rev() {
        let g = finite_or(coeffs.row_gamma(n), n)?;
        let mut d = finite_or(coeffs.beta(n), n)? + finite_or(coeffs.alpha(n), n)? * next;
        if d.norm() == 0.0 {
            d = Complex::new(TINY, 0.0);
        }
        next = -g / d;
        if (n as usize) < len {
            r[n as usize] = next;
        }
    }
    Ok(r)
}

/// Ratios L_n = b_n/b_{n+1} for n = −1, −2, …, −(len−1), stored at |n|.
fn left_ratios(coeffs: &ThreeTermCoeffs, len: usize, m: usize) -> Result<Vec<Complex>> {
    let mut l = vec![Complex::new(0.0, 0.0); len.max(1)];
    let mut prev = Complex::new(0.0, 0.0);
    for k in (1..m.max(len) as i64).rev() {
        let n = -k;
        let a = finite_or(coeffs.alpha(n), n)?;
        let mut d = finite_or(coeffs.beta(n), n)? + finite_or(coeffs.gamma(n), n)? * prev;
        if d.norm() == 0.0 {
            d = Complex::new(TINY, 0.0);
        }
        prev = -a / d;
        if (k as usize) < len {
            l[k as usize] = prev;
        }
    }
    Ok(l)
}

fn products(ratios: &[Complex]) -> Vec<Complex> {
    let mut out = Vec::with_capacity(ratios.len());
    let mut acc = Complex::new(1.0, 0.0);
    out.push(acc);
    for r in &ratios[1..] {
        acc *= r;
        out.push(acc);
    }
    out
}

fn max_rel_change(a: &[Complex], b: &[Complex]) -> f64 {
    let scale = a.iter().map(|v| v.norm()).fold(0.0, f64::max).max(TINY);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm() / scale)
        .fold(0.0, f64::max)
}

fn converged_side<F>(len: usize, ratios: F) -> Result<Vec<Complex>>
where
    F: Fn(usize) -> Result<Vec<Complex>>,
{
    let mut m = len + 64 + len / 2;
    let mut current = products(&ratios(m)?);
    loop {
        let m2 = 2 * m;
        let refined = products(&ratios(m2)?);
        if max_rel_change(&current, &refined) < 1e-15 {
            return Ok(refined);
        }
        if m2 > 40_000 {
            return Err(HeunError::Convergence(
                "backward recurrence did not settle; the minimal solution may not exist".into(),
            ));
        }
        current = refined;
        m = m2;
    }
}

/// The minimal solution b_0 = 1, …, b_{len−1} by backward recurrence. All
/// rows n ≥ 1 hold; row 0 holds only when the characteristic equation is
/// satisfied, and its defect is exactly [`super::char_value`].
pub fn generate_minimal(coeffs: &ThreeTermCoeffs, len: usize) -> Result<CoeffSeq> {
    if coeffs.domain == IndexDomain::TwoSided {
        return Err(HeunError::Domain("use generate_minimal_two_sided".into()));
    }
    let values = converged_side(len.max(1), |m| right_ratios(coeffs, len.max(1), m))?;
    Ok(CoeffSeq {
        n_min: 0,
        values,
        finite: None,
    })
}

/// Two-sided minimal solution on [−w, w], starting from `window` and
/// doubling w until both tail coefficients fall below 1e−16 of the largest.
pub fn generate_minimal_two_sided(coeffs: &ThreeTermCoeffs, window: usize) -> Result<CoeffSeq> {
    generate_minimal_two_sided_to(coeffs, window, 1e-16)
}

/// As [`generate_minimal_two_sided`] with a caller-chosen tail threshold.
pub(crate) fn generate_minimal_two_sided_to(coeffs: &ThreeTermCoeffs, window: usize, tail_tol: f64) -> Result<CoeffSeq> {
    let mut w = window.max(4);
    loop {
        let right = converged_side(w + 1, |m| right_ratios(coeffs, w + 1, m))?;
        let left = converged_side(w + 1, |m| left_ratios(coeffs, w + 1, m))?;
        let mut values: Vec<Complex> = left.iter().skip(1).rev().copied().collect();
        values.extend(right.iter().copied());
        let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let tail = values[0].norm().max(values[values.len() - 1].norm());
        if tail <= tail_tol * peak || w >= 2048 {
            return Ok(CoeffSeq {
                n_min: -(w as i64),
                values,
                finite: None,
            });
        }
        w *= 2;
    }
}

/// Relative residual of every complete row covered by `seq`.
pub fn row_residuals(coeffs: &ThreeTermCoeffs, seq: &CoeffSeq) -> Vec<(i64, f64)> {
    let one_sided = coeffs.domain == IndexDomain::OneSided;
    let lo = if one_sided { 0 } else { seq.n_min + 1 };
    let hi = seq.n_max() - 1;
    (lo..=hi)
        .map(|n| {
            let (beta, gamma) = if one_sided {
                (coeffs.row_beta(n), coeffs.row_gamma(n))
            } else {
                (coeffs.beta(n), coeffs.gamma(n))
            };
            let t1 = coeffs.alpha(n) * seq.get(n + 1);
            let t2 = beta * seq.get(n);
            let t3 = if one_sided && n == 0 { Complex::new(0.0, 0.0) } else { gamma * seq.get(n - 1) };
            let scale = t1.norm() + t2.norm() + t3.norm();
            let r = if scale == 0.0 { 0.0 } else { (t1 + t2 + t3).norm() / scale };
            (n, r)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimalRatioReport {
    pub skipped: bool,
    pub n: usize,
    /// b_{n+1}/b_n
    pub observed: Complex,
    /// −γ_{n+1}/β_{n+1}, the minimal-solution asymptote
    pub predicted: Complex,
    /// n · b_{n+1}/b_n
    pub fitted_constant: Complex,
    pub pass: bool,
}

/// Checks that `seq` follows the minimal rather than the dominant solution.
pub fn minimal_ratio_check(coeffs: &ThreeTermCoeffs, seq: &CoeffSeq) -> MinimalRatioReport {
    let zero = Complex::new(0.0, 0.0);
    let len = (seq.n_max() + 1).max(0) as usize;
    if seq.finite.is_some() || len < 3 {
        return MinimalRatioReport {
            skipped: true,
            n: 0,
            observed: zero,
            predicted: zero,
            fitted_constant: zero,
            pass: true,
        };
    }
    let n = 50.min(len - 2);
    let bn = seq.get(n as i64);
    let observed = if bn.norm() == 0.0 { zero } else { seq.get(n as i64 + 1) / bn };
    let k = n as i64 + 1;
    let predicted = -coeffs.gamma(k) / coeffs.beta(k);
    let pass = predicted.norm() > 0.0 && ((observed - predicted).norm() / predicted.norm()) < 0.2;
    MinimalRatioReport {
        skipped: false,
        n,
        observed,
        predicted,
        fitted_constant: observed * n as f64,
        pass,
    }
}
