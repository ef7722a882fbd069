//! Tricomi confluent hypergeometric function U(a, b, z), principal branch.
//!
//! Strategy, in order: polynomial cases, the large-argument asymptotic
//! series when it converges to full precision, Kummer's transformation to
//! raise Re a, then the Laplace integral along a rotated ray for Re a >= 1.
//! Smaller Re a is reached by the backward recurrence in a, in which U is the
//! minimal solution.

use std::f64::consts::{FRAC_PI_4, PI};

use super::gamma::{ln_gamma, nonpositive_integer};
use super::laguerre::laguerre;
use crate::error::{HeunError, Result};
use crate::jet::Jet;
use crate::quadrature::{integrate_half_line, DeOptions};
use crate::Complex;

const INT_TOL: f64 = 1e-12;

fn factorial(l: usize) -> f64 {
    (1..=l).map(|k| k as f64).product()
}

fn polynomial_case(a: Complex, b: Complex, z: Complex) -> Option<Complex> {
    if let Some(l) = nonpositive_integer(a, INT_TOL) {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        return Some(sign * factorial(l) * laguerre(l, b - 1.0, z));
    }
    if let Some(l) = nonpositive_integer(1.0 + a - b, INT_TOL) {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        return Some(z.powc(1.0 - b) * sign * factorial(l) * laguerre(l, 1.0 - b, z));
    }
    None
}

/// Asymptotic series z^{-a} Σ (a)_k (a-b+1)_k / k! (-z)^{-k}; returns `None`
/// unless the smallest term falls below full precision.
fn asymptotic(a: Complex, b: Complex, z: Complex) -> Option<Complex> {
    if z.norm() < 4.0 {
        return None;
    }
    let c = a - b + 1.0;
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = term;
    let mut last = 1.0f64;
    for k in 1..400 {
        let kf = k as f64;
        term *= (a + kf - 1.0) * (c + kf - 1.0) / (-kf * z);
        let mag = term.norm();
        if mag > last && k > 2 {
            return None;
        }
        sum += term;
        if mag <= 1e-17 * sum.norm() {
            return Some(z.powc(-a) * sum);
        }
        last = mag;
    }
    None
}

fn ln_1p(w: Complex) -> Complex {
    if w.norm() < 1e-4 {
        w - w * w / 2.0 + w * w * w / 3.0 - w * w * w * w / 4.0
    } else {
        (1.0 + w).ln()
    }
}

/// Laplace integral U = 1/Γ(a) ∫_0^{∞ e^{iθ}} e^{-zt} t^{a-1} (1+t)^{b-a-1} dt,
/// requiring Re a >= 1 so the endpoint at 0 is benign.
fn laplace_integral(a: Complex, b: Complex, z: Complex) -> Result<Complex> {
    let phi = z.arg();
    // a ray close to t = −1 is harmless only when (1+t)^{b−a−1} vanishes there
    let max_turn = if (b - a - 1.0).re >= 0.0 { PI - 0.1 } else { 3.0 * FRAC_PI_4 };
    let theta = -phi.signum() * phi.abs().min(max_turn);
    let rot = Complex::from_polar(1.0, theta);
    let zeta = z * rot;
    let r = zeta.norm();
    let zhat = zeta / r;
    let c = b - a - 1.0;
    let shift = Complex::new(0.0, theta) * a - a * r.ln() - ln_gamma(a)?;
    let w = rot / r;
    let f = |y: f64, ln_y: f64| {
        let e = -zhat * y + (a - 1.0) * ln_y + c * ln_1p(w * y) + shift;
        if e.re < -745.0 {
            Complex::new(0.0, 0.0)
        } else {
            e.exp()
        }
    };
    match integrate_half_line(&f, DeOptions::default()) {
        Ok(res) => Ok(res.value),
        Err(_) => {
            let fine = DeOptions {
                max_levels: 12,
                rel_tol: 1e-11,
                ..DeOptions::default()
            };
            Ok(integrate_half_line(&f, fine)?.value)
        }
    }
}

fn hyp_u_raw(a: Complex, b: Complex, z: Complex, allow_kummer: bool) -> Result<Complex> {
    if let Some(v) = polynomial_case(a, b, z) {
        return Ok(v);
    }
    if let Some(v) = asymptotic(a, b, z) {
        return Ok(v);
    }
    let a2 = 1.0 + a - b;
    if allow_kummer && a.re < 1.0 && a2.re > a.re {
        return Ok(z.powc(1.0 - b) * hyp_u_raw(a2, 2.0 - b, z, false)?);
    }
    if a.re >= 1.0 {
        return laplace_integral(a, b, z);
    }
    // backward recurrence in a from a+m, a+m+1
    let m = (1.0 - a.re).ceil() as usize;
    let top = a + m as f64;
    let mut upper = laplace_integral(top + 1.0, b, z)?;
    let mut cur = laplace_integral(top, b, z)?;
    for k in (1..=m).rev() {
        let ak = a + k as f64;
        let prev = -(b - 2.0 * ak - z) * cur - ak * (ak - b + 1.0) * upper;
        upper = cur;
        cur = prev;
    }
    Ok(cur)
}

fn check_args(a: Complex, b: Complex, z: Complex) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(HeunError::Domain("non-finite argument to U".into()));
    }
    if z.norm() == 0.0 {
        return Err(HeunError::Domain("U(a,b,z) requires z != 0".into()));
    }
    Ok(())
}

/// Tricomi U(a, b, z) on the principal branch -π < arg z <= π.
pub fn hyp_u(a: Complex, b: Complex, z: Complex) -> Result<Complex> {
    check_args(a, b, z)?;
    let v = hyp_u_raw(a, b, z, true)?;
    if !v.is_finite() {
        return Err(HeunError::Convergence(format!("U({a}, {b}, {z}) overflowed")));
    }
    Ok(v)
}

/// U together with its first two z-derivatives.
pub fn hyp_u_jet(a: Complex, b: Complex, z: Complex) -> Result<Jet> {
    let u0 = hyp_u(a, b, z)?;
    let u1 = -a * hyp_u(a + 1.0, b + 1.0, z)?;
    let u2 = ((z - b) * u1 + a * u0) / z;
    Ok(Jet::new(u0, u1, u2))
}

/// The sequence f_n = U(a+n, b+n, z) for n = 0..len, used by the descending
/// hypergeometric series. The forward recurrence
/// z (a+n+1) f_{n+2} = (b+n-z) f_{n+1} + f_n
/// is used only where it is stable (n beyond |z|).
pub fn hyp_u_diagonal(a: Complex, b: Complex, z: Complex, len: usize) -> Result<Vec<Complex>> {
    check_args(a, b, z)?;
    let direct = (z.norm().ceil() as usize + 2).min(len);
    let mut out = Vec::with_capacity(len);
    for n in 0..direct {
        out.push(hyp_u(a + n as f64, b + n as f64, z)?);
    }
    while out.len() < len {
        let n = out.len() - 2;
        let nf = n as f64;
        let denom = z * (a + nf + 1.0);
        if denom.norm() == 0.0 {
            out.push(hyp_u(a + (n + 2) as f64, b + (n + 2) as f64, z)?);
            continue;
        }
        let next = ((b + nf - z) * out[n + 1] + out[n]) / denom;
        out.push(next);
    }
    Ok(out)
}

/// Kummer's transformation: U(a, b, z) = z^{1-b} U(1+a-b, 2-b, z).
pub fn kummer_transform(a: Complex, b: Complex, z: Complex) -> Result<Complex> {
    check_args(a, b, z)?;
    Ok(z.powc(1.0 - b) * hyp_u(1.0 + a - b, 2.0 - b, z)?)
}

/// Whittaker W_{κ,μ}(y) = e^{-y/2} y^{μ+1/2} U(1/2-κ+μ, 1+2μ, y).
pub fn whittaker_w(kappa: Complex, mu: Complex, y: Complex) -> Result<Complex> {
    Ok((-y / 2.0).exp() * y.powc(mu + 0.5) * hyp_u(0.5 - kappa + mu, 1.0 + 2.0 * mu, y)?)
}

/// Principal-branch power with explicit branch check: fails when z lies on
/// the negative real axis approached from below.
pub fn principal_pow(z: Complex, p: Complex) -> Result<Complex> {
    if z.norm() == 0.0 {
        return Err(HeunError::Branch("power of zero".into()));
    }
    if z.arg() <= -PI {
        return Err(HeunError::Branch(format!("{z} outside principal branch")));
    }
    Ok(z.powc(p))
}
