use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::quadrature::{integrate_half_line, DeOptions};
use crate::specialfn::{gamma, hyp_u, whittaker_w};
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AppendixIntegral {
    /// ∫_1^∞ e^{−yt} (t−1)^{α−1} t^{β−α−1} dt = Γ(α) e^{−y} U(α, β, y)
    A1 { alpha: Complex, beta: Complex, y: Complex },
    /// ∫_1^∞ e^{−ay} (y−1)^{μ−1} U(1/2−κ−λ, 1−2λ, ay) dy
    ///   = Γ(μ) e^{−a} a^{−μ} U(1/2−κ−λ, 1−2λ−μ, a)
    A2 { kappa: Complex, lambda: Complex, mu: Complex, a: Complex },
    /// ∫_1^∞ e^{−ay} (y−1)^{μ−1} y^{κ+λ−μ−1/2} U(1/2+λ−κ, 2λ+1, ay) dy
    ///   = Γ(μ) e^{−a} U(1/2+μ−κ+λ, 1+2λ, a)
    A3 { kappa: Complex, lambda: Complex, mu: Complex, a: Complex },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub quadrature: Complex,
    pub closed_form: Complex,
    pub relative_error: f64,
}

const QUAD: DeOptions = DeOptions {
    rel_tol: 1e-12,
    initial_step: 0.5,
    max_levels: 10,
    tau_max: 9.0,
};

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(HeunError::Condition(what.into()))
    }
}

/// ∫_1^∞ g(y) (y−1)^{p} dy with g smooth.
fn from_one<G>(p: Complex, g: G) -> Result<Complex>
where
    G: Fn(Complex) -> Result<Complex>,
{
    let failure = std::cell::RefCell::new(None);
    let f = |s: f64, ln_s: f64| match g(Complex::new(1.0 + s, 0.0)) {
        Ok(v) => v * (p * ln_s).exp(),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex::new(f64::NAN, 0.0)
        }
    };
    let r = integrate_half_line(f, QUAD);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r?.value)
}

/// Evaluates both sides of A1, A2 or A3.
pub fn appendix_integral(which: AppendixIntegral) -> Result<AppendixReport> {
    let (quadrature, closed_form) = match which {
        AppendixIntegral::A1 { alpha, beta, y } => {
            require(alpha.re > 0.0 && y.re > 0.0, "A1 needs Re α > 0 and Re y > 0")?;
            let q = from_one(alpha - 1.0, |t| Ok((-y * t).exp() * t.powc(beta - alpha - 1.0)))?;
            (q, gamma(alpha)? * (-y).exp() * hyp_u(alpha, beta, y)?)
        }
        AppendixIntegral::A2 { kappa, lambda, mu, a } => {
            require(mu.re > 0.0 && a.re > 0.0, "A2 needs Re μ > 0 and Re a > 0")?;
            let (ua, ub) = (0.5 - kappa - lambda, 1.0 - 2.0 * lambda);
            let q = from_one(mu - 1.0, |y| Ok((-a * y).exp() * hyp_u(ua, ub, a * y)?))?;
            (q, gamma(mu)? * (-a).exp() * a.powc(-mu) * hyp_u(ua, ub - mu, a)?)
        }
        AppendixIntegral::A3 { kappa, lambda, mu, a } => {
            require(mu.re > 0.0 && a.re > 0.0, "A3 needs Re μ > 0 and Re a > 0")?;
            let (ua, ub) = (0.5 + lambda - kappa, 2.0 * lambda + 1.0);
            let q = from_one(mu - 1.0, |y| {
                Ok((-a * y).exp() * y.powc(kappa + lambda - mu - 0.5) * hyp_u(ua, ub, a * y)?)
            })?;
            (q, gamma(mu)? * (-a).exp() * hyp_u(0.5 + mu - kappa + lambda, 1.0 + 2.0 * lambda, a)?)
        }
    };
    Ok(AppendixReport {
        quadrature,
        closed_form,
        relative_error: (quadrature - closed_form).norm() / closed_form.norm(),
    })
}

/// Right side of A2 written with a Whittaker function of second index
/// `index`, rescaled to the normalization of the U form:
/// Γ(μ) e^{−a/2} a^{−μ/2} W_{κ−μ/2, index}(a) · a^{λ−1/2}.
/// The correct index is λ + μ/2.
pub fn whittaker_a2_rhs(kappa: Complex, lambda: Complex, mu: Complex, a: Complex, index: Complex) -> Result<Complex> {
    Ok(gamma(mu)? * (-a / 2.0).exp() * a.powc(-mu / 2.0) * whittaker_w(kappa - mu / 2.0, index, a)? * a.powc(lambda - 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn a1_exponential_integral() {
        // α = β = 1, y = 1: E1(1) = 0.21938393439552029 (mpmath)
        let r = appendix_integral(AppendixIntegral::A1 { alpha: cx(1.0, 0.0), beta: cx(1.0, 0.0), y: cx(1.0, 0.0) })
            .unwrap();
        assert!((r.quadrature.re - 0.21938393439552029).abs() < 1e-12);
        assert!(r.relative_error < 1e-10);
    }

    #[test]
    fn a2_index_correction() {
        let (k, l, m, a) = (cx(0.3, 0.1), cx(0.2, -0.1), cx(1.4, 0.2), cx(1.5, 0.4));
        let r = appendix_integral(AppendixIntegral::A2 { kappa: k, lambda: l, mu: m, a }).unwrap();
        assert!(r.relative_error < 1e-9, "{}", r.relative_error);
        let right = whittaker_a2_rhs(k, l, m, a, l + m / 2.0).unwrap();
        assert!((right - r.closed_form).norm() < 1e-10 * right.norm());
        let printed = whittaker_a2_rhs(k, l, m, a, l - m / 2.0).unwrap();
        assert!((printed - r.quadrature).norm() > 1e-3 * right.norm());
    }

    #[test]
    fn a3_and_conditions() {
        let r = appendix_integral(AppendixIntegral::A3 { kappa: cx(0.2, 0.0), lambda: cx(0.4, 0.1), mu: cx(1.0, 0.0), a: cx(2.0, -0.5) })
            .unwrap();
        assert!(r.relative_error < 1e-9, "{}", r.relative_error);
        let bad = appendix_integral(AppendixIntegral::A1 { alpha: cx(-0.5, 0.0), beta: cx(1.0, 0.0), y: cx(1.0, 0.0) });
        assert!(matches!(bad, Err(HeunError::Condition(_))));
    }
}
