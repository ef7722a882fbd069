//! Numerical proportionality between solutions.

use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Proportionality {
    /// Least-squares c in f ≈ c·g.
    pub ratio: Complex,
    /// max_i |f_i − c g_i| / |f_i|
    pub max_deviation: f64,
}

/// Fits f_i ≈ c·g_i over the sample pairs (f_i, g_i).
pub fn proportionality(samples: &[(Complex, Complex)]) -> Result<Proportionality> {
    let num: Complex = samples.iter().map(|(f, g)| g.conj() * f).sum();
    let den: f64 = samples.iter().map(|(_, g)| g.norm_sqr()).sum();
    if samples.is_empty() || den == 0.0 || !den.is_finite() {
        return Err(HeunError::Domain("proportionality fit needs nonzero finite samples".into()));
    }
    let ratio = num / den;
    let max_deviation = samples
        .iter()
        .map(|(f, g)| (f - ratio * g).norm() / f.norm().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    Ok(Proportionality { ratio, max_deviation })
}

/// Compares `f` with its expected leading behaviour `reference` at the
/// given points.
pub fn asymptotic_ratio<F, G>(f: F, reference: G, points: &[Complex]) -> Result<Proportionality>
where
    F: Fn(Complex) -> Result<Complex>,
    G: Fn(Complex) -> Complex,
{
    let samples = points
        .iter()
        .map(|&z| Ok((f(z)?, reference(z))))
        .collect::<Result<Vec<_>>>()?;
    proportionality(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_multiple() {
        let c = Complex::new(2.0, -1.0);
        let s: Vec<_> = (1..5).map(|k| {
            let g = Complex::new(k as f64, 1.0 / k as f64);
            (c * g, g)
        }).collect();
        let p = proportionality(&s).unwrap();
        assert!((p.ratio - c).norm() < 1e-15);
        assert!(p.max_deviation < 1e-15);
    }
}
