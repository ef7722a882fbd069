use serde::{Deserialize, Serialize};

use crate::equation::DcheParams;
use crate::error::{HeunError, Result};
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadialKind {
    /// V = V1/r + V2/r² + V3/r³ + V4/r⁴, with z = r
    InversePower,
    /// V = V1 r² + V2/r² + V3/r⁴ + V4/r⁶, with z = r²
    EvenPower,
}

/// Parameters for the radial equation H'' + [ℰ − l(l+1)/r² − V(r)]H = 0,
/// one set for each sign of B1. The potential coefficients are v = [V1..V4].
pub fn map_radial(kind: RadialKind, v: [f64; 4], energy: f64, l: f64) -> Result<Vec<DcheParams>> {
    let [v1, v2, v3, v4] = v;
    let c = |x: f64| Complex::new(x, 0.0);
    if v4 == 0.0 {
        return Err(HeunError::Degenerate("V4 = 0 gives B1 = 0".into()));
    }
    let ll = l * (l + 1.0);
    let mut out = Vec::with_capacity(2);
    match kind {
        RadialKind::InversePower => {
            if energy == 0.0 {
                return Err(HeunError::Degenerate("zero energy gives omega = 0".into()));
            }
            let omega = c(energy).sqrt();
            let eta = c(v1) / (2.0 * omega);
            for sign in [1.0, -1.0] {
                let b1 = sign * 2.0 * c(v4).sqrt();
                let b2 = 2.0 * (1.0 + v3 / b1);
                let b3 = -ll - v2 + b2 * b2 / 4.0 - b2 / 2.0;
                out.push(DcheParams::new(b1, b2, b3, omega, eta)?);
            }
        }
        RadialKind::EvenPower => {
            if v1 == 0.0 {
                return Err(HeunError::Degenerate("V1 = 0 gives omega = 0".into()));
            }
            let omega = c(-v1).sqrt() / 2.0;
            let eta = -energy / (8.0 * omega);
            for sign in [1.0, -1.0] {
                let b1 = sign * c(v4).sqrt();
                let b2 = 2.0 * (1.0 + v3 / (4.0 * b1));
                let b3 = (-ll - v2) / 4.0 + b2 * b2 / 4.0 - b2 / 2.0 + 3.0 / 16.0;
                out.push(DcheParams::new(b1, b2, b3, omega, eta)?);
            }
        }
    }
    Ok(out)
}
