//! Reductions when B1 = 0 or ω = 0, where the equation is no longer of
//! double-confluent type.

use serde::{Deserialize, Serialize};

use super::DcheParams;
use crate::error::{HeunError, Result};
use crate::{Complex, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degeneracy {
    /// B1 = 0: y = −2iωz, U = e^{−y/2} y^α f(y).
    ZeroB1,
    /// ω = 0: y = B1/z, U = y^β g(y).
    ZeroOmega,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DegenerateReduction {
    /// y f'' + (b − y) f' − a f = 0 after the substitution named by `kind`.
    Confluent {
        kind: Degeneracy,
        /// Both roots of the indicial quadratic, larger real part first.
        roots: [Complex; 2],
        /// (a, b) for each root, in the same order.
        ab: [(Complex, Complex); 2],
    },
    /// B1 = ω = 0: with z = e^y, U_yy + (B2−1)U_y + B3 U = 0, whose
    /// characteristic roots are reported.
    ConstantCoefficient { roots: [Complex; 2] },
}

impl DegenerateReduction {
    /// The root with larger real part and its confluent (a, b).
    pub fn preferred(&self) -> Option<(Complex, Complex, Complex)> {
        match self {
            DegenerateReduction::Confluent { roots, ab, .. } => Some((roots[0], ab[0].0, ab[0].1)),
            DegenerateReduction::ConstantCoefficient { .. } => None,
        }
    }
}

/// Roots of x² + px + q = 0, larger real part first.
fn quadratic_roots(p: Complex, q: Complex) -> [Complex; 2] {
    let d = (p * p - 4.0 * q).sqrt();
    let r1 = (-p + d) / 2.0;
    let r2 = (-p - d) / 2.0;
    if r1.re >= r2.re {
        [r1, r2]
    } else {
        [r2, r1]
    }
}

pub fn reduce_degenerate(p: &DcheParams) -> Result<DegenerateReduction> {
    let b1_zero = p.b1.norm() == 0.0;
    let w_zero = p.omega.norm() == 0.0;
    match (b1_zero, w_zero) {
        (false, false) => Err(HeunError::NotDegenerate),
        (true, true) => Ok(DegenerateReduction::ConstantCoefficient {
            roots: quadratic_roots(p.b2 - 1.0, p.b3),
        }),
        (true, false) => {
            let roots = quadratic_roots(-(1.0 - p.b2), p.b3);
            let ab = roots.map(|a| (I * p.eta + a + p.h(), 2.0 * a + p.b2));
            Ok(DegenerateReduction::Confluent {
                kind: Degeneracy::ZeroB1,
                roots,
                ab,
            })
        }
        (false, true) => {
            let roots = quadratic_roots(-(p.b2 - 1.0), p.b3);
            let ab = roots.map(|b| (b, 2.0 * b + 2.0 - p.b2));
            Ok(DegenerateReduction::Confluent {
                kind: Degeneracy::ZeroOmega,
                roots,
                ab,
            })
        }
    }
}
