//! The double-confluent Heun equation itself: parameters, the differential
//! operator, transformation rules, gauges and reduced forms.

mod degenerate;
mod gauge;
mod normal;
mod rules;

pub use degenerate::{reduce_degenerate, DegenerateReduction, Degeneracy};
pub use gauge::{GaugeMap, GaugeStage, VarMap};
pub use normal::{
    gswe_special_maps, normal_form, special_case_constraints, GsweMap, NormalForm, NormalFormKind,
    SpecialEquationSpec, SpecialKind,
};
pub use rules::{apply_rule, Rule};

use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::jet::Jet;
use crate::{Complex, I};

/// Parameters (B1, B2, B3, ω, η) of
/// z²U'' + (B1 + B2 z)U' + (B3 − 2ηωz + ω²z²)U = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DcheParams {
    pub b1: Complex,
    pub b2: Complex,
    pub b3: Complex,
    pub omega: Complex,
    pub eta: Complex,
}

impl DcheParams {
    /// Validated constructor; B1 = 0 or ω = 0 is rejected (see
    /// [`reduce_degenerate`] for those cases).
    pub fn new(b1: Complex, b2: Complex, b3: Complex, omega: Complex, eta: Complex) -> Result<Self> {
        let p = Self::unchecked(b1, b2, b3, omega, eta);
        p.validate()?;
        Ok(p)
    }

    pub const fn unchecked(b1: Complex, b2: Complex, b3: Complex, omega: Complex, eta: Complex) -> Self {
        DcheParams { b1, b2, b3, omega, eta }
    }

    pub fn from_real(b1: f64, b2: f64, b3: f64, omega: f64, eta: f64) -> Result<Self> {
        Self::new(b1.into(), b2.into(), b3.into(), omega.into(), eta.into())
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.b1, self.b2, self.b3, self.omega, self.eta];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(HeunError::InvalidParams("non-finite parameter".into()));
        }
        if self.b1.norm() == 0.0 {
            return Err(HeunError::InvalidParams("B1 = 0; use reduce_degenerate".into()));
        }
        if self.omega.norm() == 0.0 {
            return Err(HeunError::InvalidParams("omega = 0; use reduce_degenerate".into()));
        }
        Ok(())
    }

    /// B2/2, which appears throughout the coefficient tables.
    pub fn h(&self) -> Complex {
        self.b2 / 2.0
    }

    pub fn i_eta(&self) -> Complex {
        I * self.eta
    }

    /// Coefficient of U in the equation at z.
    pub fn potential(&self, z: Complex) -> Complex {
        self.b3 - 2.0 * self.eta * self.omega * z + self.omega * self.omega * z * z
    }

    /// Builds parameters from (B1, B2, B3, ω, iη), the form in which most
    /// mappings are stated.
    pub fn with_i_eta(b1: Complex, b2: Complex, b3: Complex, omega: Complex, i_eta: Complex) -> Result<Self> {
        Self::new(b1, b2, b3, omega, -I * i_eta)
    }
}

/// z²f'' + (B1 + B2 z)f' + (B3 − 2ηωz + ω²z²)f for a jet of f at z.
pub fn residual(p: &DcheParams, f: Jet, z: Complex) -> Result<Complex> {
    if z.norm() == 0.0 {
        return Err(HeunError::Domain("residual evaluated at z = 0".into()));
    }
    Ok(z * z * f.d2 + (p.b1 + p.b2 * z) * f.d1 + p.potential(z) * f.v)
}

/// Size of the individual terms of the residual; dividing by this gives a
/// scale-free measure of how well `f` satisfies the equation.
pub fn residual_scale(p: &DcheParams, f: Jet, z: Complex) -> f64 {
    (z * z * f.d2).norm() + ((p.b1 + p.b2 * z) * f.d1).norm() + (p.potential(z) * f.v).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_rejects_degenerate_parameters() {
        assert!(DcheParams::from_real(0.0, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(DcheParams::from_real(1.0, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(DcheParams::from_real(1.0, 1.0, 1.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn residual_of_zero_and_domain() {
        let p = DcheParams::from_real(2.0, 2.0, 2.0, 1.0, 1.0).unwrap();
        let z = Complex::new(0.4, 0.3);
        assert_eq!(residual(&p, Jet::default(), z).unwrap(), Complex::new(0.0, 0.0));
        assert!(residual(&p, Jet::default(), Complex::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn residual_is_linear_in_b3() {
        let p = DcheParams::from_real(1.5, 0.5, 2.0, 1.0, 0.3).unwrap();
        let mut q = p;
        q.b3 += 0.1;
        let z = Complex::new(1.2, -0.4);
        let f = Jet::new(Complex::new(0.7, 0.1), Complex::new(-0.2, 1.0), Complex::new(3.0, 0.5));
        let d = residual(&q, f, z).unwrap() - residual(&p, f, z).unwrap();
        assert!((d - 0.1 * f.v).norm() < 1e-14);
    }
}
