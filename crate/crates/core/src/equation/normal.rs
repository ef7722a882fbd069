//! Normal forms (equations with no first-derivative term), the
//! Whittaker–Hill special cases, and the two variable changes that carry a
//! particular generalized spheroidal equation onto them.

use serde::{Deserialize, Serialize};

use super::gauge::{GaugeMap, GaugeStage, VarMap};
use super::DcheParams;
use crate::error::{HeunError, Result};
use crate::{Complex, I};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NormalFormKind {
    /// F'' + I(z)F = 0 with U = z^{-B2/2} e^{B1/(2z)} F.
    Algebraic,
    /// W'' + λ²I(u)W = 0 with z = e^{λu}.
    Hyperbolic(Complex),
    /// G'' + J(ρ)G = 0 with z = ρ².
    RhoAlgebraic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub kind: NormalFormKind,
    pub params: DcheParams,
    /// Carries a solution U(z) to the normal-form unknown.
    pub gauge: GaugeMap,
}

impl NormalForm {
    fn shared(&self) -> (Complex, Complex, Complex) {
        let p = &self.params;
        let c0 = p.b3 - p.b2 * p.b2 / 4.0 + p.b2 / 2.0;
        let c1 = p.b1 * (1.0 - p.h());
        let c2 = p.b1 * p.b1 / 4.0;
        (c0, c1, c2)
    }

    /// The coefficient multiplying the unknown in the normal form, at the
    /// normal-form variable x (z, u or ρ).
    pub fn coefficient(&self, x: Complex) -> Complex {
        let p = &self.params;
        let (c0, c1, c2) = self.shared();
        let eo = p.eta * p.omega;
        let w2 = p.omega * p.omega;
        match self.kind {
            NormalFormKind::Algebraic => {
                let z = x;
                w2 - 2.0 * eo / z + c0 / (z * z) + c1 / (z * z * z) - c2 / (z * z * z * z)
            }
            NormalFormKind::Hyperbolic(l) => {
                let s = l * x;
                let i = -(c1 + 2.0 * eo) * s.sinh()
                    + (w2 + c2) * (2.0 * s).sinh()
                    + (c1 - 2.0 * eo) * s.cosh()
                    + (w2 - c2) * (2.0 * s).cosh()
                    + p.b3
                    - (1.0 - p.b2) * (1.0 - p.b2) / 4.0;
                l * l * i
            }
            NormalFormKind::RhoAlgebraic => {
                let r2 = x * x;
                4.0 * w2 * r2 - 8.0 * eo + 4.0 * (c0 - 3.0 / 16.0) / r2 + 4.0 * c1 / (r2 * r2)
                    - 4.0 * c2 / (r2 * r2 * r2)
            }
        }
    }

    /// m(x) such that (normal-form operator applied to the gauged function)
    /// equals m(x) times the original residual at φ(x).
    pub fn residual_multiplier(&self, x: Complex) -> Complex {
        let p = &self.params;
        let h = p.h();
        match self.kind {
            NormalFormKind::Algebraic => x.powc(h - 2.0) * (-p.b1 / (2.0 * x)).exp(),
            NormalFormKind::Hyperbolic(l) => {
                let z = (l * x).exp();
                l * l * ((h - 0.5) * l * x).exp() * (-p.b1 / (2.0 * z)).exp()
            }
            NormalFormKind::RhoAlgebraic => {
                let z = x * x;
                4.0 * ((2.0 * h - 2.5) * x.ln()).exp() * (-p.b1 / (2.0 * z)).exp()
            }
        }
    }
}

/// Builds the normal form of the requested kind.
pub fn normal_form(p: &DcheParams, kind: NormalFormKind) -> Result<NormalForm> {
    let zero = Complex::new(0.0, 0.0);
    let stage = match kind {
        NormalFormKind::Algebraic => GaugeStage::new(zero, -p.b1 / 2.0, p.h(), VarMap::Identity),
        NormalFormKind::Hyperbolic(l) => {
            if l.norm() == 0.0 {
                return Err(HeunError::Domain("lambda must be nonzero".into()));
            }
            GaugeStage::new(zero, -p.b1 / 2.0, (p.b2 - 1.0) / 2.0, VarMap::Exponential(l))
        }
        NormalFormKind::RhoAlgebraic => {
            GaugeStage::new(zero, -p.b1 / 2.0, (2.0 * p.b2 - 1.0) / 4.0, VarMap::Square)
        }
    };
    Ok(NormalForm {
        kind,
        params: *p,
        gauge: GaugeMap::single(stage),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialKind {
    /// Whittaker–Hill: θ0 + θ1 cosh(κu) + θ2 cosh(2κu)
    Whe,
    /// θ0 + θ1 sinh(κu) + θ2 cosh(2κu)
    SecondType,
}

/// W'' + [θ0 + θ1·f(κu) + θ2 cosh(2κu)]W = 0, with f = cosh or sinh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialEquationSpec {
    pub kind: SpecialKind,
    pub kappa: Complex,
    pub theta0: Complex,
    pub theta1: Complex,
    pub theta2: Complex,
}

impl SpecialEquationSpec {
    pub fn coefficient(&self, u: Complex) -> Complex {
        let s = self.kappa * u;
        let middle = match self.kind {
            SpecialKind::Whe => s.cosh(),
            SpecialKind::SecondType => s.sinh(),
        };
        self.theta0 + self.theta1 * middle + self.theta2 * (2.0 * s).cosh()
    }
}

fn approx_eq(a: Complex, b: Complex, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1e-300)
}

/// Recognizes parameters for which the hyperbolic normal form (with
/// z = e^{λu}) is a Whittaker–Hill equation or its sinh companion.
pub fn special_case_constraints(p: &DcheParams, lambda: Complex) -> Option<SpecialEquationSpec> {
    const TOL: f64 = 1e-10;
    let w2 = p.omega * p.omega;
    if !approx_eq(w2, -p.b1 * p.b1 / 4.0, TOL) {
        return None;
    }
    let eo2 = 2.0 * p.eta * p.omega;
    let c1 = p.b1 * (1.0 - p.h());
    let kind = if approx_eq(eo2, -c1, TOL) {
        SpecialKind::Whe
    } else if approx_eq(eo2, c1, TOL) {
        SpecialKind::SecondType
    } else {
        return None;
    };
    let l2 = lambda * lambda;
    Some(SpecialEquationSpec {
        kind,
        kappa: lambda,
        theta0: l2 * (p.b3 - (1.0 - p.b2) * (1.0 - p.b2) / 4.0),
        theta1: -2.0 * eo2 * l2,
        theta2: 2.0 * w2 * l2,
    })
}

/// The particular spheroidal equation
/// z(z−z0)U'' + (z − z0/2)U' + [B3 − 2ηω(z−z0) + ω²z(z−z0)]U = 0
/// together with the variable change taking it to a special equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GsweMap {
    pub var: VarMap,
    pub spec: SpecialEquationSpec,
}

impl GsweMap {
    pub fn z(&self, u: Complex) -> Complex {
        self.var.jet(u).v
    }
}

/// Variable maps for the spheroidal equation with constants (B3, η, ω).
pub fn gswe_special_maps(
    z0: Complex,
    sigma: Complex,
    kind: SpecialKind,
    b3: Complex,
    eta: Complex,
    omega: Complex,
) -> Result<GsweMap> {
    if z0.norm() == 0.0 || sigma.norm() == 0.0 {
        return Err(HeunError::Domain("z0 and sigma must be nonzero".into()));
    }
    let s2 = sigma * sigma;
    let eo = eta * omega * z0;
    let w = omega * omega * z0 * z0 / 8.0;
    let theta0 = s2 * (b3 + eo - w);
    let (var, theta1, theta2) = match kind {
        SpecialKind::Whe => (VarMap::Cosh2 { z0, sigma }, -s2 * eo, s2 * w),
        SpecialKind::SecondType => (VarMap::ISinh { z0, sigma }, -I * s2 * eo, -s2 * w),
    };
    Ok(GsweMap {
        var,
        spec: SpecialEquationSpec {
            kind,
            kappa: sigma,
            theta0,
            theta1,
            theta2,
        },
    })
}
