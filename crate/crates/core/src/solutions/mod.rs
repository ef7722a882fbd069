//! Solution families of the double-confluent Heun equation and their
//! evaluation.

mod coulomb;
mod fit;
mod pairs;
mod series;

use std::cell::Cell;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use coulomb::{
    build_pair_coulomb, build_pair_coulomb_nu, coulomb_coeffs, coulomb_nu_coeffs, coulomb_form, solve_b3_coulomb, solve_nu,
};
pub use fit::{asymptotic_ratio, proportionality, Proportionality};
pub use pairs::{build_alternative_zero, build_pair_power, pair_coeffs, r3_family, solve_b3};
pub use series::{sum_series, Basis, SeriesValue};

use crate::equation::{residual, residual_scale, DcheParams, GaugeMap};
use crate::error::{HeunError, Result};
use crate::jet::Jet;
use crate::recurrence::CoeffSeq;
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Σ b_n (−2iωz)^{−n}
    PowerDesc,
    /// Σ b_n (±z/B1)^n
    PowerAsc,
    /// Σ b_n U(·, ·, ±B1/z)
    HypUInvZ,
    /// Σ b_n U(·, ·, −2iωz)
    HypUInZ,
    /// Σ b_n y^n U(n+·, 2n+·, y): Coulomb wave functions, with or without a
    /// free phase parameter
    CoulombNu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// convergent for |z| > 0, with the asymptotics at infinity
    AtInf,
    /// convergent for |z| < ∞, with the asymptotics at zero
    AtZero,
}

/// The combination k·z (or k/z) whose argument must stay in (lo, hi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub k: Complex,
    pub inverse: bool,
    pub lo: f64,
    pub hi: f64,
}

impl Sector {
    fn standard(k: Complex, inverse: bool) -> Self {
        Sector {
            k,
            inverse,
            lo: -1.5 * PI,
            hi: 1.5 * PI,
        }
    }

    /// arg of the combination continued from arg z ∈ (−π, π].
    pub fn unwrapped_arg(&self, z: Complex) -> f64 {
        let s = if self.inverse { -1.0 } else { 1.0 };
        self.k.arg() + s * z.arg()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SectorWarning {
    /// The combination lies outside the sector in which the solution is
    /// one-valued.
    OutsideSector { arg: f64 },
    /// The principal branch used for U(a,b,y) differs from the continuation
    /// from positive arguments.
    PrincipalBranch { arg: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DcheSolution {
    pub family: Family,
    pub pair_id: u8,
    pub variant: Variant,
    /// Parameters of the equation this function solves.
    pub params: DcheParams,
    pub nu: Option<Complex>,
    pub coeffs: Arc<CoeffSeq>,
    pub basis: Basis,
    /// Prefactor, e.g. e^{iωz} z^{−iη−B2/2}.
    pub gauge: GaugeMap,
    pub sector: Sector,
    /// Normalized defect of the characteristic equation for the generated
    /// coefficients (zero for an exact solution).
    pub char_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub jet: Jet,
    /// Magnitude of the largest contribution; errors are relative to it.
    pub scale: f64,
    pub terms: usize,
    pub warnings: Vec<SectorWarning>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residual: Complex,
    pub scale: f64,
    pub relative: f64,
}

/// Default cap on the number of series terms.
pub const MAX_TERMS: usize = 500;

impl DcheSolution {
    pub fn is_finite_series(&self) -> bool {
        self.coeffs.finite.is_some()
    }

    pub fn sector_warnings(&self, z: Complex) -> Vec<SectorWarning> {
        let arg = self.sector.unwrapped_arg(z);
        let mut w = Vec::new();
        if arg <= self.sector.lo || arg >= self.sector.hi {
            w.push(SectorWarning::OutsideSector { arg });
        } else if !matches!(self.basis, Basis::PowerAsc { .. } | Basis::PowerDesc { .. }) && (arg > PI || arg <= -PI)
        {
            w.push(SectorWarning::PrincipalBranch { arg });
        }
        w
    }

    /// Value and first two derivatives at z.
    pub fn evaluate(&self, z: Complex) -> Result<Evaluation> {
        if !z.is_finite() {
            return Err(HeunError::Domain(format!("z = {z} is not finite")));
        }
        if z.norm() == 0.0 {
            return Err(HeunError::Domain("z = 0 is an irregular singular point".into()));
        }
        let stats = Cell::new((0.0, 0));
        let jet = self.gauge.apply(
            |x| {
                let s = sum_series(&self.coeffs, self.basis, x, MAX_TERMS)?;
                stats.set((s.max_term, s.terms));
                Ok(s.jet)
            },
            z,
        )?;
        let (max_term, terms) = stats.get();
        let pre = self.gauge.apply(|_| Ok(Jet::constant(Complex::new(1.0, 0.0))), z)?;
        let pre_mag = pre.v.norm() + pre.d1.norm() + pre.d2.norm();
        Ok(Evaluation {
            jet,
            scale: pre_mag * max_term,
            terms,
            warnings: self.sector_warnings(z),
        })
    }

    pub fn value(&self, z: Complex) -> Result<Complex> {
        Ok(self.evaluate(z)?.jet.v)
    }

    /// Residual of the equation at z together with the magnitude it should
    /// be compared with.
    pub fn residual(&self, z: Complex) -> Result<ResidualReport> {
        let e = self.evaluate(z)?;
        let r = residual(&self.params, e.jet, z)?;
        let p = &self.params;
        let coeff = (z * z).norm() + (p.b1 + p.b2 * z).norm() + p.potential(z).norm();
        let scale = residual_scale(p, e.jet, z).max(e.scale * coeff);
        Ok(ResidualReport {
            residual: r,
            scale,
            relative: if scale == 0.0 { r.norm() } else { r.norm() / scale },
        })
    }
}
