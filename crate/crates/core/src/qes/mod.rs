//! Schrödinger problems that reduce to the equation: the double-Morse and
//! the second-type hyperbolic potentials, their spectra and eigenfunctions,
//! and parameter maps for two radial potentials.

mod eigenfunction;
mod radial;
mod spectrum;

pub use eigenfunction::{eigenfunction, regularity_check, Eigenfunction, RegularityReport};
pub use radial::{map_radial, RadialKind};
pub use spectrum::{
    infinite_spectrum, qes_matrix, qes_spectrum, EnergyCertificate, SpectrumMethod, SpectrumResult,
};

use serde::{Deserialize, Serialize};

use crate::equation::{DcheParams, GaugeMap, GaugeStage, VarMap};
use crate::error::{HeunError, Result};
use crate::recurrence::integer_offset;
use crate::{Complex, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QesKind {
    /// V = (B²/4)(sinh u − C/B)² − B(s + 1/2) cosh u
    DoubleMorse,
    /// V = (B²/4) sinh² u − (s + 1/2) B sinh u
    SecondType,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QesProblem {
    pub kind: QesKind,
    pub b: f64,
    /// zero for the second type
    pub c: f64,
    pub s: f64,
}

impl QesProblem {
    pub fn double_morse(b: f64, c: f64, s: f64) -> Result<Self> {
        if !(b > 0.0) || !(c >= 0.0) || !(s >= 0.0) {
            return Err(HeunError::InvalidParams(format!("need B > 0, C >= 0, s >= 0 (got {b}, {c}, {s})")));
        }
        Ok(QesProblem { kind: QesKind::DoubleMorse, b, c, s })
    }

    pub fn second_type(b: f64, s: f64) -> Result<Self> {
        if !(b > 0.0) || !(s >= 0.0) {
            return Err(HeunError::InvalidParams(format!("need B > 0, s >= 0 (got {b}, {s})")));
        }
        Ok(QesProblem { kind: QesKind::SecondType, b, c: 0.0, s })
    }

    /// s is a non-negative integer or half-integer.
    pub fn is_qes(&self) -> bool {
        integer_offset(Complex::new(2.0 * self.s, 0.0), 1e-12).is_some()
    }

    /// 2s + 1 when the problem is quasi-exactly solvable.
    pub fn qes_size(&self) -> Result<usize> {
        match integer_offset(Complex::new(2.0 * self.s, 0.0), 1e-12) {
            Some(k) if k >= 0 => Ok(k as usize + 1),
            _ => Err(HeunError::NotQes(self.s)),
        }
    }

    pub fn potential(&self, u: f64) -> f64 {
        let (b, c, s) = (self.b, self.c, self.s);
        match self.kind {
            QesKind::DoubleMorse => b * b / 4.0 * (u.sinh() - c / b).powi(2) - b * (s + 0.5) * u.cosh(),
            QesKind::SecondType => b * b / 4.0 * u.sinh().powi(2) - (s + 0.5) * b * u.sinh(),
        }
    }

    pub fn map(&self) -> QesMap {
        match self.kind {
            QesKind::DoubleMorse => map_double_morse(self.b, self.c, self.s),
            QesKind::SecondType => map_second_type(self.b, self.s),
        }
    }
}

/// Parameters of the equation as an affine function of the energy, and the
/// gauge ψ(u) = z^{(B2−1)/2} e^{−B1/(2z)} U(z), z = e^u.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QesMap {
    /// parameters at ℰ = 0; B3 grows by ℰ
    pub base: DcheParams,
    pub gauge: GaugeMap,
}

impl QesMap {
    fn new(b1: f64, b2: f64, b3: f64, omega: Complex, i_eta: f64) -> Self {
        let base = DcheParams {
            b1: b1.into(),
            b2: b2.into(),
            b3: b3.into(),
            omega,
            eta: -I * i_eta,
        };
        let gauge = GaugeMap::single(GaugeStage::new(
            Complex::new(0.0, 0.0),
            Complex::new(-b1 / 2.0, 0.0),
            Complex::new((b2 - 1.0) / 2.0, 0.0),
            VarMap::Exponential(Complex::new(1.0, 0.0)),
        ));
        QesMap { base, gauge }
    }

    pub fn params(&self, energy: f64) -> DcheParams {
        DcheParams {
            b3: self.base.b3 + energy,
            ..self.base
        }
    }
}

/// (B1, B2, B3, ω, iη) = (B/2, 1+C−2s, ℰ+B²/8+s²−sC, iB/4, −C/2−1/2−s).
pub fn map_double_morse(b: f64, c: f64, s: f64) -> QesMap {
    QesMap::new(b / 2.0, 1.0 + c - 2.0 * s, b * b / 8.0 + s * s - s * c, I * b / 4.0, -c / 2.0 - 0.5 - s)
}

/// (B1, B2, B3, iω, iη) = (−B/2, 1−2s, ℰ+B²/8+s², −B/4, −1/2−s).
pub fn map_second_type(b: f64, s: f64) -> QesMap {
    QesMap::new(-b / 2.0, 1.0 - 2.0 * s, b * b / 8.0 + s * s, I * b / 4.0, -0.5 - s)
}
