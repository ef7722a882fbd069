use serde::{Deserialize, Serialize};

use crate::equation::{apply_rule, DcheParams, Rule};
use crate::error::{HeunError, Result};
use crate::{Complex, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelKind {
    /// e^{iω(z+t)+B1/z} z^{2−B2} (ξ−1)^{B2/2−iη−2},  ξ = −2iωzt/B1
    K1,
    /// e^{iω(z+t)−B1/t} t^{B2−2} (ζ−1)^{−B2/2−iη},  ζ = 2iωzt/B1
    K2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub params: DcheParams,
    /// Use the companion kernel obtained with (η, ω) → (−η, −ω).
    pub mirrored: bool,
    /// Added to the exponent of the (ξ−1) factor; nonzero values break the
    /// kernel on purpose.
    pub perturbation: Complex,
}

impl KernelSpec {
    pub fn new(kind: KernelKind, params: DcheParams) -> Self {
        KernelSpec {
            kind,
            params,
            mirrored: false,
            perturbation: Complex::new(0.0, 0.0),
        }
    }

    /// The kernel relating the members of pair 1..8.
    pub fn for_pair(pair_id: u8, params: DcheParams) -> Result<Self> {
        let kind = match pair_id {
            1 | 3 | 5 | 7 => KernelKind::K1,
            2 | 4 | 6 | 8 => KernelKind::K2,
            _ => return Err(HeunError::Domain(format!("pair id {pair_id} outside 1..=8"))),
        };
        Ok(KernelSpec {
            mirrored: pair_id > 4,
            ..KernelSpec::new(kind, params)
        })
    }

    pub fn with_perturbation(mut self, delta: Complex) -> Self {
        self.perturbation = delta;
        self
    }

    /// Parameters entering the formula.
    pub fn effective(&self) -> DcheParams {
        if self.mirrored {
            apply_rule(Rule::R3, &self.params).0
        } else {
            self.params
        }
    }

    /// Exponent of the (ξ−1) or (ζ−1) factor.
    pub fn exponent(&self) -> Complex {
        let q = self.effective();
        let e = match self.kind {
            KernelKind::K1 => q.h() - q.i_eta() - 2.0,
            KernelKind::K2 => -q.h() - q.i_eta(),
        };
        e + self.perturbation
    }

    /// t = c(z)·x maps the integration variable x = ξ or ζ onto t.
    pub fn t_scale(&self, z: Complex) -> Complex {
        let q = self.effective();
        let s = match self.kind {
            KernelKind::K1 => -1.0,
            KernelKind::K2 => 1.0,
        };
        s * q.b1 / (2.0 * I * q.omega * z)
    }

    /// ξ or ζ at (z, t).
    pub fn variable(&self, z: Complex, t: Complex) -> Complex {
        t / self.t_scale(z)
    }

    /// Re(B2/2 − iη − 1) > 0 for K1, Re(B2/2 + iη − 1) < 0 for K2.
    pub fn parameter_condition(&self) -> bool {
        let q = self.effective();
        match self.kind {
            KernelKind::K1 => (q.h() - q.i_eta() - 1.0).re > 0.0,
            KernelKind::K2 => (q.h() + q.i_eta() - 1.0).re < 0.0,
        }
    }

    /// Re(B1/z) > 0 for K1, < 0 for K2.
    pub fn z_condition(&self, z: Complex) -> bool {
        let r = (self.params.b1 / z).re;
        match self.kind {
            KernelKind::K1 => r > 0.0,
            KernelKind::K2 => r < 0.0,
        }
    }

    /// Kernel without its (x−1)^e factor, as a function of (z, t).
    pub(crate) fn regular_part(&self, z: Complex, t: Complex) -> Complex {
        let q = self.effective();
        match self.kind {
            KernelKind::K1 => (I * q.omega * (z + t) + q.b1 / z).exp() * z.powc(2.0 - q.b2),
            KernelKind::K2 => (I * q.omega * (z + t) - q.b1 / t).exp() * t.powc(q.b2 - 2.0),
        }
    }
}

/// K(z, t) with principal powers.
pub fn kernel_value(spec: &KernelSpec, z: Complex, t: Complex) -> Result<Complex> {
    if z.norm() == 0.0 || t.norm() == 0.0 {
        return Err(HeunError::Domain("kernel needs z, t != 0".into()));
    }
    let x = spec.variable(z, t);
    if (x - 1.0).norm() < 1e-14 {
        return Err(HeunError::Branch(format!("branch point of the kernel at t = {t}")));
    }
    Ok(spec.regular_part(z, t) * (x - 1.0).powc(spec.exponent()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjointReport {
    /// max over the grid of |L_z K − L̄_t K| relative to the size of the terms
    pub max_defect: f64,
    pub points: usize,
}

/// First and second derivative of f at x along the real direction: fourth
/// order central stencils, Richardson-extrapolated over a halved step.
fn derivatives<F: Fn(Complex) -> Result<Complex>>(f: F, x: Complex) -> Result<(Complex, Complex, Complex)> {
    let f0 = f(x)?;
    let stencil = |h: f64| -> Result<(Complex, Complex)> {
        let p1 = f(x + h)?;
        let m1 = f(x - h)?;
        let p2 = f(x + 2.0 * h)?;
        let m2 = f(x - 2.0 * h)?;
        let d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
        let d2 = (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) / (12.0 * h * h);
        Ok((d1, d2))
    };
    let h = 2e-2 * x.norm().max(0.1);
    let (a1, a2) = stencil(h)?;
    let (b1, b2) = stencil(0.5 * h)?;
    Ok((f0, (16.0 * b1 - a1) / 15.0, (16.0 * b2 - a2) / 15.0))
}

/// Checks L_z{K} = L̄_t{K} on the given (z, t) points by finite differences.
pub fn verify_adjoint(spec: &KernelSpec, grid: &[(Complex, Complex)]) -> Result<AdjointReport> {
    let p = &spec.params;
    let mut worst: f64 = 0.0;
    for &(z, t) in grid {
        let (k, kz, kzz) = derivatives(|x| kernel_value(spec, x, t), z)?;
        let (_, kt, ktt) = derivatives(|y| kernel_value(spec, z, y), t)?;
        let pot = |x: Complex| p.omega * p.omega * x * x - 2.0 * p.omega * p.eta * x;
        let lz = [z * z * kzz, (p.b1 + p.b2 * z) * kz, pot(z) * k];
        let lt = [t * t * ktt, (-p.b1 + (4.0 - p.b2) * t) * kt, (pot(t) + 2.0 - p.b2) * k];
        let diff: Complex = lz.iter().sum::<Complex>() - lt.iter().sum::<Complex>();
        let scale: f64 = lz.iter().chain(lt.iter()).map(|v| v.norm()).sum();
        worst = worst.max(if scale == 0.0 { 0.0 } else { diff.norm() / scale });
    }
    Ok(AdjointReport {
        max_defect: worst,
        points: grid.len(),
    })
}
