use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use super::kernel::{KernelKind, KernelSpec};
use crate::error::{HeunError, Result};
use crate::quadrature::{integrate_half_line, DeOptions};
use crate::solutions::DcheSolution;
use crate::{Complex, I};

const QUAD: DeOptions = DeOptions {
    rel_tol: 1e-11,
    initial_step: 0.5,
    max_levels: 10,
    tau_max: 9.0,
};

fn check_conditions(spec: &KernelSpec, z: Complex) -> Result<()> {
    if !spec.parameter_condition() {
        return Err(HeunError::Condition(format!(
            "exponent condition fails for {:?} (exponent + 1 = {})",
            spec.kind,
            spec.exponent() + 1.0
        )));
    }
    if !spec.z_condition(z) {
        return Err(HeunError::Condition(format!("half-plane condition on B1/z fails at z = {z}")));
    }
    Ok(())
}

/// ∫ K(z,t) U(t) dt along t = c(z)·x, x from 1 to ∞.
pub fn transform_value(u_inf: &DcheSolution, spec: &KernelSpec, z: Complex) -> Result<Complex> {
    check_conditions(spec, z)?;
    let c = spec.t_scale(z);
    let e = spec.exponent();
    let failure = RefCell::new(None);
    let f = |s: f64, ln_s: f64| {
        let t = c * (1.0 + s);
        match u_inf.value(t) {
            Ok(u) => spec.regular_part(z, t) * (e * ln_s).exp() * u,
            Err(err) => {
                failure.borrow_mut().get_or_insert(err);
                Complex::new(f64::NAN, 0.0)
            }
        }
    };
    let res = integrate_half_line(f, QUAD);
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    Ok(c * res?.value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub z: Vec<Complex>,
    /// transform / U^0 at each sample
    pub ratios: Vec<Complex>,
    pub mean: Complex,
    /// max |ratio − mean| / |mean|
    pub max_deviation: f64,
}

/// Transforms `u_inf` with the kernel and compares with `u_zero`.
pub fn verify_transform(
    u_inf: &DcheSolution,
    u_zero: &DcheSolution,
    spec: &KernelSpec,
    z_samples: &[Complex],
) -> Result<TransformReport> {
    if z_samples.is_empty() {
        return Err(HeunError::Domain("no sample points".into()));
    }
    for &z in z_samples {
        check_conditions(spec, z)?;
    }
    let ratios = z_samples
        .iter()
        .map(|&z| Ok(transform_value(u_inf, spec, z)? / u_zero.value(z)?))
        .collect::<Result<Vec<_>>>()?;
    let mean = ratios.iter().sum::<Complex>() / ratios.len() as f64;
    let max_deviation = ratios.iter().map(|r| (r - mean).norm() / mean.norm()).fold(0.0, f64::max);
    Ok(TransformReport {
        z: z_samples.to_vec(),
        ratios,
        mean,
        max_deviation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    /// (ε, |P+Q|) at x = 1 + ε
    pub near: Vec<(f64, f64)>,
    /// (R, |P+Q|) at x = R
    pub far: Vec<(f64, f64)>,
    /// fitted d ln|P+Q| / d ln ε
    pub near_slope: f64,
    pub predicted_near_slope: f64,
    /// fitted d ln|P+Q| / dR
    pub far_rate: f64,
    pub predicted_far_rate: f64,
    /// both endpoint contributions decrease towards their endpoint
    pub vanishes: bool,
}

/// Integrated terms P + Q at t = c(z)·x for the kernel's closed form.
pub(crate) fn integrated_terms(u_inf: &DcheSolution, spec: &KernelSpec, z: Complex, x: Complex) -> Result<Complex> {
    let q = spec.effective();
    let c = spec.t_scale(z);
    let t = c * x;
    let sign = match spec.kind {
        KernelKind::K1 => 1.0,
        KernelKind::K2 => -1.0,
    };
    let front = q.b1 * q.b1 * x / (2.0 * I * q.omega * z * z) + sign * q.b1;
    let k = spec.regular_part(z, t) * (x - 1.0).powc(spec.exponent() + 1.0);
    Ok(front * k * u_inf.value(t)?)
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Samples P + Q near x = 1 and for large x and fits the rates at which
/// they vanish (or fail to).
pub fn verify_boundary_terms(
    u_inf: &DcheSolution,
    spec: &KernelSpec,
    z: Complex,
    eps: &[f64],
    radii: &[f64],
) -> Result<BoundaryReport> {
    if eps.len() < 2 || radii.len() < 2 {
        return Err(HeunError::Domain("need at least two points per endpoint".into()));
    }
    let near = eps
        .iter()
        .map(|&e| Ok((e, integrated_terms(u_inf, spec, z, Complex::new(1.0 + e, 0.0))?.norm())))
        .collect::<Result<Vec<_>>>()?;
    let far = radii
        .iter()
        .map(|&r| Ok((r, integrated_terms(u_inf, spec, z, Complex::new(r, 0.0))?.norm())))
        .collect::<Result<Vec<_>>>()?;
    let log_near: Vec<_> = near.iter().map(|&(e, m)| (e.ln(), m.ln())).collect();
    let log_far: Vec<_> = far.iter().map(|&(r, m)| (r, m.ln())).collect();
    let near_slope = slope(&log_near);
    let far_rate = slope(&log_far);
    let q = spec.effective();
    let predicted_far_rate = (2.0 * I * q.omega * spec.t_scale(z)).re;
    let by_eps = |a: &&(f64, f64), b: &&(f64, f64)| a.0.total_cmp(&b.0);
    let smallest_eps = near.iter().min_by(by_eps).unwrap().1;
    let largest_eps = near.iter().max_by(by_eps).unwrap().1;
    let nearest_r = far.iter().min_by(by_eps).unwrap().1;
    let farthest_r = far.iter().max_by(by_eps).unwrap().1;
    Ok(BoundaryReport {
        near,
        far,
        near_slope,
        predicted_near_slope: (spec.exponent() + 1.0).re,
        far_rate,
        predicted_far_rate,
        vanishes: near_slope > 0.0 && smallest_eps < largest_eps && far_rate < 0.0 && farthest_r < nearest_r,
    })
}
