use serde::{Deserialize, Serialize};

use std::cell::Cell;

use super::eigenfunction::{decaying_pair, piece_jet};
use super::{eigenfunction, QesKind, QesProblem};
use crate::error::{HeunError, Result};
use crate::recurrence::{char_value, tridiag_eigen, ThreeTermCoeffs};
use crate::solutions::pair_coeffs;
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumMethod {
    /// eigenvalues of the (2s+1)×(2s+1) matrix of a terminating series
    Tridiagonal,
    /// zeros of the characteristic continued fraction of a terminating
    /// series
    ContinuedFraction,
    /// zeros of the Wronskian of the two decaying two-sided series
    Matching,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyCertificate {
    pub energy: f64,
    /// imaginary part before it was discarded
    pub imag: f64,
    /// normalized determinant, |characteristic value| / max(1, |β_0|), or
    /// the match residual
    pub residual: f64,
    /// Wronskian mismatch of the two eigenfunction pieces
    pub mismatch: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub problem: QesProblem,
    pub method: SpectrumMethod,
    /// ascending
    pub energies: Vec<f64>,
    pub certificates: Vec<EnergyCertificate>,
    /// α_jγ_{j+1}; all positive means real, simple eigenvalues
    pub off_diagonal_products: Vec<f64>,
    pub certified_real: bool,
}

fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Matrix M with Mb = ℰb for a terminating double-Morse series: β̄_n on the
/// diagonal, α_n above and γ_n below. Pair 1 expands in e^{−u}, pair 3 in
/// e^{u}.
pub fn qes_matrix(problem: &QesProblem, pair_id: u8) -> Result<ThreeTermCoeffs> {
    if problem.kind != QesKind::DoubleMorse {
        return Err(HeunError::Condition(
            "only the double-Morse potential has normalizable quasi-polynomial solutions".into(),
        ));
    }
    problem.qes_size()?;
    let (b, s) = (problem.b, problem.s);
    let cc = match pair_id {
        1 => problem.c,
        3 => -problem.c,
        _ => return Err(HeunError::Domain(format!("pair {pair_id} does not terminate here; use 1 or 3"))),
    };
    Ok(ThreeTermCoeffs::new(
        |n| c(-(n as f64 + 1.0)),
        move |n| {
            let n = n as f64;
            c(-s * (s + cc) - n * (n - cc - 2.0 * s))
        },
        move |n| c(b * b / 4.0 * (n as f64 - 2.0 * s - 1.0)),
    ))
}

/// The 2s + 1 energies with quasi-polynomial eigenfunctions.
pub fn qes_spectrum(problem: &QesProblem) -> Result<SpectrumResult> {
    let size = problem.qes_size()?;
    let m = qes_matrix(problem, 1)?;
    let spec = tridiag_eigen(&m, size)?;
    let off_diagonal_products = (0..size as i64 - 1).map(|j| (m.alpha(j) * m.gamma(j + 1)).re).collect();
    let certificates = spec
        .eigenvalues
        .iter()
        .map(|e| EnergyCertificate {
            energy: e.re,
            imag: e.im,
            residual: spec.det_residual,
            mismatch: None,
        })
        .collect();
    Ok(SpectrumResult {
        problem: *problem,
        method: SpectrumMethod::Tridiagonal,
        energies: spec.eigenvalues.iter().map(|e| e.re).collect(),
        certificates,
        off_diagonal_products,
        certified_real: spec.certified_real,
    })
}

const CF_DEPTH: usize = 4000;

fn char_pair(problem: &QesProblem) -> u8 {
    match problem.kind {
        QesKind::DoubleMorse => 1,
        QesKind::SecondType => 2,
    }
}

/// (characteristic value, its scale) at energy e.
fn char_fn(problem: &QesProblem, e: f64) -> Result<(f64, f64)> {
    let coeffs = pair_coeffs(char_pair(problem), &problem.map().params(e))?;
    let v = char_value(&coeffs, CF_DEPTH, 1e-16)?;
    Ok((v.re, coeffs.row_beta(0).norm().max(1.0)))
}

/// Illinois false position on a sign change of `f`.
fn refine<F>(f: &F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut side = 0;
    for _ in 0..200 {
        let x = (a * fb - b * fa) / (fb - fa);
        let x = if x.is_finite() && x > a.min(b) && x < a.max(b) { x } else { 0.5 * (a + b) };
        let fx = f(x)?;
        if fx == 0.0 || (b - a).abs() <= 1e-14 * (1.0 + x.abs()) {
            return Ok(x);
        }
        if fx.signum() == fb.signum() {
            b = x;
            fb = fx;
            if side == -1 {
                fa /= 2.0;
            }
            side = -1;
        } else {
            a = x;
            fa = fx;
            if side == 1 {
                fb /= 2.0;
            }
            side = 1;
        }
    }
    Ok(0.5 * (a + b))
}

/// Roots of `f` on a uniform grid over the window, refined. Grid points
/// where `f` cannot be evaluated split the scan.
fn scan_roots<F>(f: &F, lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let grid: Vec<f64> = (0..=steps).map(|k| lo + (hi - lo) * k as f64 / steps as f64).collect();
    let values: Vec<Option<f64>> = grid.iter().map(|&e| f(e).ok()).collect();
    let mut roots = Vec::new();
    for k in 0..steps {
        let (Some(fa), Some(fb)) = (values[k], values[k + 1]) else {
            continue;
        };
        if fa == 0.0 {
            roots.push(grid[k]);
        } else if fb != 0.0 && fa.signum() != fb.signum() {
            roots.push(refine(f, grid[k], fa, grid[k + 1], fb)?);
        }
    }
    if let Some(&Some(0.0)) = values.last() {
        roots.push(hi);
    }
    Ok(roots)
}

/// Points beyond which V exceeds `level` for the rest of the range, on
/// each side of the origin.
fn forbidden_points(problem: &QesProblem, level: f64) -> Result<(f64, f64)> {
    let reach = 12.0;
    let find = |dir: f64| -> Option<f64> {
        let n = 240;
        let mut start = None;
        for k in (0..=n).rev() {
            let u = dir * reach * k as f64 / n as f64;
            if problem.potential(u) > level {
                start = Some(u);
            } else {
                break;
            }
        }
        start.filter(|u| u.abs() < reach).map(|u| u + dir * 0.25)
    };
    match (find(-1.0), find(1.0)) {
        (Some(l), Some(r)) => Ok((l, r)),
        _ => Err(HeunError::Domain(format!("energy {level} is not below the potential walls"))),
    }
}

/// Energies in [lo, hi], at most `count` of the lowest. A double-Morse
/// problem with 2s a non-negative integer gives the zeros of the
/// terminating continued fraction (the quasi-exactly solvable levels);
/// otherwise the levels are zeros of the Wronskian at u = 0 of the two
/// decaying two-sided series, each normalized in its forbidden region.
/// Every level is confirmed by matching the eigenfunction pieces.
pub fn infinite_spectrum(problem: &QesProblem, window: (f64, f64), count: usize) -> Result<SpectrumResult> {
    let (lo, hi) = window;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(HeunError::Domain(format!("bad energy window ({lo}, {hi})")));
    }
    let terminating = problem.kind == QesKind::DoubleMorse && problem.is_qes();
    let (method, candidates) = if terminating {
        let f = |e: f64| -> Result<f64> {
            let (v, scale) = char_fn(problem, e)?;
            Ok(v / scale)
        };
        let roots = scan_roots(&f, lo, hi, 400 + 100 * count.min(50))?;
        // a sign change across a pole leaves |f| large
        let roots = roots.into_iter().filter(|&e| f(e).map_or(false, |v| v.abs() <= 1e-8)).collect();
        (SpectrumMethod::ContinuedFraction, roots)
    } else {
        let map = problem.map();
        let (u_l, u_r) = forbidden_points(problem, hi + 1.0)?;
        let nu = Cell::new(None);
        let f = |e: f64| -> Result<f64> {
            let (outer, inner, root) = decaying_pair(problem, e, nu.get())?;
            nu.set(Some(root));
            let a = piece_jet(&map, &outer, 0.0)?.scale(1.0 / piece_jet(&map, &outer, u_r)?.v);
            let b = piece_jet(&map, &inner, 0.0)?.scale(1.0 / piece_jet(&map, &inner, u_l)?.v);
            Ok((a.d1 * b.v - a.v * b.d1).re)
        };
        (SpectrumMethod::Matching, scan_roots(&f, lo, hi, 60 + 20 * count.min(50))?)
    };
    let mut certificates: Vec<EnergyCertificate> = Vec::new();
    for root in candidates {
        if certificates.len() >= count {
            break;
        }
        if certificates.iter().any(|c| (c.energy - root).abs() <= 1e-9 * (1.0 + root.abs())) {
            continue;
        }
        let ef = match eigenfunction(problem, root, 0.0) {
            Ok(ef) => ef,
            Err(HeunError::MatchFailure(_)) => continue,
            Err(e) => return Err(e),
        };
        let residual = if terminating { char_fn(problem, root).map(|(v, s)| v.abs() / s)? } else { ef.mismatch };
        certificates.push(EnergyCertificate {
            energy: root,
            imag: 0.0,
            residual,
            mismatch: Some(ef.mismatch),
        });
    }
    if certificates.is_empty() {
        return Err(HeunError::NoRoots { lo, hi });
    }
    Ok(SpectrumResult {
        problem: *problem,
        method,
        energies: certificates.iter().map(|c| c.energy).collect(),
        certificates,
        off_diagonal_products: Vec::new(),
        certified_real: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spectra() {
        let r = qes_spectrum(&QesProblem::double_morse(2.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(r.energies, vec![0.0]);
        let r = qes_spectrum(&QesProblem::double_morse(2.0, 0.0, 0.5).unwrap()).unwrap();
        assert!(r.certified_real);
        assert!((r.energies[0] + 1.25).abs() < 1e-13 && (r.energies[1] - 0.75).abs() < 1e-13);
        let r = qes_spectrum(&QesProblem::double_morse(2.0, 0.0, 1.0).unwrap()).unwrap();
        let r17 = 17f64.sqrt();
        for (g, x) in r.energies.iter().zip([(-1.0 - r17) / 2.0, -1.0, (-1.0 + r17) / 2.0]) {
            assert!((g - x).abs() < 1e-12);
        }
        assert!(r.off_diagonal_products.iter().all(|&p| p > 0.0));
    }

    #[test]
    fn rejects_non_qes_and_second_type() {
        assert!(matches!(
            qes_spectrum(&QesProblem::double_morse(1.0, 0.0, 0.3).unwrap()),
            Err(HeunError::NotQes(_))
        ));
        assert!(matches!(
            qes_spectrum(&QesProblem::second_type(1.0, 1.0).unwrap()),
            Err(HeunError::Condition(_))
        ));
    }

    #[test]
    fn expansion_in_either_direction_agrees() {
        let p = QesProblem::double_morse(1.3, 0.8, 1.5).unwrap();
        let a = tridiag_eigen(&qes_matrix(&p, 1).unwrap(), 4).unwrap();
        let b = tridiag_eigen(&qes_matrix(&p, 3).unwrap(), 4).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((x - y).norm() < 1e-11, "{x} {y}");
        }
    }
}
