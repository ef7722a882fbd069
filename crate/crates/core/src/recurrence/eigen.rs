use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::ThreeTermCoeffs;
use crate::error::{HeunError, Result};
use crate::Complex;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagSpectrum {
    /// Sorted by real part.
    pub eigenvalues: Vec<Complex>,
    /// All α_jγ_{j+1} > 0 with a real diagonal, so the eigenvalues are real
    /// and distinct.
    pub certified_real: bool,
    /// Some α_jγ_{j+1} ≤ 0 (or non-real); reality is then not guaranteed.
    pub theorem_violation: bool,
    /// max_j |det(M − λ_j)| / ‖M‖^N
    pub det_residual: f64,
}

struct Tridiag {
    diag: Vec<Complex>,
    /// products α_{k−1}γ_k for k = 1..N−1
    offprod: Vec<Complex>,
}

impl Tridiag {
    /// det(M − x) and its x-derivative via the continuant recurrence.
    fn char_poly(&self, x: Complex) -> (Complex, Complex) {
        let mut p_prev = Complex::new(1.0, 0.0);
        let mut dp_prev = Complex::new(0.0, 0.0);
        let mut p = self.diag[0] - x;
        let mut dp = Complex::new(-1.0, 0.0);
        for k in 1..self.diag.len() {
            let dk = self.diag[k] - x;
            let q = self.offprod[k - 1];
            let p_next = dk * p - q * p_prev;
            let dp_next = -p + dk * dp - q * dp_prev;
            p_prev = p;
            dp_prev = dp;
            p = p_next;
            dp = dp_next;
        }
        (p, dp)
    }
}

/// Simultaneous Aberth iteration on the characteristic polynomial.
fn aberth(t: &Tridiag, radius: f64, center: Complex) -> Vec<Complex> {
    let n = t.diag.len();
    let mut z: Vec<Complex> = (0..n)
        .map(|j| center + Complex::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut biggest = 0.0f64;
        for j in 0..n {
            let (p, dp) = t.char_poly(z[j]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / dp;
            let s: Complex = (0..n).filter(|&k| k != j).map(|k| 1.0 / (z[j] - z[k])).sum();
            let corr = w / (1.0 - w * s);
            if corr.is_finite() {
                z[j] -= corr;
                biggest = biggest.max(corr.norm() / (1.0 + z[j].norm()));
            }
        }
        if biggest < 1e-16 {
            break;
        }
    }
    z
}

/// Eigenvalues of the N×N tridiagonal matrix with β_n on the diagonal, α_n
/// above and γ_n below it (rows n = 0..N−1).
pub fn tridiag_eigen(coeffs: &ThreeTermCoeffs, size: usize) -> Result<TridiagSpectrum> {
    if size == 0 {
        return Err(HeunError::Domain("matrix size must be positive".into()));
    }
    let diag: Vec<Complex> = (0..size as i64).map(|n| coeffs.beta(n)).collect();
    let sup: Vec<Complex> = (0..size as i64 - 1).map(|n| coeffs.alpha(n)).collect();
    let sub: Vec<Complex> = (1..size as i64).map(|n| coeffs.gamma(n)).collect();
    if diag.iter().chain(&sup).chain(&sub).any(|v| !v.is_finite()) {
        return Err(HeunError::Denominator {
            index: 0,
            remedy: "matrix entries must be finite".into(),
        });
    }
    let offprod: Vec<Complex> = sup.iter().zip(&sub).map(|(a, g)| a * g).collect();
    let t = Tridiag { diag, offprod };

    let norm = (0..size)
        .map(|k| {
            t.diag[k].norm()
                + if k + 1 < size { sup[k].norm() } else { 0.0 }
                + if k > 0 { sub[k - 1].norm() } else { 0.0 }
        })
        .fold(0.0, f64::max)
        .max(1e-300);

    let mut eig = if size <= 12 {
        let center = t.diag.iter().sum::<Complex>() / size as f64;
        aberth(&t, norm + center.norm() + 1.0, center)
    } else {
        let m = DMatrix::<Complex>::from_fn(size, size, |r, c| {
            if r == c {
                t.diag[r]
            } else if c == r + 1 {
                sup[r]
            } else if r == c + 1 {
                sub[c]
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        let schur = m.schur();
        schur
            .eigenvalues()
            .ok_or_else(|| HeunError::Convergence("Schur decomposition failed".into()))?
            .iter()
            .copied()
            .collect()
    };

    let real_diag = t.diag.iter().all(|d| d.im.abs() <= 1e-12 * (1.0 + d.norm()));
    let positive = t
        .offprod
        .iter()
        .all(|q| q.re > 0.0 && q.im.abs() <= 1e-12 * q.norm());
    let certified_real = real_diag && positive;
    if certified_real {
        for e in &mut eig {
            e.im = 0.0;
        }
    }
    eig.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let det_residual = eig
        .iter()
        .map(|&e| t.char_poly(e).0.norm() / norm.powi(size as i32))
        .fold(0.0, f64::max);
    Ok(TridiagSpectrum {
        eigenvalues: eig,
        certified_real,
        theorem_violation: !positive,
        det_residual,
    })
}
