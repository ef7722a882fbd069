use serde::{Deserialize, Serialize};

use super::{QesKind, QesMap, QesProblem};
use crate::error::{HeunError, Result};
use crate::jet::Jet;
use crate::solutions::{build_pair_coulomb_nu, build_pair_power, solve_nu, DcheSolution};
use crate::Complex;

const N_TERMS: usize = 200;
const NU_WINDOW: usize = 30;
const MISMATCH_TOL: f64 = 1e-6;
const DEFECT_TOL: f64 = 1e-9;

/// ψ(u) built from the solution decaying as u → +∞ (used for u ≥ u*) and
/// the one decaying as u → −∞ (used for u < u*), each scaled to 1 at u*.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenfunction {
    pub problem: QesProblem,
    pub energy: f64,
    pub map: QesMap,
    pub outer: DcheSolution,
    pub inner: DcheSolution,
    pub match_point: f64,
    pub outer_scale: Complex,
    pub inner_scale: Complex,
    /// |W(ψ_out, ψ_in)| / ((|ψ_out| + |ψ_out'|)(|ψ_in| + |ψ_in'|)) at u*
    pub mismatch: f64,
    pub quasi_polynomial: bool,
}

fn piece(map: &QesMap, sol: &DcheSolution, u: f64) -> Result<Jet> {
    map.gauge.apply(|z| Ok(sol.evaluate(z)?.jet), Complex::new(u, 0.0))
}

fn unit_scale(j: Jet) -> Result<Complex> {
    let s = if j.v.norm() >= 1e-8 * j.d1.norm() { j.v } else { j.d1 };
    if s.norm() == 0.0 || !s.is_finite() {
        return Err(HeunError::MatchFailure(f64::INFINITY));
    }
    Ok(1.0 / s)
}

/// Two-sided pair whose members decay at u → +∞ and u → −∞ for any
/// energy; ν is sought from `guess` first.
pub(crate) fn decaying_pair(
    problem: &QesProblem,
    energy: f64,
    guess: Option<Complex>,
) -> Result<(DcheSolution, DcheSolution, Complex)> {
    let params = problem.map().params(energy);
    let pair = match problem.kind {
        QesKind::DoubleMorse => 1,
        QesKind::SecondType => 2,
    };
    let nu = solve_nu(pair, &params, guess)?.root;
    let (outer, inner) = build_pair_coulomb_nu(pair, &params, nu, NU_WINDOW)?;
    Ok((outer, inner, nu))
}

pub(crate) fn piece_jet(map: &QesMap, sol: &DcheSolution, u: f64) -> Result<Jet> {
    piece(map, sol, u)
}

/// Eigenfunction at `energy`, matched at `match_point`. A terminating
/// double-Morse series is used when `energy` is in the quasi-exactly
/// solvable part of the spectrum, the two-sided series otherwise. Fails
/// with `MatchFailure` when `energy` is not an eigenvalue.
pub fn eigenfunction(problem: &QesProblem, energy: f64, match_point: f64) -> Result<Eigenfunction> {
    let map = problem.map();
    let params = map.params(energy);
    let mut pieces = None;
    if problem.kind == QesKind::DoubleMorse {
        let (outer, inner) = build_pair_power(1, &params, N_TERMS)?;
        if outer.is_finite_series() && outer.char_defect <= DEFECT_TOL {
            pieces = Some((outer, inner));
        }
    }
    let quasi_polynomial = pieces.is_some();
    let (outer, inner) = match pieces {
        Some(p) => p,
        None => {
            let (o, i, _) = decaying_pair(problem, energy, None)?;
            (o, i)
        }
    };
    let a = piece(&map, &outer, match_point)?;
    let b = piece(&map, &inner, match_point)?;
    let w = (a.v * b.d1 - a.d1 * b.v).norm();
    let size = |j: Jet| j.v.norm() + j.d1.norm();
    let mismatch = w / (size(a) * size(b)).max(1e-300);
    if !(mismatch <= MISMATCH_TOL) {
        return Err(HeunError::MatchFailure(mismatch));
    }
    Ok(Eigenfunction {
        problem: *problem,
        energy,
        outer_scale: unit_scale(a)?,
        inner_scale: unit_scale(b)?,
        map,
        outer,
        inner,
        match_point,
        mismatch,
        quasi_polynomial,
    })
}

impl Eigenfunction {
    pub fn jet(&self, u: f64) -> Result<Jet> {
        if u >= self.match_point {
            Ok(piece(&self.map, &self.outer, u)?.scale(self.outer_scale))
        } else {
            Ok(piece(&self.map, &self.inner, u)?.scale(self.inner_scale))
        }
    }

    pub fn value(&self, u: f64) -> Result<Complex> {
        Ok(self.jet(u)?.v)
    }

    /// |ψ'' + (ℰ − V)ψ| relative to the size of its terms.
    pub fn schrodinger_residual(&self, u: f64) -> Result<f64> {
        let j = self.jet(u)?;
        let k = self.energy - self.problem.potential(u);
        let scale = j.d2.norm() + k.abs() * j.v.norm();
        let r = (j.d2 + k * j.v).norm();
        Ok(if scale == 0.0 { r } else { r / scale })
    }

    fn require_symmetric(&self) -> Result<()> {
        if self.problem.kind != QesKind::DoubleMorse || self.problem.c != 0.0 {
            return Err(HeunError::Condition("parity needs the double-Morse potential with C = 0".into()));
        }
        Ok(())
    }

    /// ψ(u) + ψ(−u) or ψ(u) − ψ(−u).
    pub fn parity_combination(&self, u: f64, even: bool) -> Result<Complex> {
        self.require_symmetric()?;
        let (a, b) = (self.value(u)?, self.value(-u)?);
        Ok(if even { a + b } else { a - b })
    }

    /// +1 for an even, −1 for an odd eigenfunction.
    pub fn parity(&self) -> Result<i8> {
        self.require_symmetric()?;
        let mut even = 0.0f64;
        let mut odd = 0.0f64;
        for u in [0.3, 0.9, 1.7] {
            even += self.parity_combination(u, true)?.norm();
            odd += self.parity_combination(u, false)?.norm();
        }
        Ok(if even >= odd { 1 } else { -1 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub u_max: f64,
    pub peak: f64,
    pub left_tail: f64,
    pub right_tail: f64,
    pub pass: bool,
}

/// ψ is square integrable on the sampled range if both tails at ±u_max are
/// below 1e-6 of the peak and still falling.
pub fn regularity_check<F>(psi: F, u_max: f64) -> Result<RegularityReport>
where
    F: Fn(f64) -> Result<Complex>,
{
    if !(u_max > 1.0) {
        return Err(HeunError::Domain("u_max must exceed 1".into()));
    }
    let n = 80;
    let mut peak = 0.0f64;
    for k in 0..=n {
        let u = -u_max + 2.0 * u_max * k as f64 / n as f64;
        let v = psi(u)?.norm();
        if !v.is_finite() {
            return Ok(RegularityReport {
                u_max,
                peak: f64::INFINITY,
                left_tail: f64::INFINITY,
                right_tail: f64::INFINITY,
                pass: false,
            });
        }
        peak = peak.max(v);
    }
    let left_tail = psi(-u_max)?.norm();
    let right_tail = psi(u_max)?.norm();
    let falling = psi(-u_max + 0.5)?.norm() >= left_tail && psi(u_max - 0.5)?.norm() >= right_tail;
    let pass = peak > 0.0 && falling && left_tail <= 1e-6 * peak && right_tail <= 1e-6 * peak;
    Ok(RegularityReport {
        u_max,
        peak,
        left_tail,
        right_tail,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qes::{qes_spectrum, QesProblem};

    #[test]
    fn quasi_polynomial_states() {
        let p = QesProblem::double_morse(2.0, 0.0, 1.0).unwrap();
        let spec = qes_spectrum(&p).unwrap();
        let mut parities = Vec::new();
        for &e in &spec.energies {
            let ef = eigenfunction(&p, e, 0.0).unwrap();
            assert!(ef.quasi_polynomial);
            for u in [-2.5, -0.4, 0.0, 0.8, 3.0] {
                let r = ef.schrodinger_residual(u).unwrap();
                assert!(r < 1e-10, "E = {e}, u = {u}: {r}");
            }
            assert!(regularity_check(|u| ef.value(u), 6.0).unwrap().pass);
            parities.push(ef.parity().unwrap());
        }
        // states alternate in parity with increasing energy
        assert_eq!(parities, vec![1, -1, 1]);
    }

    #[test]
    fn non_eigenvalue_fails_to_match() {
        let p = QesProblem::double_morse(2.0, 0.0, 0.5).unwrap();
        assert!(matches!(eigenfunction(&p, 0.1, 0.0), Err(HeunError::MatchFailure(_))));
        let p = QesProblem::double_morse(2.0, 0.0, 0.3).unwrap();
        assert!(matches!(eigenfunction(&p, 0.1, 0.0), Err(HeunError::MatchFailure(_))));
    }

    #[test]
    fn constant_is_not_regular() {
        assert!(!regularity_check(|_| Ok(Complex::new(1.0, 0.0)), 6.0).unwrap().pass);
    }
}
