//! Term-by-term evaluation of Σ b_n φ_n(z) with two z-derivatives.

use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::jet::Jet;
use crate::recurrence::CoeffSeq;
use crate::specialfn::hyp_u;
use crate::Complex;

/// The n-th basis function of a series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Basis {
    /// (c z)^{−n}
    PowerDesc { c: Complex },
    /// (c z)^{n}
    PowerAsc { c: Complex },
    /// [y^n]·U(a0 + n, b0 + step·n, y) with y = k z, or y = k/z when
    /// `inverse`; the factor y^n is present when `with_power`.
    HypU {
        a0: Complex,
        b0: Complex,
        step: u8,
        k: Complex,
        inverse: bool,
        with_power: bool,
    },
}

impl Basis {
    pub fn argument(&self, z: Complex) -> Option<Complex> {
        match *self {
            Basis::HypU { k, inverse, .. } => Some(if inverse { k / z } else { k * z }),
            _ => None,
        }
    }
}

/// Sum of a series together with the size of its largest term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub jet: Jet,
    /// max over n of |b_n| · max(|φ_n|, |φ_n'|, |φ_n''|)
    pub max_term: f64,
    pub terms: usize,
}

const NEGLIGIBLE: f64 = 1e-16;
const RUN: usize = 3;

/// Lazily extended values f_n = U(a0+n, b0+n, y).
struct Diagonal {
    a: Complex,
    b: Complex,
    y: Complex,
    direct_below: usize,
    vals: Vec<Complex>,
}

impl Diagonal {
    fn new(a: Complex, b: Complex, y: Complex) -> Self {
        Diagonal {
            a,
            b,
            y,
            direct_below: y.norm().ceil() as usize + 2,
            vals: Vec::new(),
        }
    }

    fn get(&mut self, n: usize) -> Result<Complex> {
        while self.vals.len() <= n {
            let m = self.vals.len();
            let denom = self.y * (self.a + (m as f64 - 1.0));
            let v = if m < self.direct_below.max(2) || denom.norm() == 0.0 {
                hyp_u(self.a + m as f64, self.b + m as f64, self.y)?
            } else {
                // y (a+j+1) f_{j+2} = (b+j−y) f_{j+1} + f_j with j = m−2
                let j = (m - 2) as f64;
                ((self.b + j - self.y) * self.vals[m - 1] + self.vals[m - 2]) / denom
            };
            self.vals.push(v);
        }
        Ok(self.vals[n])
    }
}

/// Jet in y of y^m.
fn power_jet(y: Complex, m: i64) -> Jet {
    let mf = m as f64;
    let v = y.powi(m as i32);
    Jet::new(v, mf * v / y, mf * (mf - 1.0) * v / (y * y))
}

struct TermEvaluator {
    basis: Basis,
    z: Complex,
    diag: Option<Diagonal>,
}

impl TermEvaluator {
    fn new(basis: Basis, z: Complex) -> Self {
        let diag = match basis {
            Basis::HypU { a0, b0, step: 1, .. } => Some(Diagonal::new(a0, b0, basis.argument(z).unwrap())),
            _ => None,
        };
        TermEvaluator { basis, z, diag }
    }

    /// φ_n as a jet in z.
    fn term(&mut self, n: i64) -> Result<Jet> {
        let z = self.z;
        match self.basis {
            Basis::PowerDesc { c } => {
                let v = (c * z).powi(-(n as i32));
                let nf = n as f64;
                Ok(Jet::new(v, -nf * v / z, nf * (nf + 1.0) * v / (z * z)))
            }
            Basis::PowerAsc { c } => {
                let v = (c * z).powi(n as i32);
                let nf = n as f64;
                Ok(Jet::new(v, nf * v / z, nf * (nf - 1.0) * v / (z * z)))
            }
            Basis::HypU {
                a0,
                b0,
                step,
                k,
                inverse,
                with_power,
            } => {
                let y = if inverse { k / z } else { k * z };
                let a = a0 + n as f64;
                let b = b0 + (step as f64) * n as f64;
                let (u, u1) = match (&mut self.diag, n >= 0) {
                    (Some(d), true) => (d.get(n as usize)?, -a * d.get(n as usize + 1)?),
                    _ => (hyp_u(a, b, y)?, -a * hyp_u(a + 1.0, b + 1.0, y)?),
                };
                let u2 = ((y - b) * u1 + a * u) / y;
                let mut in_y = Jet::new(u, u1, u2);
                if with_power {
                    in_y = power_jet(y, n) * in_y;
                }
                let yj = if inverse {
                    Jet::new(y, -y / z, 2.0 * y / (z * z))
                } else {
                    Jet::new(y, k, Complex::new(0.0, 0.0))
                };
                Ok(Jet::compose(in_y, yj))
            }
        }
    }
}

fn magnitude(j: &Jet) -> f64 {
    j.v.norm().max(j.d1.norm()).max(j.d2.norm())
}

/// Sums one direction of the series (n = start, start+dir, …) until terms
/// become negligible or the coefficients run out.
fn sum_direction(
    seq: &CoeffSeq,
    eval: &mut TermEvaluator,
    start: i64,
    dir: i64,
    max_terms: usize,
) -> Result<(Jet, f64, usize, bool)> {
    let mut acc = Jet::default();
    let mut peak = 0.0f64;
    let mut run = 0;
    let mut used = 0;
    let mut n = start;
    let finite = seq.finite.is_some();
    while n >= seq.n_min && n <= seq.n_max() && used < max_terms {
        let b = seq.get(n);
        used += 1;
        if b.norm() == 0.0 {
            run += 1;
            if run >= RUN && !finite {
                return Ok((acc, peak, used, true));
            }
            n += dir;
            continue;
        }
        let t = eval.term(n)?.scale(b);
        if !t.is_finite() {
            return Err(HeunError::Convergence(format!("term n = {n} overflowed")));
        }
        let m = magnitude(&t);
        peak = peak.max(m);
        acc = acc + t;
        if m <= NEGLIGIBLE * peak {
            run += 1;
            if run >= RUN {
                return Ok((acc, peak, used, true));
            }
        } else {
            run = 0;
        }
        n += dir;
    }
    Ok((acc, peak, used, finite || seq.values.is_empty()))
}

/// Evaluates Σ_n b_n φ_n(z) over the index range of `seq`.
pub fn sum_series(seq: &CoeffSeq, basis: Basis, z: Complex, max_terms: usize) -> Result<SeriesValue> {
    let mut eval = TermEvaluator::new(basis, z);
    let (up, peak_up, used_up, done_up) = sum_direction(seq, &mut eval, 0.max(seq.n_min), 1, max_terms)?;
    let (down, peak_down, used_down, done_down) = if seq.n_min < 0 {
        sum_direction(seq, &mut eval, -1, -1, max_terms)?
    } else {
        (Jet::default(), 0.0, 0, true)
    };
    let peak = peak_up.max(peak_down);
    if !(done_up && done_down) {
        // the coefficients ran out; accept only if the tail is already small
        let last_up = seq.get(seq.n_max());
        let tail = if last_up.norm() == 0.0 { 0.0 } else { magnitude(&eval.term(seq.n_max())?.scale(last_up)) };
        let tail_down = if seq.n_min < 0 {
            let b = seq.get(seq.n_min);
            if b.norm() == 0.0 { 0.0 } else { magnitude(&eval.term(seq.n_min)?.scale(b)) }
        } else {
            0.0
        };
        if tail.max(tail_down) > 1e-12 * peak {
            return Err(HeunError::Convergence(format!(
                "series not converged after {} terms at z = {z}; increase the number of terms",
                used_up + used_down
            )));
        }
    }
    Ok(SeriesValue {
        jet: up + down,
        max_term: peak,
        terms: used_up + used_down,
    })
}
