//! Three-term recurrences α_n b_{n+1} + β_n b_n + γ_n b_{n−1} = 0: forward
//! and minimal-solution generation, continued-fraction characteristic
//! equations, finite-series detection and tridiagonal spectra.

mod cf;
mod eigen;
mod finite;
mod generate;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use cf::{char_root, char_value, CharRoot, RootOptions};
pub use eigen::{tridiag_eigen, TridiagSpectrum};
pub use finite::{finite_series_condition, integer_offset};
pub(crate) use generate::generate_minimal_two_sided_to;
pub use generate::{
    generate, generate_minimal, generate_minimal_two_sided, minimal_ratio_check, row_residuals,
    MinimalRatioReport,
};

use crate::Complex;

pub type CoeffFn = Arc<dyn Fn(i64) -> Complex + Send + Sync>;

/// Which first rows a one-sided recurrence uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecurrenceForm {
    /// α_0 b_1 + β_0 b_0 = 0, then the generic row.
    Standard,
    /// Same rows as `Standard`; α_{−1} vanishes for the truncated series.
    R1a,
    /// Row 1 carries (α_{−1} + γ_1) b_0.
    R2a,
    /// Row 0 carries (β_0 + α_{−1}) b_0.
    R3a,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexDomain {
    OneSided,
    TwoSided,
}

#[derive(Clone)]
pub struct ThreeTermCoeffs {
    alpha: CoeffFn,
    beta: CoeffFn,
    gamma: CoeffFn,
    pub form: RecurrenceForm,
    pub domain: IndexDomain,
}

impl fmt::Debug for ThreeTermCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThreeTermCoeffs")
            .field("alpha0", &self.alpha(0))
            .field("beta0", &self.beta(0))
            .field("gamma1", &self.gamma(1))
            .field("form", &self.form)
            .field("domain", &self.domain)
            .finish()
    }
}

impl ThreeTermCoeffs {
    pub fn new<A, B, G>(alpha: A, beta: B, gamma: G) -> Self
    where
        A: Fn(i64) -> Complex + Send + Sync + 'static,
        B: Fn(i64) -> Complex + Send + Sync + 'static,
        G: Fn(i64) -> Complex + Send + Sync + 'static,
    {
        ThreeTermCoeffs {
            alpha: Arc::new(alpha),
            beta: Arc::new(beta),
            gamma: Arc::new(gamma),
            form: RecurrenceForm::Standard,
            domain: IndexDomain::OneSided,
        }
    }

    pub fn with_form(mut self, form: RecurrenceForm) -> Self {
        self.form = form;
        self
    }

    pub fn two_sided(mut self) -> Self {
        self.domain = IndexDomain::TwoSided;
        self
    }

    pub fn alpha(&self, n: i64) -> Complex {
        (self.alpha)(n)
    }

    pub fn beta(&self, n: i64) -> Complex {
        (self.beta)(n)
    }

    pub fn gamma(&self, n: i64) -> Complex {
        (self.gamma)(n)
    }

    /// β_n + δ for every n.
    pub fn shift_beta(&self, delta: Complex) -> Self {
        let beta = self.beta.clone();
        ThreeTermCoeffs {
            beta: Arc::new(move |n| beta(n) + delta),
            ..self.clone()
        }
    }

    /// All three coefficients multiplied by k.
    pub fn scaled(&self, k: Complex) -> Self {
        let (a, b, g) = (self.alpha.clone(), self.beta.clone(), self.gamma.clone());
        ThreeTermCoeffs {
            alpha: Arc::new(move |n| k * a(n)),
            beta: Arc::new(move |n| k * b(n)),
            gamma: Arc::new(move |n| k * g(n)),
            ..self.clone()
        }
    }

    /// The similarity c_n = iⁿ b_n: α_n → −iα_n, γ_n → iγ_n.
    pub fn i_power_similarity(&self) -> Self {
        let (a, g) = (self.alpha.clone(), self.gamma.clone());
        let i = Complex::new(0.0, 1.0);
        ThreeTermCoeffs {
            alpha: Arc::new(move |n| -i * a(n)),
            gamma: Arc::new(move |n| i * g(n)),
            ..self.clone()
        }
    }

    /// The effective coefficient multiplying b_{n−1} in row n, accounting
    /// for the form-specific first rows.
    pub(crate) fn row_gamma(&self, n: i64) -> Complex {
        if self.form == RecurrenceForm::R2a && n == 1 {
            self.alpha(-1) + self.gamma(1)
        } else {
            self.gamma(n)
        }
    }

    /// The effective diagonal coefficient of row n.
    pub(crate) fn row_beta(&self, n: i64) -> Complex {
        if self.form == RecurrenceForm::R3a && n == 0 {
            self.beta(0) + self.alpha(-1)
        } else {
            self.beta(n)
        }
    }
}

/// Coefficients b_n for n in [n_min, n_min + len), normalized to b_0 = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffSeq {
    pub n_min: i64,
    pub values: Vec<Complex>,
    /// Number N of nonzero terms when the series terminates.
    pub finite: Option<usize>,
}

impl CoeffSeq {
    pub fn n_max(&self) -> i64 {
        self.n_min + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Complex {
        if n < self.n_min || n > self.n_max() {
            return Complex::new(0.0, 0.0);
        }
        self.values[(n - self.n_min) as usize]
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.n_min..=self.n_max()
    }

    /// Keeps b_0..b_{N−1} and marks the sequence as terminating.
    pub fn truncate_finite(mut self, n_terms: usize) -> Self {
        let keep = (n_terms as i64 - self.n_min).max(0) as usize;
        self.values.truncate(keep);
        self.finite = Some(n_terms);
        self
    }
}

/// Π(n + c_i) / Π(n + d_j), treating factor pairs with c_i ≈ d_j as the
/// removable ratio 1.
pub fn affine_ratio(n: f64, num: &[Complex], den: &[Complex]) -> Complex {
    const CANCEL: f64 = 1e-9;
    let mut used = vec![false; den.len()];
    let mut value = Complex::new(1.0, 0.0);
    for &c in num {
        let hit = den
            .iter()
            .enumerate()
            .position(|(j, &d)| !used[j] && (c - d).norm() < CANCEL);
        match hit {
            Some(j) => used[j] = true,
            None => value *= n + c,
        }
    }
    for (j, &d) in den.iter().enumerate() {
        if !used[j] {
            value /= n + d;
        }
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_ratio_cancels_removable_factors() {
        let c = |x: f64| Complex::new(x, 0.0);
        // (n+1)/(n+1) at n = −1 is 1
        assert_eq!(affine_ratio(-1.0, &[c(1.0), c(2.0)], &[c(1.0)]), c(1.0));
        assert_eq!(affine_ratio(2.0, &[c(1.0)], &[c(2.0)]), c(0.75));
        assert!(!affine_ratio(0.0, &[c(1.0)], &[c(0.0)]).is_finite());
    }

    #[test]
    fn seq_accessors() {
        let s = CoeffSeq {
            n_min: -2,
            values: vec![Complex::new(3.0, 0.0); 5],
            finite: None,
        };
        assert_eq!(s.n_max(), 2);
        assert_eq!(s.get(3), Complex::new(0.0, 0.0));
        assert_eq!(s.indices().count(), 5);
    }
}
