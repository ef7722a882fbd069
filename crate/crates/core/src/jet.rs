//! Second-order jets: a value together with its first two derivatives.

use std::ops::{Add, Mul, Neg, Sub};

use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub v: Complex,
    pub d1: Complex,
    pub d2: Complex,
}

impl Jet {
    pub const fn new(v: Complex, d1: Complex, d2: Complex) -> Self {
        Jet { v, d1, d2 }
    }

    pub fn constant(v: Complex) -> Self {
        Jet::new(v, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0))
    }

    /// The identity function evaluated at `x`.
    pub fn variable(x: Complex) -> Self {
        Jet::new(x, Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))
    }

    pub fn scale(self, k: Complex) -> Self {
        Jet::new(self.v * k, self.d1 * k, self.d2 * k)
    }

    /// exp of a jet.
    pub fn exp(self) -> Self {
        let e = self.v.exp();
        Jet::new(e, e * self.d1, e * (self.d2 + self.d1 * self.d1))
    }

    /// Composition `outer ∘ inner`, where `outer` holds derivatives with
    /// respect to its own argument evaluated at `inner.v`.
    pub fn compose(outer: Jet, inner: Jet) -> Self {
        Jet::new(
            outer.v,
            outer.d1 * inner.d1,
            outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2,
        )
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v, -self.d1, -self.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_composition() {
        // f(x) = x² at x = 3 via product, then exp(f)
        let x = Jet::variable(Complex::new(3.0, 0.0));
        let sq = x * x;
        assert_eq!(sq.v, Complex::new(9.0, 0.0));
        assert_eq!(sq.d1, Complex::new(6.0, 0.0));
        assert_eq!(sq.d2, Complex::new(2.0, 0.0));
        let e = sq.exp();
        let ev = 9f64.exp();
        assert!((e.d1.re - 6.0 * ev).abs() < 1e-9 * ev);
        assert!((e.d2.re - (2.0 + 36.0) * ev).abs() < 1e-9 * ev);
    }
}
