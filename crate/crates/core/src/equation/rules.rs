//! The transformation rules r1, r2, r3 mapping solutions to solutions.

use serde::{Deserialize, Serialize};

use super::gauge::{GaugeMap, GaugeStage, VarMap};
use super::DcheParams;
use crate::{Complex, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
}

/// Returns the parameters a solution formula must be evaluated with, and the
/// gauge that carries the result back to a solution for `p`.
pub fn apply_rule(rule: Rule, p: &DcheParams) -> (DcheParams, GaugeMap) {
    let zero = Complex::new(0.0, 0.0);
    let h = p.h();
    let ie = p.i_eta();
    match rule {
        Rule::R1 => {
            let b3 = p.b3 - (h + ie) * (h - ie - 1.0);
            let i_eta_new = h - 1.0;
            let q = DcheParams::unchecked(p.omega * p.b1, 2.0 + 2.0 * ie, b3, Complex::new(1.0, 0.0), -I * i_eta_new);
            let g = GaugeStage::new(I * p.omega, p.b1 / 2.0, -ie - h, VarMap::Inversion(I * p.b1 / 2.0));
            (q, GaugeMap::single(g))
        }
        Rule::R2 => {
            let q = DcheParams::unchecked(-p.b1, 4.0 - p.b2, p.b3 + 2.0 - p.b2, p.omega, p.eta);
            let g = GaugeStage::new(zero, p.b1, 2.0 - p.b2, VarMap::Identity);
            (q, GaugeMap::single(g))
        }
        Rule::R3 => (
            DcheParams::unchecked(p.b1, p.b2, p.b3, -p.omega, -p.eta),
            GaugeMap::identity(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_example_and_involution() {
        let p = DcheParams::new(2.0.into(), 2.0.into(), 2.0.into(), I, I).unwrap();
        let (q, _) = apply_rule(Rule::R2, &p);
        assert_eq!(q, DcheParams::new((-2.0).into(), 2.0.into(), 2.0.into(), I, I).unwrap());
        let (back, _) = apply_rule(Rule::R2, &q);
        assert_eq!(back, p);
        let (r3, _) = apply_rule(Rule::R3, &p);
        assert_eq!(apply_rule(Rule::R3, &r3).0, p);
    }

    #[test]
    fn r1_fixed_point() {
        let p = DcheParams::from_real(2.0, 2.0, 5.0, 1.0, 0.0).unwrap();
        let (q, _) = apply_rule(Rule::R1, &p);
        assert!((q.b1 - p.b1).norm() < 1e-15);
        assert!((q.b2 - p.b2).norm() < 1e-15);
        assert!((q.b3 - p.b3).norm() < 1e-15);
        assert!((q.omega - p.omega).norm() < 1e-15);
        assert!(q.eta.norm() < 1e-15);
    }
}
