//! The four pairs built from the asymptotic expansion at infinity, and
//! their sign-flipped companions.

use std::sync::Arc;

use super::series::Basis;
use super::{DcheSolution, Family, Sector, Variant};
use crate::equation::{apply_rule, DcheParams, GaugeMap, GaugeStage, Rule, VarMap};
use crate::error::{HeunError, Result};
use crate::recurrence::{
    char_root, finite_series_condition, generate, generate_minimal, row_residuals, CharRoot, CoeffSeq, RootOptions,
    ThreeTermCoeffs,
};
use crate::{Complex, I};

fn check_pair(pair_id: u8, max: u8) -> Result<()> {
    if (1..=max).contains(&pair_id) {
        Ok(())
    } else {
        Err(HeunError::Domain(format!("pair id {pair_id} outside 1..={max}")))
    }
}

/// Parameters with which the table of `pair_id` is evaluated: pairs 5–8 use
/// the sign-flipped (ω, η).
fn table_params(pair_id: u8, p: &DcheParams) -> (u8, DcheParams) {
    if pair_id > 4 {
        (pair_id - 4, apply_rule(Rule::R3, p).0)
    } else {
        (pair_id, *p)
    }
}

/// Recurrence coefficients of pair 1..8.
pub fn pair_coeffs(pair_id: u8, p: &DcheParams) -> Result<ThreeTermCoeffs> {
    check_pair(pair_id, 8)?;
    let (id, q) = table_params(pair_id, p);
    let (b1, b2, b3, w) = (q.b1, q.b2, q.b3, q.omega);
    let h = q.h();
    let ie = q.i_eta();
    let iwb = I * w * b1;
    let one = |n: i64| Complex::new(n as f64 + 1.0, 0.0);
    let c = match id {
        1 => ThreeTermCoeffs::new(
            one,
            move |n| {
                let n = n as f64;
                n * (n + 1.0 + 2.0 * ie) + iwb + b3 + (h + ie) * (1.0 + ie - h)
            },
            move |n| 2.0 * iwb * (n as f64 + ie + h - 1.0),
        ),
        2 => ThreeTermCoeffs::new(
            one,
            move |n| {
                let n = n as f64;
                n * (n + 1.0 + 2.0 * ie) - iwb + b3 + (h + ie) * (1.0 + ie - h)
            },
            move |n| -2.0 * iwb * (n as f64 + 1.0 + ie - h),
        ),
        3 => ThreeTermCoeffs::new(
            one,
            move |n| {
                let n = n as f64;
                n * (n + b2 - 1.0) + iwb + b3
            },
            move |n| 2.0 * iwb * (n as f64 + ie + h - 1.0),
        ),
        _ => ThreeTermCoeffs::new(
            one,
            move |n| {
                let n = n as f64;
                n * (n + 3.0 - b2) + 2.0 - iwb - b2 + b3
            },
            move |n| -2.0 * iwb * (n as f64 + 1.0 + ie - h),
        ),
    };
    Ok(c)
}

/// Coefficients b_n for a pair: terminating when the finite-series
/// condition holds, otherwise the minimal solution.
pub(crate) fn pair_sequence(
    coeffs: &ThreeTermCoeffs,
    finite: Option<usize>,
    n_terms: usize,
) -> Result<(CoeffSeq, f64)> {
    match finite {
        Some(n) => {
            let seq = generate(coeffs, n)?;
            // row N−1 with b_N = 0 is the characteristic condition
            let last = n as i64 - 1;
            let t_beta = coeffs.row_beta(last) * seq.get(last);
            let t_gamma = if last >= 1 { coeffs.row_gamma(last) * seq.get(last - 1) } else { Complex::new(0.0, 0.0) };
            let scale = t_beta.norm() + t_gamma.norm() + (coeffs.alpha(last) * seq.get(last)).norm();
            let defect = if scale == 0.0 { 0.0 } else { (t_beta + t_gamma).norm() / scale };
            Ok((seq.truncate_finite(n), defect))
        }
        None => {
            let seq = generate_minimal(coeffs, n_terms.max(2))?;
            let defect = row_residuals(coeffs, &seq).first().map_or(0.0, |r| r.1);
            Ok((seq, defect))
        }
    }
}

fn stage(c1: Complex, c2: Complex, r: Complex) -> GaugeMap {
    GaugeMap::single(GaugeStage::new(c1, c2, r, VarMap::Identity))
}

/// The pair (U^∞, U^0) of the given id (1..4) sharing one coefficient
/// sequence. `n_terms` bounds the number of coefficients of an infinite
/// series; a terminating series uses exactly its N terms.
pub fn build_pair_power(pair_id: u8, p: &DcheParams, n_terms: usize) -> Result<(DcheSolution, DcheSolution)> {
    check_pair(pair_id, 4)?;
    p.validate()?;
    let coeffs = pair_coeffs(pair_id, p)?;
    let finite = finite_series_condition(pair_id, p);
    let (seq, defect) = pair_sequence(&coeffs, finite, n_terms)?;
    let seq = Arc::new(seq);
    let zero = Complex::new(0.0, 0.0);
    let (w, b1, b2) = (p.omega, p.b1, p.b2);
    let h = p.h();
    let ie = p.i_eta();
    let k_inf = -2.0 * I * w;
    let hyp = |a0: Complex, b0: Complex, k: Complex, inverse: bool| Basis::HypU {
        a0,
        b0,
        step: 1,
        k,
        inverse,
        with_power: false,
    };
    #[rustfmt::skip]
    let (g_inf, basis_inf, fam_inf, g_zero, basis_zero, fam_zero, k_zero) = match pair_id {
        1 => (
            stage(I * w, zero, -ie - h), Basis::PowerDesc { c: k_inf }, Family::PowerDesc,
            stage(I * w, zero, -ie - h), hyp(ie + h, 2.0 + 2.0 * ie, b1, true), Family::HypUInvZ, b1,
        ),
        2 => (
            stage(I * w, b1, -ie - h), Basis::PowerDesc { c: k_inf }, Family::PowerDesc,
            stage(I * w, b1, -ie - h), hyp(2.0 + ie - h, 2.0 + 2.0 * ie, -b1, true), Family::HypUInvZ, -b1,
        ),
        3 => (
            stage(I * w, zero, zero), hyp(ie + h, b2, k_inf, false), Family::HypUInZ,
            stage(I * w, zero, zero), Basis::PowerAsc { c: 1.0 / b1 }, Family::PowerAsc, b1,
        ),
        _ => (
            stage(I * w, b1, 2.0 - b2), hyp(2.0 + ie - h, 4.0 - b2, k_inf, false), Family::HypUInZ,
            stage(I * w, b1, 2.0 - b2), Basis::PowerAsc { c: -1.0 / b1 }, Family::PowerAsc, -b1,
        ),
    };
    let make = |variant, family, basis, gauge, sector| DcheSolution {
        family,
        pair_id,
        variant,
        params: *p,
        nu: None,
        coeffs: seq.clone(),
        basis,
        gauge,
        sector,
        char_defect: defect,
    };
    Ok((
        make(Variant::AtInf, fam_inf, basis_inf, g_inf, Sector::standard(k_inf, false)),
        make(Variant::AtZero, fam_zero, basis_zero, g_zero, Sector::standard(k_zero, true)),
    ))
}

/// The hypergeometric re-expression of U_3^0 or U_4^0, sharing the
/// coefficients of `u_zero`. It is proportional to `u_zero`.
pub fn build_alternative_zero(u_zero: &DcheSolution) -> Result<DcheSolution> {
    let base = if u_zero.pair_id > 4 { u_zero.pair_id - 4 } else { u_zero.pair_id };
    if u_zero.variant != Variant::AtZero || !(base == 3 || base == 4) || u_zero.family != Family::PowerAsc {
        return Err(HeunError::Domain("only the power-series members at zero of pairs 3, 4 (7, 8)".into()));
    }
    let (_, q) = table_params(u_zero.pair_id, &u_zero.params);
    let h = q.h();
    let ie = q.i_eta();
    let (gauge, basis, k) = if base == 3 {
        (
            stage(I * q.omega, Complex::new(0.0, 0.0), -ie - h),
            Basis::HypU { a0: ie + h, b0: 1.0 + ie + h, step: 1, k: q.b1, inverse: true, with_power: false },
            q.b1,
        )
    } else {
        (
            stage(I * q.omega, q.b1, -ie - h),
            Basis::HypU { a0: 2.0 + ie - h, b0: 3.0 + ie - h, step: 1, k: -q.b1, inverse: true, with_power: false },
            -q.b1,
        )
    };
    Ok(DcheSolution {
        family: Family::HypUInvZ,
        basis,
        gauge,
        sector: Sector::standard(k, true),
        ..u_zero.clone()
    })
}

/// Pairs 5..8: the pair `pair_id` (1..4) built with (ω, η) → (−ω, −η).
pub fn r3_family(pair_id: u8, p: &DcheParams, n_terms: usize) -> Result<(DcheSolution, DcheSolution)> {
    check_pair(pair_id, 4)?;
    let (q, _) = apply_rule(Rule::R3, p);
    let (mut a, mut b) = build_pair_power(pair_id, &q, n_terms)?;
    for s in [&mut a, &mut b] {
        s.params = *p;
        s.pair_id = pair_id + 4;
    }
    Ok((a, b))
}

/// Solves the characteristic equation of pair 1..8 for B3, starting from
/// `guess` or, by default, from the B3 that makes β_0 vanish.
pub fn solve_b3(pair_id: u8, p: &DcheParams, guess: Option<Complex>) -> Result<(DcheParams, CharRoot)> {
    check_pair(pair_id, 8)?;
    let with_b3 = |x: Complex| {
        let mut q = *p;
        q.b3 = x;
        q
    };
    let guess = match guess {
        Some(g) => g,
        None => -pair_coeffs(pair_id, &with_b3(Complex::new(0.0, 0.0)))?.beta(0),
    };
    let root = char_root(|x| pair_coeffs(pair_id, &with_b3(x)), guess, RootOptions::default())?;
    Ok((with_b3(root.root), root))
}
