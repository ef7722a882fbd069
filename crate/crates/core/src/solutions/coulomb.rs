//! Expansions in irregular Coulomb wave functions: the two-sided pairs with
//! a phase parameter ν and the one-sided truncations ν = iη, B2/2 − 1,
//! 1 − B2/2.

use std::sync::Arc;

use super::pairs::pair_sequence;
use super::series::Basis;
use super::{DcheSolution, Family, Sector, Variant};
use crate::equation::{DcheParams, GaugeMap, GaugeStage, VarMap};
use crate::error::{HeunError, Result};
use crate::recurrence::{
    affine_ratio, char_root, finite_series_condition, generate_minimal_two_sided_to, integer_offset, row_residuals,
    CharRoot, CoeffSeq, RecurrenceForm, RootOptions, ThreeTermCoeffs,
};
use crate::{Complex, I};

/// Tolerance for the integer tests that select a recurrence form.
const FORM_TOL: f64 = 1e-9;

/// ηωB1(B2/2 − 1)/((n+ν)(n+ν+1)); identically zero when the numerator
/// vanishes, even where the denominator does.
fn eta_term(p: &DcheParams, x: Complex) -> Complex {
    let pref = p.eta * p.omega * p.b1 * (p.h() - 1.0);
    if pref.norm() <= FORM_TOL * (1.0 + (p.b1 * p.omega).norm()) {
        Complex::new(0.0, 0.0)
    } else {
        pref / (x * (x + 1.0))
    }
}

/// Two-sided recurrence of the Coulomb pair 1 or 2 with phase parameter ν.
pub fn coulomb_nu_coeffs(pair_id: u8, p: &DcheParams, nu: Complex) -> Result<ThreeTermCoeffs> {
    if !(pair_id == 1 || pair_id == 2) {
        return Err(HeunError::Domain(format!("phase-parameter pairs are 1 and 2, got {pair_id}")));
    }
    let q = *p;
    let h = q.h();
    let ie = q.i_eta();
    let k = I * q.omega * q.b1 / 2.0;
    let half = Complex::new(0.5, 0.0);
    let (a1, g1) = if pair_id == 1 { (2.0 - h, h - 1.0) } else { (h, 1.0 - h) };
    let sign = if pair_id == 1 { 1.0 } else { -1.0 };
    let c = ThreeTermCoeffs::new(
        move |n| {
            k * affine_ratio(n as f64, &[nu + a1, nu + 1.0 - ie], &[nu + 1.0, nu + 1.5])
        },
        move |n| {
            let x = nu + n as f64;
            sign * (q.b3 + (x + 1.0 - h) * (x + h) + eta_term(&q, x))
        },
        move |n| k * affine_ratio(n as f64, &[nu + g1, nu + ie], &[nu, nu - half]),
    );
    Ok(c.two_sided())
}

/// Recurrence form of the one-sided pair 1..4.
pub fn coulomb_form(pair_id: u8, p: &DcheParams) -> RecurrenceForm {
    let is = |x: Complex, v: f64| integer_offset(2.0 * (x - v), 2.0 * FORM_TOL) == Some(0);
    let ie = p.i_eta();
    match pair_id {
        1 | 2 if is(ie, -0.5) => RecurrenceForm::R2a,
        1 | 2 if is(ie, 0.0) => RecurrenceForm::R3a,
        3 if is(p.b2, 1.0) => RecurrenceForm::R2a,
        3 if is(p.b2, 2.0) => RecurrenceForm::R3a,
        4 if is(p.b2, 3.0) => RecurrenceForm::R2a,
        4 if is(p.b2, 2.0) => RecurrenceForm::R3a,
        _ => RecurrenceForm::R1a,
    }
}

/// (source pair of the two-sided family, ν) for the one-sided pair 1..4.
fn truncation(pair_id: u8, p: &DcheParams) -> (u8, Complex) {
    match pair_id {
        1 => (1, p.i_eta()),
        2 => (2, p.i_eta()),
        3 => (1, p.h() - 1.0),
        _ => (2, 1.0 - p.h()),
    }
}

/// One-sided recurrence of the Coulomb pair 1..4 with its form attached.
pub fn coulomb_coeffs(pair_id: u8, p: &DcheParams) -> Result<ThreeTermCoeffs> {
    if !(1..=4).contains(&pair_id) {
        return Err(HeunError::Domain(format!("pair id {pair_id} outside 1..=4")));
    }
    let (src, nu) = truncation(pair_id, p);
    let mut c = coulomb_nu_coeffs(src, p, nu)?;
    if pair_id == 2 {
        c = c.scaled(Complex::new(-1.0, 0.0));
    }
    c.domain = crate::recurrence::IndexDomain::OneSided;
    Ok(c.with_form(coulomb_form(pair_id, p)))
}

fn check_finite(c: &ThreeTermCoeffs, lo: i64, hi: i64, remedy: &str) -> Result<()> {
    for n in lo..=hi {
        let ok = c.alpha(n).is_finite() && c.beta(n).is_finite() && c.gamma(n).is_finite();
        if !ok {
            return Err(HeunError::Denominator {
                index: n,
                remedy: remedy.into(),
            });
        }
    }
    Ok(())
}

struct Members {
    inf: (GaugeMap, Basis),
    zero: (GaugeMap, Basis, Complex),
}

fn members(pair_id: u8, p: &DcheParams, nu: Complex) -> Members {
    let h = p.h();
    let ie = p.i_eta();
    let w = p.omega;
    let c2 = if pair_id == 1 { Complex::new(0.0, 0.0) } else { p.b1 };
    let g = |r: Complex| GaugeMap::single(GaugeStage::new(I * w, c2, r, VarMap::Identity));
    let hyp = |a0, k, inverse| Basis::HypU {
        a0,
        b0: 2.0 * nu + 2.0,
        step: 2,
        k,
        inverse,
        with_power: true,
    };
    let (a_zero, k_zero) = if pair_id == 1 { (nu + h, p.b1) } else { (nu + 2.0 - h, -p.b1) };
    Members {
        inf: (g(nu + 1.0 - h), hyp(nu + 1.0 + ie, -2.0 * I * w, false)),
        zero: (g(-nu - h), hyp(a_zero, k_zero, true), k_zero),
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    pair_id: u8,
    src: u8,
    p: &DcheParams,
    nu: Complex,
    tag_nu: Option<Complex>,
    seq: CoeffSeq,
    defect: f64,
) -> (DcheSolution, DcheSolution) {
    let m = members(src, p, nu);
    let seq = Arc::new(seq);
    let k_inf = -2.0 * I * p.omega;
    let make = |variant, gauge, basis, sector| DcheSolution {
        family: Family::CoulombNu,
        pair_id,
        variant,
        params: *p,
        nu: tag_nu,
        coeffs: seq.clone(),
        basis,
        gauge,
        sector,
        char_defect: defect,
    };
    (
        make(Variant::AtInf, m.inf.0, m.inf.1, Sector::standard(k_inf, false)),
        make(Variant::AtZero, m.zero.0, m.zero.1, Sector::standard(m.zero.2, true)),
    )
}

/// The two-sided pair 1 or 2 with phase parameter ν, generated on a window
/// of at least [−window, window].
pub fn build_pair_coulomb_nu(
    pair_id: u8,
    p: &DcheParams,
    nu: Complex,
    window: usize,
) -> Result<(DcheSolution, DcheSolution)> {
    p.validate()?;
    let coeffs = coulomb_nu_coeffs(pair_id, p, nu)?;
    let remedy = "shift the phase parameter away from integers and half-integers";
    check_finite(&coeffs, -(window.max(4) as i64), window.max(4) as i64, remedy)?;
    // the basis functions grow factorially, so the coefficient tails must
    // fall far below the double-precision floor of the sum
    let seq = generate_minimal_two_sided_to(&coeffs, window, 1e-60)?;
    check_finite(&coeffs, seq.n_min, seq.n_max(), remedy)?;
    let defect = row_residuals(&coeffs, &seq)
        .iter()
        .find(|r| r.0 == 0)
        .map_or(0.0, |r| r.1);
    Ok(assemble(pair_id, pair_id, p, nu, Some(nu), seq, defect))
}

/// The one-sided pair 1..4 (ν fixed by the pair). Terminates under the
/// same conditions as the power-series pair with the same id.
pub fn build_pair_coulomb(pair_id: u8, p: &DcheParams, n_terms: usize) -> Result<(DcheSolution, DcheSolution)> {
    p.validate()?;
    let coeffs = coulomb_coeffs(pair_id, p)?;
    let remedy = if pair_id <= 2 {
        "apply rule r3 (pairs 5-8) to flip the sign of i*eta"
    } else if pair_id == 3 {
        "use pair 4 instead"
    } else {
        "use pair 3 instead"
    };
    let finite = finite_series_condition(pair_id, p);
    let hi = finite.unwrap_or(n_terms.max(2)) as i64;
    let lo = if coeffs.form == RecurrenceForm::R1a { 0 } else { -1 };
    check_finite(&coeffs, lo, hi, remedy)?;
    let (seq, defect) = pair_sequence(&coeffs, finite, n_terms)?;
    check_finite(&coeffs, lo, seq.n_max() + 1, remedy)?;
    let (src, nu) = truncation(pair_id, p);
    Ok(assemble(pair_id, src, p, nu, None, seq, defect))
}

fn on_lattice(nu: Complex) -> bool {
    integer_offset(2.0 * nu, 2e-4).is_some()
}

/// Solves the two-sided characteristic equation of pair 1 or 2 for ν,
/// starting from `guess` or from the larger root of β_0 = 0 without the
/// η-term, then from a few fixed points. Roots on the half-integer lattice,
/// where the coefficients have removable singularities, are skipped.
pub fn solve_nu(pair_id: u8, p: &DcheParams, guess: Option<Complex>) -> Result<CharRoot> {
    let first = guess.unwrap_or_else(|| {
        let h = p.h();
        let disc = 1.0 - 4.0 * ((1.0 - h) * h + p.b3);
        let r = (disc.sqrt() - 1.0) / 2.0;
        r + Complex::new(1e-3, 1e-3)
    });
    let starts = [
        Complex::new(0.1, 0.5),
        Complex::new(-0.4, 0.3),
        Complex::new(0.3, 0.05),
        Complex::new(0.1, 1.5),
        Complex::new(-0.45, 1.0),
        Complex::new(0.7, 0.02),
    ];
    let mut last = HeunError::Convergence("only removable roots on the half-integer lattice found".into());
    for g in std::iter::once(first).chain(starts) {
        match char_root(|nu| coulomb_nu_coeffs(pair_id, p, nu), g, RootOptions::default()) {
            Ok(r) if !on_lattice(r.root) => return Ok(r),
            Ok(_) => {}
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Solves the characteristic equation of the one-sided pair 1..4 for B3.
pub fn solve_b3_coulomb(pair_id: u8, p: &DcheParams, guess: Option<Complex>) -> Result<(DcheParams, CharRoot)> {
    let with_b3 = |x: Complex| {
        let mut q = *p;
        q.b3 = x;
        q
    };
    let guess = match guess {
        Some(g) => g,
        None => -coulomb_coeffs(pair_id, &with_b3(Complex::new(0.0, 0.0)))?.beta(0),
    };
    let root = char_root(|x| coulomb_coeffs(pair_id, &with_b3(x)), guess, RootOptions::default())?;
    Ok((with_b3(root.root), root))
}
