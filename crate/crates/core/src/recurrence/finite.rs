use crate::equation::DcheParams;
use crate::Complex;

/// The integer nearest `x` if `x` is within `tol` of it.
pub fn integer_offset(x: Complex, tol: f64) -> Option<i64> {
    let r = x.re.round();
    if x.im.abs() <= tol && (x.re - r).abs() <= tol {
        Some(r as i64)
    } else {
        None
    }
}

/// Number of terms N when the pair's series terminates (γ_N = 0).
/// Pairs 1, 3 (and their sign-flipped 5, 7) need B2/2 + iη = 1 − N; pairs
/// 2, 4 (6, 8) need B2/2 − iη = 1 + N.
pub fn finite_series_condition(pair_id: u8, p: &DcheParams) -> Option<usize> {
    let ie = if pair_id > 4 { -p.i_eta() } else { p.i_eta() };
    let h = p.h();
    let n = match pair_id {
        1 | 3 | 5 | 7 => integer_offset(1.0 - h - ie, 1e-9)?,
        2 | 4 | 6 | 8 => integer_offset(h - ie - 1.0, 1e-9)?,
        _ => return None,
    };
    (n >= 1).then_some(n as usize)
}
