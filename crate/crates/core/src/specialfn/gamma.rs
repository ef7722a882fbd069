//! Complex gamma function (Lanczos approximation, g = 607/128).

use std::f64::consts::PI;

use crate::error::{HeunError, Result};
use crate::Complex;

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Returns `Some(k)` when `z` is the non-positive integer `-k`.
pub fn nonpositive_integer(z: Complex, tol: f64) -> Option<usize> {
    if z.im.abs() > tol || z.re > 0.5 {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() <= tol * (1.0 + r.abs()) {
        Some((-r) as usize)
    } else {
        None
    }
}

fn ln_gamma_right(z: Complex) -> Complex {
    let w = z - 1.0;
    let mut series = Complex::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &ck) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += ck / (w + k as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    HALF_LN_2PI + (w + 0.5) * t.ln() - t + series.ln()
}

/// log Γ(z). Not continuous across branch cuts of the logarithm; intended to
/// be exponentiated or differenced.
pub fn ln_gamma(z: Complex) -> Result<Complex> {
    if !z.is_finite() {
        return Err(HeunError::Domain(format!("non-finite argument {z}")));
    }
    if let Some(k) = nonpositive_integer(z, 1e-14) {
        return Err(HeunError::Pole(-(k as f64)));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(PI.ln() - s.ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

/// Γ(z) for complex z; `Pole` at non-positive integers.
pub fn gamma(z: Complex) -> Result<Complex> {
    if !z.is_finite() {
        return Err(HeunError::Domain(format!("non-finite argument {z}")));
    }
    if let Some(k) = nonpositive_integer(z, 1e-14) {
        return Err(HeunError::Pole(-(k as f64)));
    }
    // small positive integers exactly
    if z.im == 0.0 && z.re >= 1.0 && z.re <= 21.0 && z.re.fract() == 0.0 {
        let n = z.re as u32;
        let f: f64 = (1..n).map(f64::from).product();
        return Ok(Complex::new(f, 0.0));
    }
    Ok(ln_gamma(z)?.exp())
}
