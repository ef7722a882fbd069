use crate::Complex;

/// Generalized Laguerre polynomial L_l^α(y) by the ascending three-term
/// recurrence.
pub fn laguerre(l: usize, alpha: Complex, y: Complex) -> Complex {
    let one = Complex::new(1.0, 0.0);
    if l == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = one + alpha - y;
    for k in 1..l {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - y) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
