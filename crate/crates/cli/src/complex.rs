//! Complex literals "a", "a+bi", "a-bi", "bi".

use heun::Complex;

fn real(s: &str, whole: &str) -> Result<f64, String> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("malformed complex literal '{whole}'"))
}

fn imag(s: &str, whole: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s, whole),
    }
}

pub fn parse(s: &str) -> Result<Complex, String> {
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(format!("malformed complex literal '{s}'"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(real(s, s)?, 0.0));
    };
    // the sign separating the parts: last '+'/'-' not at the start and not
    // part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex::new(real(&body[..k], s)?, imag(&body[k..], s)?)),
        None => Ok(Complex::new(0.0, imag(body, s)?)),
    }
}

/// Shortest form that parses back to the same bits.
pub fn format(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

pub fn parse_list(s: &str) -> Result<Vec<Complex>, String> {
    s.split(',').map(parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literals() {
        assert_eq!(parse("2").unwrap(), Complex::new(2.0, 0.0));
        assert_eq!(parse("1.5-0.25i").unwrap(), Complex::new(1.5, -0.25));
        assert_eq!(parse("-3+2i").unwrap(), Complex::new(-3.0, 2.0));
        assert_eq!(parse("i").unwrap(), Complex::new(0.0, 1.0));
        assert_eq!(parse("-i").unwrap(), Complex::new(0.0, -1.0));
        assert_eq!(parse("2-i").unwrap(), Complex::new(2.0, -1.0));
        assert_eq!(parse("1e-3+2.5E+2i").unwrap(), Complex::new(1e-3, 250.0));
        assert_eq!(parse("-4.5e-1i").unwrap(), Complex::new(0.0, -0.45));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1+", "1+2j", "a+bi", "1 + 2i", "1+2i3", "inf", "nan+1i", "1++2i"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(re in proptest::num::f64::NORMAL | proptest::num::f64::ZERO,
                               im in proptest::num::f64::NORMAL | proptest::num::f64::ZERO) {
            let z = Complex::new(re, im);
            let back = parse(&format(z)).unwrap();
            prop_assert_eq!(back.re.to_bits(), z.re.to_bits());
            prop_assert_eq!(back.im.to_bits(), z.im.to_bits());
        }
    }
}
