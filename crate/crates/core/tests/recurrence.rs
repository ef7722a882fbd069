use heun::recurrence::{
    char_root, char_value, finite_series_condition, generate, generate_minimal, integer_offset, minimal_ratio_check,
    row_residuals, tridiag_eigen, RootOptions,
};
use heun::solutions::pair_coeffs;
use heun::{Complex, DcheParams, ThreeTermCoeffs};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// J_{n+1}(x) − (2n/x) J_n(x) + J_{n−1}(x) = 0
fn bessel(x: f64) -> ThreeTermCoeffs {
    ThreeTermCoeffs::new(|_| c(1.0), move |n| c(-2.0 * n as f64 / x), |_| c(1.0))
}

#[test]
fn minimal_solution_is_bessel_j() {
    // J_n(1.7)/J_0(1.7), mpmath
    let expect = [
        1.0,
        1.451_726_661_996_943_3,
        0.707_913_719_996_403_93,
        0.213_952_679_171_065_98,
        0.047_213_382_960_299_562,
        0.008_227_946_524_461_371_4,
        0.001_186_302_477_708_506_9,
        0.000_145_953_318_186_912_62,
    ];
    let seq = generate_minimal(&bessel(1.7), 40).unwrap();
    for (n, e) in expect.iter().enumerate() {
        assert!((seq.get(n as i64).re - e).abs() < 1e-13 * e, "n = {n}");
    }
    // rows n ≥ 1 hold
    for (n, r) in row_residuals(&bessel(1.7), &seq) {
        if n >= 1 && n < 38 {
            assert!(r < 1e-13, "row {n}: {r}");
        }
    }
}

#[test]
fn characteristic_root_of_a_pair_recurrence() {
    let p = DcheParams::new(
        Complex::new(1.2, 0.3),
        c(2.4),
        c(0.0),
        Complex::new(0.9, -0.1),
        Complex::new(0.2, 0.1),
    )
    .unwrap();
    let family = |b3: Complex| {
        let mut q = p;
        q.b3 = b3;
        pair_coeffs(1, &q)
    };
    let root = char_root(family, c(-1.0), RootOptions::default()).unwrap();
    let coeffs = family(root.root).unwrap();
    assert!(char_value(&coeffs, 4000, 1e-15).unwrap().norm() < 1e-10);
    let seq = generate_minimal(&coeffs, 60).unwrap();
    assert!(row_residuals(&coeffs, &seq).iter().all(|r| r.1 < 1e-10));
    assert!(minimal_ratio_check(&coeffs, &seq).pass);
}

#[test]
fn forward_generation_stops_at_a_terminating_series() {
    // B2/2 + iη = 1 − 3 terminates pair 1 after three terms
    let p = DcheParams::with_i_eta(c(1.0), c(2.6), c(0.3), c(1.0), c(-3.3)).unwrap();
    assert_eq!(finite_series_condition(1, &p), Some(3));
    assert_eq!(finite_series_condition(2, &p), None);
    // γ_3 = 0 decouples b_0..b_2 from the tail
    let coeffs = pair_coeffs(1, &p).unwrap();
    assert!(coeffs.gamma(3).norm() < 1e-14);
    assert!(coeffs.gamma(2).norm() > 0.1);
    let (u, _) = heun::solutions::build_pair_power(1, &p, 50).unwrap();
    assert_eq!(u.coeffs.finite, Some(3));
    let seq = generate(&coeffs, 2).unwrap();
    for n in 0..3 {
        assert!((seq.get(n) - u.coeffs.get(n)).norm() < 1e-12 * seq.get(n).norm(), "b_{n}");
    }
}

#[test]
fn integer_detection() {
    assert_eq!(integer_offset(Complex::new(3.0 + 1e-12, -1e-12), 1e-9), Some(3));
    assert_eq!(integer_offset(Complex::new(-2.0, 0.0), 1e-9), Some(-2));
    assert_eq!(integer_offset(Complex::new(0.5, 0.0), 1e-9), None);
    assert_eq!(integer_offset(Complex::new(1.0, 1e-3), 1e-9), None);
}

#[test]
fn empty_matrix_is_rejected() {
    assert!(tridiag_eigen(&bessel(1.0), 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetric_tridiagonal_matches_dense_eigensolver(
        diag in prop::collection::vec(-5.0..5.0f64, 2..16),
        off in prop::collection::vec(0.1..3.0f64, 15),
    ) {
        let n = diag.len();
        let d = diag.clone();
        let o = off.clone();
        let o2 = off.clone();
        let t = ThreeTermCoeffs::new(move |k| c(o[k as usize]), move |k| c(d[k as usize]), move |k| c(o2[k as usize - 1]));
        let spec = tridiag_eigen(&t, n).unwrap();
        prop_assert!(spec.certified_real);
        let m = DMatrix::<f64>::from_fn(n, n, |r, col| {
            if r == col { diag[r] } else if col == r + 1 { off[r] } else if r == col + 1 { off[col] } else { 0.0 }
        });
        let mut dense: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        dense.sort_by(f64::total_cmp);
        for (a, b) in spec.eigenvalues.iter().zip(&dense) {
            prop_assert!((a.re - b).abs() < 1e-9 * (1.0 + b.abs()), "{} vs {}", a.re, b);
        }
    }

    #[test]
    fn similarity_preserves_spectrum(s in 0.5..3.0f64, b in 0.5..3.0f64) {
        // the double-Morse matrix at half-integer 2s
        let s = (2.0 * s).round() / 2.0;
        let size = (2.0 * s) as usize + 1;
        let t = ThreeTermCoeffs::new(
            |n| c(-(n as f64 + 1.0)),
            move |n| c(-s * s - n as f64 * (n as f64 - 2.0 * s)),
            move |n| c(b * b / 4.0 * (n as f64 - 2.0 * s - 1.0)),
        );
        let a = tridiag_eigen(&t, size).unwrap();
        let i = tridiag_eigen(&t.i_power_similarity(), size).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&i.eigenvalues) {
            prop_assert!((x - y).norm() < 1e-9 * (1.0 + x.norm()));
        }
    }
}
