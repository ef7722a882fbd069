use heun::solutions::{
    build_alternative_zero, build_pair_coulomb, build_pair_coulomb_nu, build_pair_power, proportionality, r3_family,
    solve_b3, solve_nu,
};
use heun::{Complex, DcheParams, DcheSolution, Family, HeunError, Variant};
use proptest::prelude::*;

const fn cx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn base() -> DcheParams {
    DcheParams::new(cx(1.3, 0.2), cx(2.1, 0.0), cx(0.4, 0.0), cx(0.8, 0.1), cx(0.3, 0.2)).unwrap()
}

fn max_residual(u: &DcheSolution, zs: &[Complex]) -> f64 {
    zs.iter()
        .filter(|&&z| u.sector_warnings(z).is_empty())
        .map(|&z| u.residual(z).unwrap().relative)
        .fold(0.0, f64::max)
}

fn ratio_spread(a: &DcheSolution, b: &DcheSolution, zs: &[Complex]) -> f64 {
    let v: Vec<_> = zs.iter().map(|&z| (a.value(z).unwrap(), b.value(z).unwrap())).collect();
    proportionality(&v).unwrap().max_deviation
}

const ZS: [Complex; 4] = [cx(0.9, 0.4), cx(1.6, -0.2), cx(0.5, 0.1), cx(2.2, 0.7)];

#[test]
fn pairs_one_to_eight_solve_the_equation() {
    for pid in 1..=8u8 {
        let (q, root) = solve_b3(pid, &base(), None).unwrap();
        assert!(root.residual < 1e-10, "pair {pid}");
        let (inf, zero) = if pid <= 4 { build_pair_power(pid, &q, 150) } else { r3_family(pid - 4, &q, 150) }.unwrap();
        assert_eq!((inf.pair_id, inf.variant), (pid, Variant::AtInf));
        assert_eq!(zero.variant, Variant::AtZero);
        assert!(max_residual(&inf, &ZS) < 1e-9, "pair {pid} at infinity");
        assert!(max_residual(&zero, &ZS) < 1e-9, "pair {pid} at zero");
    }
}

#[test]
fn alternative_zero_members_are_proportional() {
    let zs = [cx(1.6, -0.2), cx(0.5, -0.9), cx(-1.0, -0.6), cx(2.0, -1.0)];
    for pid in [3u8, 4] {
        let (q, _) = solve_b3(pid, &base(), None).unwrap();
        let (_, zero) = build_pair_power(pid, &q, 150).unwrap();
        let alt = build_alternative_zero(&zero).unwrap();
        assert_eq!(alt.family, Family::HypUInvZ);
        assert!(zs.iter().all(|&z| alt.sector_warnings(z).is_empty()));
        assert!(ratio_spread(&zero, &alt, &zs) < 1e-12, "pair {pid}");
    }
    let (q, _) = solve_b3(1, &base(), None).unwrap();
    let (_, zero) = build_pair_power(1, &q, 50).unwrap();
    assert!(matches!(build_alternative_zero(&zero), Err(HeunError::Domain(_))));
}

#[test]
fn sector_warnings_mark_branch_jumps() {
    // U(a, b, −B1/z) on the principal branch jumps where −B1/z crosses the
    // negative axis; the warning marks the far side
    let (q, _) = solve_b3(4, &base(), None).unwrap();
    let (_, zero) = build_pair_power(4, &q, 150).unwrap();
    let alt = build_alternative_zero(&zero).unwrap();
    let (near, far) = (cx(1.6, -0.2), cx(0.9, 0.4));
    assert!(alt.sector_warnings(near).is_empty());
    assert!(!alt.sector_warnings(far).is_empty());
    let r = |z| zero.value(z).unwrap() / alt.value(z).unwrap();
    assert!((r(near) - r(far)).norm() > 0.1 * r(near).norm());
}

#[test]
fn phase_parameter_shift_gives_the_same_solution() {
    let p = base();
    let nu = solve_nu(1, &p, None).unwrap().root;
    let (a, _) = build_pair_coulomb_nu(1, &p, nu, 80).unwrap();
    let (b, _) = build_pair_coulomb_nu(1, &p, nu + 1.0, 80).unwrap();
    assert!(ratio_spread(&a, &b, &ZS) < 1e-9);
    assert!(max_residual(&a, &ZS) < 1e-9);
}

#[test]
fn terminating_series_are_exact_everywhere() {
    // pair 2: B2/2 − iη = 1 + 2; B3 must still be a root of the 2×2 determinant
    let g = DcheParams::with_i_eta(cx(0.7, 0.3), cx(1.6, 0.0), cx(-0.2, 0.1), cx(1.1, 0.0), cx(-2.2, 0.0)).unwrap();
    let (untuned, _) = build_pair_power(2, &g, 50).unwrap();
    assert!(untuned.char_defect > 1e-3);
    let (p, _) = solve_b3(2, &g, None).unwrap();
    let (u, _) = build_pair_power(2, &p, 50).unwrap();
    assert_eq!(u.coeffs.finite, Some(2));
    assert!(u.char_defect < 1e-12);
    // no sector restriction applies to a finite sum
    for z in [cx(-3.0, 0.1), cx(0.1, -2.0), cx(15.0, 4.0)] {
        assert!(u.residual(z).unwrap().relative < 1e-12, "z = {z}");
    }
    let (c, _) = build_pair_coulomb(2, &p, 50).unwrap();
    assert_eq!(c.coeffs.finite, Some(2));
}

#[test]
fn invalid_requests() {
    assert!(matches!(build_pair_power(9, &base(), 20), Err(HeunError::Domain(_))));
    assert!(matches!(build_pair_coulomb_nu(3, &base(), cx(0.2, 0.3), 20), Err(HeunError::Domain(_))));
    let bad = DcheParams::unchecked(cx(0.0, 0.0), cx(2.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0));
    assert!(build_pair_power(1, &bad, 20).is_err());
    let (q, _) = solve_b3(1, &base(), None).unwrap();
    let (u, _) = build_pair_power(1, &q, 50).unwrap();
    assert!(u.evaluate(cx(0.0, 0.0)).is_err());
}

fn arb_c(lo: f64, hi: f64) -> impl Strategy<Value = Complex> {
    (lo..hi, -0.4..0.4f64).prop_map(|(r, i)| cx(r, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn power_and_coulomb_pairs_agree(
        b1 in arb_c(0.6, 2.0), b2 in arb_c(0.3, 3.5), w in arb_c(0.5, 1.5), e in arb_c(-0.5, 0.5), pid in 1..=4u8,
    ) {
        let p = DcheParams::new(b1, b2, cx(0.0, 0.0), w, e).unwrap();
        let Ok((q, _)) = solve_b3(pid, &p, None) else { return Ok(()) };
        let power = build_pair_power(pid, &q, 150).unwrap();
        let coul = build_pair_coulomb(pid, &q, 150).unwrap();
        let zs: Vec<_> = ZS.iter().copied()
            .filter(|&z| [&power.0, &power.1, &coul.0, &coul.1].iter().all(|s| s.sector_warnings(z).is_empty()))
            .collect();
        prop_assume!(zs.len() >= 2);
        prop_assert!(ratio_spread(&power.0, &coul.0, &zs) < 1e-7);
        prop_assert!(ratio_spread(&power.1, &coul.1, &zs) < 1e-7);
    }
}
