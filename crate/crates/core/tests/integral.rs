use heun::integral::{
    appendix_integral, kernel_value, transform_value, verify_adjoint, verify_transform, AppendixIntegral, KernelKind,
    KernelSpec,
};
use heun::solutions::{build_pair_power, r3_family, solve_b3};
use heun::{Complex, DcheParams, DcheSolution, HeunError};
use proptest::prelude::*;

fn cx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn params(b2: f64) -> DcheParams {
    DcheParams::new(cx(1.3, 0.2), cx(b2, 0.0), cx(0.4, 0.0), cx(0.8, 0.1), cx(0.3, 0.2)).unwrap()
}

/// Pair members and the points used for the kernel check of pair 1..8.
fn setup(pid: u8) -> (DcheSolution, DcheSolution, KernelSpec, Vec<Complex>) {
    let base = if pid > 4 { pid - 4 } else { pid };
    let odd = base % 2 == 1;
    let (q, _) = solve_b3(pid, &params(if odd { 3.1 } else { 0.6 }), None).unwrap();
    let (ui, u0) = if pid <= 4 { build_pair_power(pid, &q, 80) } else { r3_family(base, &q, 80) }.unwrap();
    let s = if odd { 1.0 } else { -1.0 };
    let zs = [0.7, 1.2].iter().map(|&r| s * cx(r, 0.15 * r)).collect();
    (ui, u0, KernelSpec::for_pair(pid, q).unwrap(), zs)
}

#[test]
fn kernels_are_self_adjoint_partners() {
    for pid in 1..=8 {
        let (_, _, spec, _) = setup(pid);
        let grid = [(cx(0.9, 0.3), cx(2.1, -0.7)), (cx(1.4, -0.2), cx(-0.8, 1.5)), (cx(0.6, 0.6), cx(3.0, 0.4))];
        let r = verify_adjoint(&spec, &grid).unwrap();
        assert_eq!(r.points, 3);
        assert!(r.max_defect < 1e-8, "pair {pid}: {}", r.max_defect);
        let broken = verify_adjoint(&spec.with_perturbation(cx(0.01, 0.0)), &grid).unwrap();
        assert!(broken.max_defect > 1e-4, "pair {pid}: {}", broken.max_defect);
    }
}

#[test]
fn transform_maps_infinity_member_to_zero_member() {
    for pid in [1, 2, 5, 8] {
        let (ui, u0, spec, zs) = setup(pid);
        let r = verify_transform(&ui, &u0, &spec, &zs).unwrap();
        assert!(r.max_deviation < 1e-7, "pair {pid}: {}", r.max_deviation);
    }
}

#[test]
fn perturbed_kernel_breaks_the_transform() {
    let (ui, u0, spec, zs) = setup(1);
    let r = verify_transform(&ui, &u0, &spec.with_perturbation(cx(0.01, 0.0)), &zs).unwrap();
    assert!(r.max_deviation > 1e-5);
}

#[test]
fn conditions_are_enforced() {
    let (ui, _, spec, _) = setup(1);
    assert!(spec.parameter_condition());
    assert!(matches!(transform_value(&ui, &spec, cx(-1.0, 0.1)), Err(HeunError::Condition(_))));
    let (q, _) = solve_b3(1, &params(0.6), None).unwrap();
    let (ui, _) = build_pair_power(1, &q, 80).unwrap();
    let spec = KernelSpec::for_pair(1, q).unwrap();
    assert!(!spec.parameter_condition());
    assert!(matches!(transform_value(&ui, &spec, cx(1.0, 0.1)), Err(HeunError::Condition(_))));
    assert!(KernelSpec::for_pair(9, q).is_err());
}

#[test]
fn kernel_kinds_and_mirroring() {
    let p = params(3.1);
    assert_eq!(KernelSpec::for_pair(3, p).unwrap().kind, KernelKind::K1);
    assert_eq!(KernelSpec::for_pair(6, p).unwrap().kind, KernelKind::K2);
    let plain = KernelSpec::for_pair(1, p).unwrap();
    let mirrored = KernelSpec::for_pair(5, p).unwrap();
    assert!(mirrored.mirrored);
    assert_eq!(mirrored.effective().omega, -p.omega);
    let (z, t) = (cx(0.8, 0.2), cx(1.7, -0.4));
    assert_ne!(kernel_value(&plain, z, t).unwrap(), kernel_value(&mirrored, z, t).unwrap());
    // the branch point ξ = 1
    let t1 = plain.t_scale(z);
    assert!(matches!(kernel_value(&plain, z, t1), Err(HeunError::Branch(_))));
    assert!(kernel_value(&plain, cx(0.0, 0.0), t).is_err());
}

#[test]
fn appendix_preconditions() {
    let bad = [
        AppendixIntegral::A1 { alpha: cx(-0.5, 0.0), beta: cx(1.0, 0.0), y: cx(1.0, 0.0) },
        AppendixIntegral::A1 { alpha: cx(0.5, 0.0), beta: cx(1.0, 0.0), y: cx(-1.0, 0.0) },
        AppendixIntegral::A2 { kappa: cx(0.1, 0.0), lambda: cx(0.1, 0.0), mu: cx(-0.2, 0.0), a: cx(1.0, 0.0) },
        AppendixIntegral::A3 { kappa: cx(0.1, 0.0), lambda: cx(0.1, 0.0), mu: cx(0.5, 0.0), a: cx(-1.0, 0.0) },
    ];
    for which in bad {
        assert!(matches!(appendix_integral(which), Err(HeunError::Condition(_))), "{which:?}");
    }
}

#[test]
fn a1_elementary_case() {
    // β = α + 1: U(α, α+1, y) = y^{−α}, integrand e^{−yt}(t−1)^{α−1}
    let (alpha, y) = (cx(1.5, 0.0), cx(2.0, 0.0));
    let r = appendix_integral(AppendixIntegral::A1 { alpha, beta: alpha + 1.0, y }).unwrap();
    // Γ(3/2) e^{−2} 2^{−3/2}
    let expect = 0.886_226_925_452_758 * (-2.0f64).exp() * 2f64.powf(-1.5);
    assert!((r.closed_form.re - expect).abs() < 1e-14);
    assert!(r.relative_error < 1e-10);
}

fn arb_c(lo: f64, hi: f64) -> impl Strategy<Value = Complex> {
    (lo..hi, -0.8..0.8f64).prop_map(|(r, i)| cx(r, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn appendix_identities(k in arb_c(-1.0, 1.0), l in arb_c(-0.3, 0.3), m in arb_c(0.3, 2.5), a in arb_c(0.5, 3.0)) {
        for which in [
            AppendixIntegral::A1 { alpha: m, beta: k + 1.0, y: a },
            AppendixIntegral::A2 { kappa: k, lambda: l, mu: m, a },
            AppendixIntegral::A3 { kappa: k, lambda: l, mu: m, a },
        ] {
            let r = appendix_integral(which).unwrap();
            prop_assert!(r.relative_error < 1e-8, "{:?}: {}", which, r.relative_error);
        }
    }
}
