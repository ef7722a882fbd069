use heun::equation::{
    apply_rule, normal_form, reduce_degenerate, residual, residual_scale, DegenerateReduction, GaugeStage,
    NormalFormKind, VarMap,
};
use heun::solutions::{build_pair_power, solve_b3};
use heun::specialfn::hyp_u_jet;
use heun::{Complex, DcheParams, HeunError, Jet, Rule, I};
use proptest::prelude::*;

fn cx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn zero() -> Complex {
    cx(0.0, 0.0)
}

fn relative(p: &DcheParams, j: Jet, z: Complex) -> f64 {
    residual(p, j, z).unwrap().norm() / residual_scale(p, j, z)
}

/// y^r e^{c1 y} U(a, b, y) with y = k z, as a jet in z.
fn confluent_jet(k: Complex, c1: Complex, r: Complex, a: Complex, b: Complex, z: Complex) -> Jet {
    let y = k * z;
    let pre = GaugeStage::new(c1, zero(), r, VarMap::Identity).prefactor(y).unwrap();
    Jet::compose(pre * hyp_u_jet(a, b, y).unwrap(), Jet::new(y, k, zero()))
}

#[test]
fn zero_b1_reduces_to_kummer() {
    let p = DcheParams::unchecked(zero(), cx(1.4, 0.2), cx(0.3, -0.1), cx(0.8, 0.3), cx(0.2, 0.4));
    let red = reduce_degenerate(&p).unwrap();
    let DegenerateReduction::Confluent { roots, ab, .. } = red else { panic!("{red:?}") };
    for (alpha, (a, b)) in roots.iter().zip(ab) {
        for z in [cx(0.7, 0.2), cx(1.5, -0.4)] {
            let j = confluent_jet(-2.0 * I * p.omega, cx(-0.5, 0.0), *alpha, a, b, z);
            assert!(relative(&p, j, z) < 1e-11, "α = {alpha}, z = {z}");
        }
    }
}

#[test]
fn zero_omega_reduces_to_kummer() {
    // y = B1/z, U = y^β U(a, b, y)
    let p = DcheParams::unchecked(cx(1.1, -0.3), cx(0.7, 0.1), cx(-0.4, 0.2), zero(), cx(0.5, 0.0));
    let (beta, a, b) = reduce_degenerate(&p).unwrap().preferred().unwrap();
    for z in [cx(0.6, 0.3), cx(2.0, -0.5)] {
        let y = p.b1 / z;
        let pre = GaugeStage::new(zero(), zero(), beta, VarMap::Identity).prefactor(y).unwrap();
        let inner = Jet::new(y, -p.b1 / (z * z), 2.0 * p.b1 / (z * z * z));
        let j = Jet::compose(pre * hyp_u_jet(a, b, y).unwrap(), inner);
        assert!(relative(&p, j, z) < 1e-11, "z = {z}");
    }
}

#[test]
fn both_zero_gives_constant_coefficients() {
    let p = DcheParams::unchecked(zero(), cx(3.0, 0.0), cx(2.0, 0.0), zero(), zero());
    match reduce_degenerate(&p).unwrap() {
        DegenerateReduction::ConstantCoefficient { roots } => {
            // x² + 2x + 2 = 0
            assert!((roots[0] - cx(-1.0, 1.0)).norm() < 1e-14 || (roots[0] - cx(-1.0, -1.0)).norm() < 1e-14);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn regular_parameters_are_not_degenerate() {
    let p = DcheParams::from_real(1.0, 2.0, 0.5, 1.0, 0.2).unwrap();
    assert!(matches!(reduce_degenerate(&p), Err(HeunError::NotDegenerate)));
}

#[test]
fn construction_rejects_degenerate_parameters() {
    assert!(DcheParams::from_real(0.0, 2.0, 0.5, 1.0, 0.2).is_err());
    assert!(DcheParams::from_real(1.0, 2.0, 0.5, 0.0, 0.2).is_err());
}

#[test]
fn r2_reference_values() {
    let p = DcheParams::new(cx(2.0, 0.0), cx(2.0, 0.0), cx(2.0, 0.0), I, I).unwrap();
    let (q, _) = apply_rule(Rule::R2, &p);
    assert_eq!(q, DcheParams::new(cx(-2.0, 0.0), cx(2.0, 0.0), cx(2.0, 0.0), I, I).unwrap());
}

fn arb_c(lo: f64, hi: f64) -> impl Strategy<Value = Complex> {
    (lo..hi, -0.4..0.4f64).prop_map(|(r, i)| cx(r, i))
}

fn arb_params() -> impl Strategy<Value = DcheParams> {
    (arb_c(0.6, 2.0), arb_c(0.3, 3.5), arb_c(-1.0, 1.0), arb_c(0.5, 1.5), arb_c(-0.5, 0.5))
        .prop_map(|(b1, b2, b3, w, e)| DcheParams::new(b1, b2, b3, w, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rules_carry_solutions_to_solutions(p in arb_params(), which in 0..3usize) {
        // build a solution of the image equation, pull it back through the gauge
        let rule = [Rule::R1, Rule::R2, Rule::R3][which];
        let (q, gauge) = apply_rule(rule, &p);
        // tune B3 of the image so that pair 1 exists, then map that back to p
        let (q, _) = solve_b3(1, &q, None).unwrap();
        let p_back = match rule {
            Rule::R1 => DcheParams { b3: q.b3 + (p.h() + p.i_eta()) * (p.h() - p.i_eta() - 1.0), ..p },
            Rule::R2 => DcheParams { b3: q.b3 - 2.0 + p.b2, ..p },
            Rule::R3 => DcheParams { b3: q.b3, ..p },
        };
        prop_assert!((apply_rule(rule, &p_back).0.b3 - q.b3).norm() < 1e-13);
        let (u, _) = build_pair_power(1, &q, 120).unwrap();
        for z in [cx(1.2, 0.5), cx(0.8, -0.3), cx(2.0, 0.1)] {
            let w = gauge.map_point(z);
            prop_assume!(u.sector_warnings(w).is_empty());
            let j = gauge.apply(|x| Ok(u.evaluate(x)?.jet), z).unwrap();
            prop_assert!(relative(&p_back, j, z) < 1e-9, "{:?} at {}", rule, z);
        }
    }

    #[test]
    fn normal_forms_scale_the_residual(p in arb_params(), f in (arb_c(-1.0, 1.0), arb_c(-1.0, 1.0), arb_c(-1.0, 1.0))) {
        // for any jet F, the normal-form operator on the gauged F equals
        // the multiplier times the DCHE residual of F
        for kind in [NormalFormKind::Algebraic, NormalFormKind::Hyperbolic(cx(0.7, 0.2)), NormalFormKind::RhoAlgebraic] {
            let nf = normal_form(&p, kind).unwrap();
            let x = cx(0.9, 0.3);
            let source = |z: Complex| Ok(Jet::new(f.0 + f.1 * z + f.2 * z * z, f.1 + 2.0 * f.2 * z, 2.0 * f.2));
            let g = nf.gauge.apply(source, x).unwrap();
            let lhs = g.d2 + nf.coefficient(x) * g.v;
            let z = nf.gauge.map_point(x);
            let rhs = nf.residual_multiplier(x) * residual(&p, source(z).unwrap(), z).unwrap();
            let scale = g.d2.norm() + (nf.coefficient(x) * g.v).norm();
            prop_assert!((lhs - rhs).norm() < 1e-11 * scale, "{:?}", kind);
        }
    }
}
