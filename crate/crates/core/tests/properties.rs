use gk_core::gamma::{elliptic_gamma, hyperbolic_gamma, s_fn, theta_r};
use gk_core::kernels::{s2_kernel, weight, KernelSpec};
use gk_core::operators::{apply, build_a2, build_a3, rotate};
use gk_core::verify::rel_error;
use gk_core::{Complex64, EvalConfig, ModularParams, Regime, Sign};
use proptest::prelude::*;

fn params() -> ModularParams {
    ModularParams::default()
}

fn strip_point() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -0.8f64..0.8).prop_map(|(re, im)| Complex64::new(re, im))
}

fn small_point() -> impl Strategy<Value = Complex64> {
    (-0.7f64..0.7, -0.15f64..0.15).prop_map(|(re, im)| Complex64::new(re, im))
}

fn constrained(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(small_point(), n - 1).prop_map(|mut x| {
        let s: Complex64 = x.iter().sum();
        x.push(-s);
        x
    })
}

fn exp_test_fn(k: &[f64], y: &[Complex64]) -> Complex64 {
    k.iter().zip(y).map(|(a, b)| a * b).sum::<Complex64>().exp()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_values_are_finite_or_refused(z in strip_point()) {
        let cfg = EvalConfig::default();
        let p = params();
        for v in [elliptic_gamma(&p, z, &cfg), hyperbolic_gamma(p.a_plus, p.a_minus, z, &cfg)].into_iter().flatten() {
            prop_assert!(v.is_finite());
        }
        for delta in Sign::BOTH {
            if let Ok(v) = theta_r(&p, delta, z, &cfg) {
                prop_assert!(v.is_finite());
            }
            if let Ok(v) = s_fn(&p, delta, z, &cfg) {
                prop_assert!(v.is_finite());
            }
        }
    }

    #[test]
    fn reflection_holds_across_the_strip(z in strip_point()) {
        let cfg = EvalConfig::default();
        let p = params();
        if let (Ok(a), Ok(b)) = (elliptic_gamma(&p, z, &cfg), elliptic_gamma(&p, -z, &cfg)) {
            prop_assert!((a * b - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn rel_error_is_symmetric_and_scale_free(
        l in (-5.0f64..5.0, -5.0f64..5.0),
        r in (-5.0f64..5.0, -5.0f64..5.0),
        s in 1e-6f64..1e6,
    ) {
        let (l, r) = (Complex64::new(l.0, l.1), Complex64::new(r.0, r.1));
        let e = rel_error(l, r);
        prop_assert_eq!(e, rel_error(r, l));
        prop_assert!((rel_error(l * s, r * s) - e).abs() <= 1e-14 * e.max(1.0));
        prop_assert!((0.0..=1.0).contains(&e));
    }

    #[test]
    fn constrained_shifts_stay_on_the_hyperplane(x in constrained(3), y in constrained(4)) {
        let cfg = EvalConfig::default();
        let p = params();
        for delta in Sign::BOTH {
            let a2 = build_a2(Regime::Elliptic, delta, Complex64::new(0.3, 0.0), true, &p, &cfg).unwrap();
            let a3 = build_a3(Regime::Hyperbolic, delta, true, &p, &cfg).unwrap();
            for m in 0..3 {
                prop_assert!(a2.shifted_point(m, &x).unwrap().iter().sum::<Complex64>().norm() < 1e-14);
            }
            for m in 0..4 {
                prop_assert!(a3.shifted_point(m, &y).unwrap().iter().sum::<Complex64>().norm() < 1e-14);
            }
        }
    }

    #[test]
    fn operators_commute_with_cyclic_rotation(x in constrained(3), k in prop::collection::vec(-2.0f64..2.0, 3)) {
        let cfg = EvalConfig::default();
        let p = params();
        let op = build_a2(Regime::Elliptic, Sign::Plus, Complex64::new(0.3, 0.0), false, &p, &cfg).unwrap();
        let f = |y: &[Complex64]| Ok(exp_test_fn(&k, y));
        let g = |y: &[Complex64]| Ok(exp_test_fn(&k, &rotate(y, 1)));
        if let (Ok(a), Ok(b)) = (apply(&op, g, &x), apply(&op, f, &rotate(&x, 1))) {
            prop_assert!(rel_error(a, b) < 1e-12, "{} {}", a, b);
        }
    }

    #[test]
    fn weight_and_kernel_are_cyclic(x in constrained(3), w in constrained(3), z in constrained(3)) {
        let cfg = EvalConfig::default();
        let p = params();
        for regime in [Regime::Elliptic, Regime::Hyperbolic] {
            if let (Ok(a), Ok(b)) = (weight(regime, &x, &p, &cfg), weight(regime, &rotate(&x, 2), &p, &cfg)) {
                prop_assert!(rel_error(a, b) < 1e-12);
            }
        }
        let spec = KernelSpec::a2(Regime::Elliptic);
        if let (Ok(a), Ok(b)) = (
            s2_kernel(&spec, &x, &w, &z, &p, &cfg),
            s2_kernel(&spec, &rotate(&x, 1), &w, &rotate(&z, 2), &p, &cfg),
        ) {
            prop_assert!(rel_error(a, b) < 1e-12);
        }
    }
}
