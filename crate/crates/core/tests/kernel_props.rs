use bidouble_core::braid::monodromy::Tracer;
use bidouble_core::kernel::continuation::ContinuationConfig;
use bidouble_core::kernel::resultant::resultant;
use bidouble_core::kernel::roots::{roots_univariate, RootMode};
use bidouble_core::kernel::winding::{certify_root, gauss_from_rationals};
use bidouble_core::kernel::var_names;
use bidouble_core::quartic::{fiber_solve, PlaneCurve};
use bidouble_core::scalar::{q, qi};
use bidouble_core::{Complex, QPoly, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn poly_xy() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0u32..4, 0u32..4, -6i64..=6), 0..6)
        .prop_map(|terms| QPoly::from_terms(var_names(&["x", "y"]), terms.into_iter().map(|(a, b, c)| (vec![a, b], qi(c)))))
}

fn point() -> impl Strategy<Value = [Rational; 2]> {
    ((-9i64..=9, 1i64..=5), (-9i64..=9, 1i64..=5)).prop_map(|((a, b), (c, d))| [q(a, b), q(c, d)])
}

/// `y^d + p` with `p` of lower degree in `y`.
fn monic_in_y(d: u32) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0u32..3, 0..d, -5i64..=5), 1..5).prop_map(move |terms| {
        let mut t: Vec<(Vec<u32>, Rational)> = terms.into_iter().map(|(a, b, c)| (vec![a, b], qi(c))).collect();
        t.push((vec![0, d], qi(1)));
        QPoly::from_terms(var_names(&["x", "y"]), t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn add_then_subtract(p in poly_xy(), r in poly_xy()) {
        prop_assert_eq!(&(&p + &r) - &r, p);
    }

    #[test]
    fn product_evaluates_to_product(p in poly_xy(), r in poly_xy(), pt in point()) {
        prop_assert_eq!((&p * &r).eval(&pt), p.eval(&pt) * r.eval(&pt));
    }

    #[test]
    fn derivative_linear_and_leibniz(p in poly_xy(), r in poly_xy(), c in -5i64..=5) {
        let d = |f: &QPoly| f.derivative("x").unwrap();
        prop_assert_eq!(d(&(&p + &r.scale(&qi(c)))), &d(&p) + &d(&r).scale(&qi(c)));
        prop_assert_eq!(d(&(&p * &r)), &(&d(&p) * &r) + &(&p * &d(&r)));
    }

    #[test]
    fn resultant_commutes_with_specialization(p in monic_in_y(2), r in monic_in_y(3), x0 in (-6i64..=6, 1i64..=4)) {
        let x0 = q(x0.0, x0.1);
        let full = resultant(&p, &r, "y").unwrap().specialize("x", &x0).unwrap();
        let at_x0 = resultant(&p.specialize("x", &x0).unwrap(), &r.specialize("x", &x0).unwrap(), "y").unwrap();
        prop_assert_eq!(full.constant_value().unwrap_or_else(Rational::zero), at_x0.constant_value().unwrap_or_else(Rational::zero));
    }

    #[test]
    fn simple_roots_certified_by_winding(c in prop::collection::vec(-9i64..=9, 3..7)) {
        let mut coeffs: Vec<Rational> = c.into_iter().map(qi).collect();
        coeffs.push(qi(1));
        let fc: Vec<Complex<f64>> = coeffs.iter().map(|x| Complex::new(num_traits::ToPrimitive::to_f64(x).unwrap(), 0.0)).collect();
        let Ok(roots) = roots_univariate(&fc, RootMode::Simple) else { return Ok(()) };
        let exact = gauss_from_rationals(&coeffs);
        for r in &roots {
            prop_assert!(certify_root(&exact, r).unwrap(), "root {:?} not certified", r);
        }
    }

    #[test]
    fn real_fibers_closed_under_conjugation_and_negation(x in -300i64..300) {
        let x0 = x as f64 / 100.0 + 0.003;
        let roots = fiber_solve(&PlaneCurve::three_cuspidal_quartic(), Complex::new(x0, 0.0)).unwrap();
        let close = |a: Complex<f64>| roots.iter().any(|r| (r.value - a).norm() < 1e-6);
        for r in &roots {
            prop_assert!(close(r.value.conj()));
            prop_assert!(close(-r.value));
        }
    }

    #[test]
    fn reversed_loop_returns_strands(radius in 0.05f64..0.4, phase in 0.0f64..std::f64::consts::TAU) {
        let tracer = Tracer::new(&PlaneCurve::three_cuspidal_quartic(), &q(1, 100), ContinuationConfig::default()).unwrap();
        let start = Complex::from_polar(radius, phase);
        let path: Vec<Complex<f64>> = (0..=64).map(|k| Complex::from_polar(radius, phase + std::f64::consts::TAU * k as f64 / 64.0)).collect();
        let y0 = tracer.fiber(start).unwrap();
        let fwd = tracer.trace(&path, &y0).unwrap();
        let ends: Vec<Complex<f64>> = fwd.iter().map(|s| s.end()).collect();
        let rev: Vec<Complex<f64>> = path.iter().rev().copied().collect();
        let back = tracer.trace(&rev, &ends).unwrap();
        for (s, y) in back.iter().zip(&y0) {
            prop_assert!((s.end() - y).norm() < 1e-8);
        }
    }
}
