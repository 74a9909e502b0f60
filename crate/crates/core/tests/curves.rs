use bidouble_core::bidouble::{
    discriminant_norm, eigenvalue_check, find_cusps, mult_table_residuals, multiplication_matrices, normalize_delta, random_rational,
    CoverData,
};
use bidouble_core::quartic::{
    biquadratic, classify_real_fiber_exact, dual_parametrization, flexes_and_cusps, implicitize, substitute_param, FiberPattern, ParamCurve,
    PlaneCurve,
};
use bidouble_core::scalar::{q, qi};
use bidouble_core::Rational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn multiplication_table_identities_at_random_specializations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let cover = CoverData::with_constants(random_rational(&mut rng, 9), random_rational(&mut rng, 9));
        let t = multiplication_matrices(&cover).unwrap();
        for r in mult_table_residuals(&cover, &t) {
            assert!(r.is_zero());
        }
    }
    assert_eq!(eigenvalue_check(&mut rng, 20).unwrap(), 20);
}

#[test]
fn specialized_discriminant_agrees_with_the_symbolic_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sym = discriminant_norm(&CoverData::symbolic()).unwrap().delta;
    for _ in 0..5 {
        let (a, b) = (random_rational(&mut rng, 7), random_rational(&mut rng, 7));
        let direct = discriminant_norm(&CoverData::with_constants(a.clone(), b.clone())).unwrap().delta;
        assert_eq!(sym.specialize("a", &a).unwrap().specialize("b", &b).unwrap(), direct);
    }
}

#[test]
fn cusps_of_the_normalized_curve() {
    let cusps = find_cusps(&normalize_delta(&qi(1))).unwrap();
    assert_eq!(cusps.len(), 3);
    assert!(cusps.iter().all(|p| p.float_residuals.iter().all(|r| *r < 1e-12)));
    // the elimination identity is specific to the normalized curve
    assert!(find_cusps(&normalize_delta(&qi(2))).is_err());
}

#[test]
fn biduality_of_the_two_curves() {
    let c = PlaneCurve::three_cuspidal_quartic();
    let d = PlaneCurve::nodal_cubic();
    let dual_of_c = dual_parametrization(&ParamCurve::three_cuspidal_quartic(), &c.homogenize().unwrap()).unwrap();
    assert!(substitute_param(&d.homogenize().unwrap(), &dual_of_c).unwrap().is_zero());
    let dual_of_d = dual_parametrization(&ParamCurve::nodal_cubic(), &d.homogenize().unwrap()).unwrap();
    assert!(substitute_param(&c.homogenize().unwrap(), &dual_of_d).unwrap().is_zero());
    assert_eq!(implicitize(&dual_of_d).unwrap().equation.total_degree(), Some(4));
}

#[test]
fn cubic_has_three_flexes_giving_three_cusps() {
    let f = flexes_and_cusps(&ParamCurve::nodal_cubic(), &PlaneCurve::nodal_cubic()).unwrap();
    assert_eq!(f.flex_parameters.len() + f.flexes_at_infinity, 3);
    // the two finite flexes are a +- pair giving the cusps (-9/8, +-3 sqrt 3 / 8)
    assert_eq!(f.cusps_exact, vec![(q(-9, 8), q(27, 64))]);
}

fn sample() -> impl Strategy<Value = Rational> {
    (-400i64..400, 1i64..=40).prop_map(|(n, d)| q(n, d * 10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn a_negative_exactly_between_its_roots(x in sample()) {
        let bq = biquadratic(&PlaneCurve::three_cuspidal_quartic()).unwrap();
        let a = bq.a.eval(&x);
        // roots (3/4)(-3 -+ sqrt 3): compare via (x + 9/4)^2 < 27/16
        let shifted = &x + q(9, 4);
        let inside = &shifted * &shifted < q(27, 16);
        prop_assert_eq!(a.is_negative(), inside);
        prop_assert_eq!(a, (&shifted * &shifted - q(27, 16)) * qi(2));
    }

    #[test]
    fn theta_positive_iff_right_of_the_tangency(x in sample()) {
        let bq = biquadratic(&PlaneCurve::three_cuspidal_quartic()).unwrap();
        prop_assert_eq!(bq.theta.eval(&x).is_positive(), x > q(-9, 8));
    }

    #[test]
    fn real_fiber_patterns_cover_the_line(x in sample()) {
        let f = classify_real_fiber_exact(&PlaneCurve::three_cuspidal_quartic(), &x).unwrap();
        let want = if x == q(-9, 8) {
            FiberPattern::TwoDoubleReal
        } else if x > qi(0) {
            FiberPattern::FourImaginary
        } else if x > qi(-1) || x == qi(0) {
            if x == qi(0) { FiberPattern::OtherCritical } else { FiberPattern::TwoRealTwoImaginary }
        } else if x == qi(-1) {
            FiberPattern::OtherCritical
        } else if x > q(-9, 8) {
            FiberPattern::FourReal
        } else {
            FiberPattern::ComplexQuadruple
        };
        prop_assert_eq!(f.pattern, want, "x = {}", x);
    }
}
