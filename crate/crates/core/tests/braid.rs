use std::f64::consts::PI;

use bidouble_core::braid::monodromy::{transport_braid, Tracer};
use bidouble_core::braid::{
    artin_action, braid_equal, hurwitz_move, monodromy_factorization_with, ordered_product, three_cuspidal_quartic_factors, BraidWord,
    MonodromyConfig,
};
use bidouble_core::groups::FreeWord;
use bidouble_core::quartic::{critical_values, PlaneCurve};
use bidouble_core::scalar::q;
use bidouble_core::Complex;
use proptest::prelude::*;

fn braid(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let gen = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
    prop::collection::vec(gen, 0..max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
}

fn free_word(n: usize) -> impl Strategy<Value = FreeWord> {
    let gen = (1..=n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
    prop::collection::vec(gen, 0..8).prop_map(FreeWord::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn artin_action_is_a_right_action(b1 in braid(4, 8), b2 in braid(4, 8), w in free_word(4)) {
        let both = artin_action(&b1.mul(&b2), &w).unwrap();
        let staged = artin_action(&b2, &artin_action(&b1, &w).unwrap()).unwrap();
        prop_assert_eq!(both, staged);
    }

    #[test]
    fn inverse_acts_inversely(b in braid(4, 10), w in free_word(4)) {
        let there = artin_action(&b, &w).unwrap();
        prop_assert_eq!(artin_action(&b.inverse(), &there).unwrap(), w.reduced());
    }

    #[test]
    fn braid_relations_hold(pre in braid(5, 6), post in braid(5, 6), i in 1i32..3) {
        let lhs = BraidWord::new(5, [pre.letters(), &[i, i + 1, i], post.letters()].concat()).unwrap();
        let rhs = BraidWord::new(5, [pre.letters(), &[i + 1, i, i + 1], post.letters()].concat()).unwrap();
        prop_assert!(braid_equal(&lhs, &rhs));
        let far = BraidWord::new(5, [pre.letters(), &[i, i + 2], post.letters()].concat()).unwrap();
        let far_swapped = BraidWord::new(5, [pre.letters(), &[i + 2, i], post.letters()].concat()).unwrap();
        prop_assert!(braid_equal(&far, &far_swapped));
    }

    #[test]
    fn equality_is_an_equivalence_refining_permutations(a in braid(4, 6), b in braid(4, 6), c in braid(4, 6)) {
        prop_assert!(braid_equal(&a, &a));
        prop_assert_eq!(braid_equal(&a, &b), braid_equal(&b, &a));
        if braid_equal(&a, &b) && braid_equal(&b, &c) {
            prop_assert!(braid_equal(&a, &c));
        }
        let a2 = a.mul(&b).mul(&b.inverse());
        prop_assert!(braid_equal(&a, &a2));
        prop_assert_eq!(a.permutation(), a2.permutation());
        if braid_equal(&a, &b) {
            prop_assert_eq!(a.permutation(), b.permutation());
        }
    }

    #[test]
    fn hurwitz_moves_preserve_the_product(factors in prop::collection::vec(braid(4, 5), 2..5), i in 0usize..4) {
        let i = i % (factors.len() - 1);
        let moved = hurwitz_move(&factors, i).unwrap();
        prop_assert!(braid_equal(&ordered_product(4, &factors), &ordered_product(4, &moved)));
    }
}

#[test]
fn fixture_hurwitz_orbit_keeps_the_product() {
    let f = three_cuspidal_quartic_factors();
    let total = ordered_product(4, &f);
    let mut g = f.clone();
    for i in [0, 1, 2, 0, 2, 1] {
        g = hurwitz_move(&g, i).unwrap();
        assert!(braid_equal(&ordered_product(4, &g), &total));
    }
}

#[test]
fn exponent_sums_match_discriminant_orders() {
    let curve = PlaneCurve::three_cuspidal_quartic();
    let f = monodromy_factorization_with(&curve, &MonodromyConfig::default()).unwrap();
    let cvs = critical_values(&curve, &q(1, 100)).unwrap();
    let total: i64 = f.exponent_sums().iter().sum();
    let orders: i64 = cvs.iter().map(|c| c.order as i64).sum();
    assert_eq!(total, 10);
    assert_eq!(orders, 10);
    for l in &f.factors {
        assert_eq!(l.exponent_sum, l.critical_value.order as i64);
    }
}

#[test]
fn fiber_orders_split_under_the_shear() {
    // Without the shear the two cusps over x = -9/8 share a fiber (order 6).
    let curve = PlaneCurve::three_cuspidal_quartic();
    let unsheared = critical_values(&curve, &q(0, 1)).unwrap();
    let orders: Vec<u32> = unsheared.iter().map(|c| c.order).collect();
    assert!(orders.contains(&6));
    let sheared: Vec<u32> = critical_values(&curve, &q(1, 100)).unwrap().iter().map(|c| c.order).collect();
    assert_eq!(sheared.iter().filter(|&&o| o == 3).count(), 3);
}

/// Moving the basepoint across `x = 0` by a clockwise half-turn conjugates
/// every factor by the braid of the moving path.
#[test]
fn basepoint_change_is_a_global_conjugation() {
    let curve = PlaneCurve::three_cuspidal_quartic();
    let cfg0 = MonodromyConfig::default();
    let f0 = monodromy_factorization_with(&curve, &cfg0).unwrap();
    let cfg1 = MonodromyConfig { basepoint: Complex::new(0.5, 0.0), theta0: f0.theta, ..MonodromyConfig::default() };
    let f1 = monodromy_factorization_with(&curve, &cfg1).unwrap();
    assert!((f0.theta - f1.theta).abs() < 1e-12, "rotations differ");

    let r = f0.radius;
    let x0 = cfg0.basepoint.re;
    let mut path = vec![Complex::new(x0, 0.0), Complex::new(-r, 0.0)];
    path.extend((1..32).map(|k| Complex::from_polar(r, PI - PI * k as f64 / 32.0)));
    path.extend([Complex::new(r, 0.0), Complex::new(0.5, 0.0)]);
    let t = transport_braid(&curve, &cfg0, &path, f0.theta).unwrap();

    for l0 in &f0.factors {
        let l1 = f1
            .factors
            .iter()
            .find(|l| (l.critical_value.value - l0.critical_value.value).norm() < 1e-9)
            .expect("same critical values");
        assert!(
            braid_equal(&l0.braid, &t.mul(&l1.braid).mul(&t.inverse())),
            "factor at {} is not conjugated by the transport braid",
            l0.critical_value.value
        );
    }
}

#[test]
fn tracer_fibers_have_four_strands() {
    let tracer = Tracer::new(&PlaneCurve::three_cuspidal_quartic(), &q(1, 100), Default::default()).unwrap();
    assert_eq!(tracer.fiber(Complex::new(0.5, 0.1)).unwrap().len(), 4);
}
