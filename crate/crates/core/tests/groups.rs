use bidouble_core::braid::{hurwitz_move, three_cuspidal_quartic_factors, BraidWord};
use bidouble_core::groups::{
    abelianization, add_projective_relation, count_homs, fingerprint, group_order, tietze_simplify, todd_coxeter, van_kampen, FreeWord,
    HomConstraints, Presentation, TableStatus, DEFAULT_MAX_COSETS,
};
use proptest::prelude::*;

fn pres(n: usize, rels: &[&[i32]]) -> Presentation {
    Presentation::new(n, rels.iter().map(|r| FreeWord::new(r.to_vec())).collect())
}

#[test]
fn orders_of_small_groups() {
    let cases: [(Presentation, usize); 6] = [
        (pres(1, &[&[1, 1, 1, 1, 1]]), 5),
        (pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]), 6),
        (pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2]]), 12),
        (pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2, 1, 2]]), 24),
        (pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]]), 60),
        (pres(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]), 8),
    ];
    for (p, n) in cases {
        assert_eq!(group_order(&p, 100_000), Some(n), "{p}");
    }
}

#[test]
fn complete_tables_satisfy_every_relator() {
    for p in [
        pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2, 1, 2]]),
        Presentation::three_cuspidal_quartic_projective_reduced(),
        add_projective_relation(&Presentation::three_cuspidal_quartic_affine()).unwrap(),
    ] {
        let t = todd_coxeter(&p, 100_000).unwrap();
        assert_eq!(t.status, TableStatus::Complete);
        assert!(t.relators_hold(&p));
    }
}

#[test]
fn infinite_group_overflows() {
    assert!(todd_coxeter(&Presentation::three_cuspidal_quartic_affine(), 2_000).is_err());
    assert_eq!(group_order(&Presentation::free(1), 1_000), None);
}

#[test]
fn van_kampen_of_the_fixture_matches_the_reference_presentation() {
    let vk = van_kampen(&three_cuspidal_quartic_factors(), 4).unwrap();
    let reference = Presentation::three_cuspidal_quartic_affine();
    assert_eq!(fingerprint(&vk, 10_000), fingerprint(&reference, 10_000));
    let proj = add_projective_relation(&vk).unwrap();
    let reduced = Presentation::three_cuspidal_quartic_projective_reduced();
    assert_eq!(group_order(&proj, 10_000), Some(12));
    assert_eq!(group_order(&reduced, 10_000), Some(12));
    assert_eq!(abelianization(&proj), vec![4]);
}

#[test]
fn tietze_keeps_the_fingerprint() {
    let proj = add_projective_relation(&van_kampen(&three_cuspidal_quartic_factors(), 4).unwrap()).unwrap();
    let t = tietze_simplify(&proj, 20);
    assert!(t.presentation.n_generators() < 4);
    assert_eq!(fingerprint(&t.presentation, 10_000), fingerprint(&proj, 10_000));
}

#[test]
fn relators_of_the_tangency_factor_die_in_the_finite_quotient() {
    // Every van Kampen relator holds in the order-12 quotient by construction;
    // check the tangency factor's relators on their own, over the quotient table.
    let tangency = &three_cuspidal_quartic_factors()[2];
    let own = van_kampen(std::slice::from_ref(tangency), 4).unwrap();
    let quotient = add_projective_relation(&Presentation::three_cuspidal_quartic_affine()).unwrap();
    let table = todd_coxeter(&quotient, 10_000).unwrap();
    let mut with_all = quotient.clone();
    with_all.relators.extend(own.relators.iter().cloned());
    assert!(table.relators_hold(&with_all));
}

fn factor_with_insertion(b: &BraidWord, pos: usize, g: i32) -> BraidWord {
    let mut l = b.letters().to_vec();
    let p = pos % (l.len() + 1);
    l.splice(p..p, [g, -g]);
    BraidWord::new(b.n(), l).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn van_kampen_ignores_word_representatives(k in 0usize..4, pos in 0usize..16, g in prop_oneof![Just(1), Just(-1), Just(2), Just(-3), Just(3)]) {
        let f = three_cuspidal_quartic_factors();
        let mut g2 = f.clone();
        g2[k] = factor_with_insertion(&f[k], pos, g);
        prop_assert_eq!(van_kampen(&f, 4).unwrap(), van_kampen(&g2, 4).unwrap());
    }

    #[test]
    fn hurwitz_moves_keep_the_fingerprint(moves in prop::collection::vec(0usize..3, 1..4)) {
        let f = three_cuspidal_quartic_factors();
        let mut g = f.clone();
        for i in moves {
            g = hurwitz_move(&g, i).unwrap();
        }
        let a = van_kampen(&f, 4).unwrap();
        let b = van_kampen(&g, 4).unwrap();
        prop_assert_eq!(fingerprint(&a, 10_000), fingerprint(&b, 10_000));
        let pa = add_projective_relation(&a).unwrap();
        let pb = add_projective_relation(&b).unwrap();
        // Moved relators can run to thousands of letters and defeat coset
        // enumeration, so orders are only compared when both finish.
        let (fa, fb) = (fingerprint(&pa, DEFAULT_MAX_COSETS), fingerprint(&pb, DEFAULT_MAX_COSETS));
        prop_assert_eq!(&fa.abelianization, &fb.abelianization);
        prop_assert_eq!((fa.homs_s3, fa.homs_s4), (fb.homs_s3, fb.homs_s4));
        prop_assert_eq!(fa.order, Some(12));
        if fb.order.is_some() {
            prop_assert_eq!(fa.order, fb.order);
        }
        // the moved relators are consequences of the original ones
        let table = todd_coxeter(&pa, 1000).unwrap();
        prop_assert!(table.relators_hold(&pb));
    }

    #[test]
    fn hom_counts_are_conjugation_invariant_sums(r in prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 1..7)) {
        let p = Presentation::new(2, vec![FreeWord::new(r)]);
        let all = count_homs(&p, 3, HomConstraints::default());
        // Hom into S3 is closed under conjugation, so classes partition it.
        let e = bidouble_core::groups::enumerate_homs_to_sym(&p, 3, HomConstraints::default());
        prop_assert_eq!(e.classes.iter().map(|c| c.size).sum::<usize>(), all);
        prop_assert!(all >= 1);
    }
}
