//! Reference factorization of the three-cuspidal quartic in the basis
//! `(A1, A2, B2, B1)`.

use crate::braid::arc::{halftwist_around_arc, ArcSpec, Side};
use crate::braid::word::BraidWord;

/// Vanishing arcs with the power of the half-twist taken around each, in
/// the counterclockwise order of the loops.
pub fn three_cuspidal_quartic_arcs() -> Vec<(ArcSpec, i32)> {
    vec![
        (ArcSpec::new(1, 2, vec![]), 3),
        (ArcSpec::new(3, 4, vec![]), 3),
        (ArcSpec::new(1, 4, vec![Side::Above, Side::Below]), 1),
        (ArcSpec::new(2, 3, vec![]), 3),
    ]
}

pub fn three_cuspidal_quartic_factors() -> Vec<BraidWord> {
    three_cuspidal_quartic_arcs()
        .iter()
        .map(|(arc, k)| halftwist_around_arc(arc, 4).expect("fixture arcs are valid").pow(*k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{add_projective_relation, fingerprint, group_order, perm::product, van_kampen, Presentation};

    #[test]
    fn fixture_words_and_permutations() {
        let f = three_cuspidal_quartic_factors();
        let letters: Vec<&[i32]> = f.iter().map(|b| b.letters()).collect();
        assert_eq!(letters, vec![&[1, 1, 1][..], &[3, 3, 3], &[-3, 2, 1, -2, 3], &[2, 2, 2]]);
        let sums: Vec<i64> = f.iter().map(BraidWord::exponent_sum).collect();
        assert_eq!(sums, vec![3, 3, 1, 3]);
        let perms: Vec<_> = f.iter().map(BraidWord::permutation).collect();
        assert_eq!(product(4, &perms).to_string(), "(1,3)(2,4)");
    }

    #[test]
    fn fixture_presentation_matches_reference() {
        let p = van_kampen(&three_cuspidal_quartic_factors(), 4).unwrap();
        let reference = Presentation::three_cuspidal_quartic_affine();
        let q = add_projective_relation(&p).unwrap();
        assert_eq!(group_order(&q, 10_000), Some(12));
        assert_eq!(fingerprint(&q, 10_000), fingerprint(&add_projective_relation(&reference).unwrap(), 10_000));
        assert_eq!(fingerprint(&p, 2_000), fingerprint(&reference, 2_000));
    }
}
