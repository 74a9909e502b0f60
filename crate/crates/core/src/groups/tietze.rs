//! Generator elimination for finite presentations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::groups::free::FreeWord;
use crate::groups::presentation::Presentation;

#[derive(Clone, Debug, Serialize)]
pub struct TietzeResult {
    pub presentation: Presentation,
    pub eliminated: Vec<String>,
    /// The elimination budget ran out before no further move applied.
    pub budget_exhausted: bool,
}

/// Cyclically reduces relators and drops empty ones and duplicates up to
/// rotation and inversion.
fn tidy(relators: &[FreeWord]) -> Vec<FreeWord> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in relators {
        let r = r.cyclically_reduced();
        if r.is_empty() {
            continue;
        }
        let a = r.cyclic_canonical();
        let b = r.inverse().cyclic_canonical();
        let key = if a.letters <= b.letters { a } else { b };
        if seen.insert(key.letters) {
            out.push(r);
        }
    }
    out
}

/// Shortest relator containing some generator exactly once; ties go to the
/// earlier relator and then the highest generator.
fn find_move(relators: &[FreeWord]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (ri, r) in relators.iter().enumerate() {
        if let Some(g) = (1..=r.max_generator()).rev().find(|&g| r.occurrences(g) == 1) {
            if best.is_none_or(|(len, _, _)| r.len() < len) {
                best = Some((r.len(), ri, g));
            }
        }
    }
    best.map(|(_, ri, g)| (ri, g))
}

/// Eliminates generators defined by a relator in which they occur once.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeResult {
    let mut names = p.generators.clone();
    let mut rels = tidy(&p.relators);
    let mut eliminated = Vec::new();
    let mut steps = 0;
    while let Some((ri, g)) = find_move(&rels) {
        if steps == budget {
            return TietzeResult {
                presentation: Presentation::with_names(names, rels),
                eliminated,
                budget_exhausted: true,
            };
        }
        steps += 1;
        let r = rels.remove(ri);
        let pos = r.letters.iter().position(|l| l.unsigned_abs() as usize == g).expect("generator occurs");
        let u = FreeWord::new(r.letters[..pos].to_vec());
        let v = FreeWord::new(r.letters[pos + 1..].to_vec());
        // u g v = 1 gives g = u^-1 v^-1; u g^-1 v = 1 gives g = v u
        let value = if r.letters[pos] > 0 { u.inverse().mul(&v.inverse()) } else { v.mul(&u) };
        let n = names.len();
        let images: Vec<FreeWord> = (1..=n)
            .map(|i| match i.cmp(&g) {
                std::cmp::Ordering::Less => FreeWord::generator(i),
                std::cmp::Ordering::Equal => renumber(&value, g),
                std::cmp::Ordering::Greater => FreeWord::generator(i - 1),
            })
            .collect();
        rels = tidy(&rels.iter().map(|w| w.substitute(&images)).collect::<Vec<_>>());
        eliminated.push(names.remove(g - 1));
    }
    TietzeResult { presentation: Presentation::with_names(names, rels), eliminated, budget_exhausted: false }
}

fn renumber(w: &FreeWord, removed: usize) -> FreeWord {
    FreeWord::new(
        w.letters
            .iter()
            .map(|&l| if l.unsigned_abs() as usize > removed { l - l.signum() } else { l })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{add_projective_relation, fingerprint};

    #[test]
    fn eliminates_defined_generator() {
        // g3 = g1 g2
        let p = Presentation::new(3, vec![FreeWord::new(vec![-3, 1, 2])]);
        let t = tietze_simplify(&p, 10);
        assert_eq!(t.presentation.n_generators(), 2);
        assert_eq!(t.eliminated, vec!["x3".to_string()]);
        assert!(t.presentation.relators.is_empty());
    }

    #[test]
    fn projective_reduces_to_two_generators() {
        let proj = add_projective_relation(&Presentation::three_cuspidal_quartic_affine()).unwrap();
        let t = tietze_simplify(&proj, 100);
        assert!(!t.budget_exhausted);
        assert_eq!(t.presentation.generators, vec!["a1".to_string(), "a2".to_string()]);
        assert_eq!(fingerprint(&proj, 10_000), fingerprint(&t.presentation, 10_000));
        let reference = Presentation::three_cuspidal_quartic_projective_reduced();
        assert_eq!(fingerprint(&reference, 10_000), fingerprint(&t.presentation, 10_000));
    }

    #[test]
    fn budget_zero_keeps_everything() {
        let p = Presentation::new(3, vec![FreeWord::new(vec![-3, 1, 2])]);
        let t = tietze_simplify(&p, 0);
        assert!(t.budget_exhausted);
        assert_eq!(t.presentation.n_generators(), 3);
    }
}
