//! Exhaustive enumeration of homomorphisms into symmetric groups.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::groups::perm::Perm;
use crate::groups::presentation::Presentation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomConstraints {
    /// Every generator maps to a transposition.
    pub transpositions: bool,
    /// The image acts transitively.
    pub transitive: bool,
}

/// A conjugacy class of homomorphisms, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomClass {
    pub images: Vec<Perm>,
    /// Number of satisfying tuples in the class.
    pub size: usize,
}

impl HomClass {
    pub fn contains(&self, images: &[Perm]) -> bool {
        images.len() == self.images.len() && canonical(images) == self.images
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomEnumeration {
    pub degree: usize,
    /// Size of the scanned tuple space.
    pub candidates: u64,
    /// Tuples satisfying all relators and constraints.
    pub satisfying: usize,
    pub classes: Vec<HomClass>,
}

fn word_image(letters: &[i32], images: &[Perm], inverses: &[Perm], n: usize) -> Perm {
    letters.iter().fold(Perm::identity(n), |acc, &l| {
        let g = l.unsigned_abs() as usize - 1;
        acc.then(if l > 0 { &images[g] } else { &inverses[g] })
    })
}

fn is_transitive(images: &[Perm], n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for p in images {
            let j = p.apply(i);
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

fn canonical(images: &[Perm]) -> Vec<Perm> {
    let n = images.first().map_or(1, Perm::degree);
    Perm::all(n)
        .iter()
        .map(|g| images.iter().map(|p| p.conjugate(g)).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

struct Search<'a> {
    n: usize,
    choices: &'a [Perm],
    // relators indexed by the last generator they involve
    checks: Vec<Vec<&'a [i32]>>,
}

impl Search<'_> {
    fn run(&self, images: &mut Vec<Perm>, inverses: &mut Vec<Perm>, out: &mut Vec<Vec<Perm>>) {
        let k = images.len();
        if k == self.checks.len() {
            out.push(images.clone());
            return;
        }
        for p in self.choices {
            images.push(*p);
            inverses.push(p.inverse());
            if self.checks[k].iter().all(|r| word_image(r, images, inverses, self.n).is_identity()) {
                self.run(images, inverses, out);
            }
            images.pop();
            inverses.pop();
        }
    }
}

fn satisfying_tuples(p: &Presentation, n: usize, constraints: HomConstraints) -> (u64, Vec<Vec<Perm>>) {
    let k = p.n_generators();
    let choices = if constraints.transpositions { Perm::transpositions(n) } else { Perm::all(n) };
    let candidates = (choices.len() as u64).saturating_pow(k as u32);
    if k == 0 {
        return (1, vec![Vec::new()]);
    }
    let mut checks: Vec<Vec<&[i32]>> = vec![Vec::new(); k];
    for r in &p.relators {
        if r.max_generator() > 0 {
            checks[r.max_generator() - 1].push(&r.letters);
        }
    }
    let search = Search { n, choices: &choices, checks };
    let chunks: Vec<Vec<Vec<Perm>>> = choices
        .par_iter()
        .map(|first| {
            let mut images = vec![*first];
            let mut inverses = vec![first.inverse()];
            let mut out = Vec::new();
            if search.checks[0].iter().all(|r| word_image(r, &images, &inverses, n).is_identity()) {
                search.run(&mut images, &mut inverses, &mut out);
            }
            out
        })
        .collect();
    let mut tuples: Vec<Vec<Perm>> = chunks.into_iter().flatten().collect();
    if constraints.transitive {
        tuples.retain(|t| is_transitive(t, n));
    }
    (candidates, tuples)
}

/// Number of homomorphisms into `S_n` satisfying the constraints.
pub fn count_homs(p: &Presentation, n: usize, constraints: HomConstraints) -> usize {
    satisfying_tuples(p, n, constraints).1.len()
}

/// All homomorphisms into `S_n` satisfying the constraints, grouped under
/// simultaneous conjugation.
pub fn enumerate_homs_to_sym(p: &Presentation, n: usize, constraints: HomConstraints) -> HomEnumeration {
    let (candidates, tuples) = satisfying_tuples(p, n, constraints);
    let mut classes: BTreeMap<Vec<Perm>, usize> = BTreeMap::new();
    for t in &tuples {
        *classes.entry(canonical(t)).or_default() += 1;
    }
    HomEnumeration {
        degree: n,
        candidates,
        satisfying: tuples.len(),
        classes: classes.into_iter().map(|(images, size)| HomClass { images, size }).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TT: HomConstraints = HomConstraints { transpositions: true, transitive: true };

    #[test]
    fn unique_transposition_class_in_s4() {
        let p = Presentation::three_cuspidal_quartic_affine();
        let e = enumerate_homs_to_sym(&p, 4, TT);
        assert_eq!(e.candidates, 1296);
        assert_eq!(e.classes.len(), 1);
        let t = |i, j| Perm::transposition(4, i, j);
        assert!(e.classes[0].contains(&[t(1, 2), t(2, 3), t(2, 4), t(1, 4)]));
        assert_eq!(e.classes[0].size, e.satisfying);
    }

    #[test]
    fn free_group_two_sheets() {
        let e = enumerate_homs_to_sym(&Presentation::free(2), 2, TT);
        assert_eq!(e.classes.len(), 1);
        assert_eq!(e.satisfying, 1);
    }

    #[test]
    fn counts_for_cyclic_group() {
        // Hom(Z/2, S3): identity and three transpositions
        let p = Presentation::new(1, vec![crate::groups::FreeWord::new(vec![1, 1])]);
        assert_eq!(count_homs(&p, 3, HomConstraints::default()), 4);
    }
}
