//! Finite presentations, van Kampen relators and finite-quotient fingerprints.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::groups::free::FreeWord;
use crate::groups::homs::{count_homs, HomConstraints};
use crate::groups::smith::invariant_factors;
use crate::groups::todd_coxeter::group_order;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<FreeWord>,
}

impl Presentation {
    /// Generators named `x1..xn`; relators are freely reduced and empty ones dropped.
    pub fn new(n: usize, relators: Vec<FreeWord>) -> Self {
        Self::with_names((1..=n).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn with_names(generators: Vec<String>, relators: Vec<FreeWord>) -> Self {
        let relators = relators.into_iter().map(|r| r.reduced()).filter(|r| !r.is_empty()).collect();
        Presentation { generators, relators }
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, Vec::new())
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    /// Checks that every letter refers to an existing generator.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_generators();
        for r in &self.relators {
            if r.is_empty() {
                return Err(Error::Validation("empty relator".into()));
            }
            if let Some(&l) = r.letters.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > n) {
                return Err(Error::IndexOutOfRange { index: l as i64, n });
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let p: Presentation = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let p = Presentation::with_names(p.generators, p.relators);
        p.validate()?;
        Ok(p)
    }

    /// Complement of the three-cuspidal quartic in the affine plane, generators `a1, a2, b2, b1`.
    pub fn three_cuspidal_quartic_affine() -> Self {
        let rels = vec![
            vec![1, 2, 1, -2, -1, -2],
            vec![4, 3, 4, -3, -4, -3],
            vec![2, 3, 2, -3, -2, -3],
            vec![3, 4, -3, -1],
        ];
        Self::with_names(
            ["a1", "a2", "b2", "b1"].iter().map(|s| s.to_string()).collect(),
            rels.into_iter().map(FreeWord::new).collect(),
        )
    }

    /// Two-generator presentation of the projective complement.
    pub fn three_cuspidal_quartic_projective_reduced() -> Self {
        Self::with_names(
            vec!["a1".into(), "a2".into()],
            vec![FreeWord::new(vec![1, 2, 1, -2, -1, -2]), FreeWord::new(vec![2, 1, 1, 2])],
        )
    }

    pub fn relator_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_sums(self.n_generators())).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.format(&self.generators)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// Relators `x_i^-1 * beta(x_i)` for every factor `beta` and every generator.
pub fn van_kampen(factors: &[BraidWord], n: usize) -> Result<Presentation> {
    let mut rels = Vec::new();
    for b in factors {
        if b.n() != n {
            return Err(Error::Precondition(format!("factor lives in B_{}, expected B_{n}", b.n())));
        }
        let images = b.artin_images();
        for (i, img) in images.iter().enumerate() {
            let r = FreeWord::generator(i + 1).inverse().mul(img);
            if !r.is_identity() {
                rels.push(r);
            }
        }
    }
    Ok(Presentation::new(n, rels))
}

/// Appends the relator `x1 x2 ... x4` (the loop around the line at infinity).
pub fn add_projective_relation(p: &Presentation) -> Result<Presentation> {
    if p.n_generators() != 4 {
        return Err(Error::WrongGeneratorCount { expected: 4, found: p.n_generators() });
    }
    let mut q = p.clone();
    q.relators.push(FreeWord::new(vec![1, 2, 3, 4]));
    Ok(q)
}

/// Invariant factors of the abelianization; `0` marks a free factor.
pub fn abelianization(p: &Presentation) -> Vec<i64> {
    invariant_factors(&p.relator_matrix(), p.n_generators())
        .into_iter()
        .map(|x| x.to_i64().expect("invariant factor fits in i64"))
        .collect()
}

/// Finite-quotient invariants of a presented group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub abelianization: Vec<i64>,
    /// Group order, `None` when enumeration overflowed.
    pub order: Option<usize>,
    /// Number of homomorphisms into S3 and S4.
    pub homs_s3: usize,
    pub homs_s4: usize,
}

pub fn fingerprint(p: &Presentation, max_cosets: usize) -> Fingerprint {
    let all = HomConstraints::default();
    Fingerprint {
        abelianization: abelianization(p),
        order: group_order(p, max_cosets),
        homs_s3: count_homs(p, 3, all),
        homs_s4: count_homs(p, 4, all),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianizations() {
        let aff = Presentation::three_cuspidal_quartic_affine();
        assert_eq!(abelianization(&aff), vec![0]);
        let proj = add_projective_relation(&aff).unwrap();
        assert_eq!(abelianization(&proj), vec![4]);
        let free_proj = add_projective_relation(&Presentation::free(4)).unwrap();
        assert_eq!(abelianization(&free_proj), vec![0, 0, 0]);
        assert_eq!(abelianization(&Presentation::new(1, vec![FreeWord::new(vec![1, 1])])), vec![2]);
        assert!(add_projective_relation(&Presentation::free(3)).is_err());
    }

    #[test]
    fn projective_order() {
        let proj = add_projective_relation(&Presentation::three_cuspidal_quartic_affine()).unwrap();
        assert_eq!(group_order(&proj, 10_000), Some(12));
        assert_eq!(group_order(&Presentation::three_cuspidal_quartic_projective_reduced(), 10_000), Some(12));
        assert_eq!(group_order(&Presentation::three_cuspidal_quartic_affine(), 10_000), None);
    }

    #[test]
    fn json_round_trip() {
        let p = Presentation::three_cuspidal_quartic_affine();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"{"generators":["a1","a2","b2","b1"],"relators":[[1,2,1,-2,-1,-2]"#));
        assert_eq!(Presentation::from_json(&s).unwrap(), p);
        assert!(Presentation::from_json(r#"{"generators":["a"],"relators":[[2]]}"#).is_err());
    }

    #[test]
    fn van_kampen_of_cusp() {
        let cube = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let p = van_kampen(&[cube], 2).unwrap();
        assert!(!p.relators.is_empty());
        // same group as <x1, x2 | x1 x2 x1 = x2 x1 x2>: order of the quotient by x1^2
        let braid_rel = Presentation::new(2, vec![FreeWord::new(vec![1, 2, 1, -2, -1, -2])]);
        let add_sq = |q: &Presentation| {
            let mut q = q.clone();
            q.relators.push(FreeWord::new(vec![1, 1]));
            q
        };
        assert_eq!(group_order(&add_sq(&p), 1000), Some(6));
        assert_eq!(group_order(&add_sq(&braid_rel), 1000), Some(6));
        assert_eq!(van_kampen(&[], 3).unwrap(), Presentation::free(3));
    }
}
