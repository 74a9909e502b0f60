//! Braid words and the Artin action on the free group.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::free::FreeWord;
use crate::groups::perm::{product, Perm};

/// Word in the Artin generators of `B_n`; letter `i` is `sigma_i`, `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("a braid needs at least two strands".into()));
        }
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= n) {
            return Err(Error::IndexOutOfRange { index: l as i64, n });
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    pub fn sigma(n: usize, i: i32) -> Result<Self> {
        Self::new(n, vec![i])
    }

    /// Parses a JSON object `{"n": 4, "letters": [...]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let b: BraidWord = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(b.n, b.letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.n, other.n, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn pow(&self, k: i32) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { n: self.n, letters }
    }

    /// `w * self * w^-1`.
    pub fn conjugate_by(&self, w: &BraidWord) -> BraidWord {
        w.mul(self).mul(&w.inverse())
    }

    /// Cancels adjacent `i, -i` pairs.
    pub fn free_reduced(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { n: self.n, letters: out }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Image in `S_n`: letter `i` maps to the transposition `(i, i+1)`.
    pub fn permutation(&self) -> Perm {
        let ts: Vec<Perm> =
            self.letters.iter().map(|&l| Perm::transposition(self.n, l.unsigned_abs() as usize, l.unsigned_abs() as usize + 1)).collect();
        product(self.n, &ts)
    }

    /// Images of `x_1..x_n` under the braid automorphism. Letters act first
    /// to last: the automorphism of `b1 b2` is that of `b2` applied after
    /// that of `b1`.
    pub fn artin_images(&self) -> Vec<FreeWord> {
        let mut images: Vec<FreeWord> = (1..=self.n).map(FreeWord::generator).collect();
        for &l in self.letters.iter().rev() {
            images = letter_images(self.n, l).iter().map(|w| w.substitute(&images)).collect();
        }
        images
    }

    /// Image of a free word under the braid automorphism.
    pub fn act(&self, w: &FreeWord) -> Result<FreeWord> {
        if w.max_generator() > self.n {
            return Err(Error::IndexOutOfRange { index: w.max_generator() as i64, n: self.n });
        }
        Ok(w.substitute(&self.artin_images()))
    }
}

/// Images of the generators under a single Artin letter.
fn letter_images(n: usize, l: i32) -> Vec<FreeWord> {
    let i = l.unsigned_abs() as usize;
    let (a, b) = (i as i32, i as i32 + 1);
    (1..=n)
        .map(|k| {
            if k == i {
                if l > 0 {
                    FreeWord::new(vec![a, b, -a])
                } else {
                    FreeWord::generator(i + 1)
                }
            } else if k == i + 1 {
                if l > 0 {
                    FreeWord::generator(i)
                } else {
                    FreeWord::new(vec![-b, a, b])
                }
            } else {
                FreeWord::generator(k)
            }
        })
        .collect()
}

/// Image of `word` under the automorphism of `braid`.
pub fn artin_action(braid: &BraidWord, word: &FreeWord) -> Result<FreeWord> {
    braid.act(word)
}

/// Equality in `B_n`, decided through the faithful Artin action.
pub fn braid_equal(b1: &BraidWord, b2: &BraidWord) -> bool {
    b1.n == b2.n && b1.artin_images() == b2.artin_images()
}

/// Left-to-right product of a factor list.
pub fn ordered_product(n: usize, factors: &[BraidWord]) -> BraidWord {
    factors.iter().fold(BraidWord::identity(n), |acc, b| acc.mul(b))
}

/// Hurwitz move at position `i`: `(b_i, b_{i+1}) -> (b_i b_{i+1} b_i^-1, b_i)`.
pub fn hurwitz_move(factors: &[BraidWord], i: usize) -> Result<Vec<BraidWord>> {
    if i + 1 >= factors.len() {
        return Err(Error::IndexOutOfRange { index: i as i64, n: factors.len() });
    }
    let mut out = factors.to_vec();
    out[i] = factors[i + 1].conjugate_by(&factors[i]);
    out[i + 1] = factors[i].clone();
    Ok(out)
}

/// Whether `b = w * sigma_1^k * w^-1`.
pub fn conjugate_of_sigma1_power(b: &BraidWord, w: &BraidWord, k: i32) -> bool {
    let s = BraidWord { n: b.n, letters: vec![1] }.pow(k);
    braid_equal(b, &s.conjugate_by(w))
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.letters.iter().map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn conventions() {
        assert_eq!(b(2, &[1]).act(&FreeWord::generator(1)).unwrap(), FreeWord::new(vec![1, 2, -1]));
        assert_eq!(b(2, &[1]).act(&FreeWord::generator(2)).unwrap(), FreeWord::generator(1));
        assert!(braid_equal(&b(3, &[1, 2, 1]), &b(3, &[2, 1, 2])));
        assert!(braid_equal(&b(3, &[1, -1]), &BraidWord::identity(3)));
        assert!(!braid_equal(&b(3, &[1]), &b(3, &[2])));
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert_eq!(b(4, &[1]).permutation().to_string(), "(1,2)");
        assert_eq!(b(4, &[1, 1, 1]).permutation().to_string(), "(1,2)");
    }

    #[test]
    fn tangency_half_twist_action() {
        let t = b(4, &[-3, 2, 1, -2, 3]);
        let im: Vec<Vec<i32>> = t.artin_images().into_iter().map(|w| w.letters).collect();
        assert_eq!(
            im,
            vec![vec![1, 3, 4, -3, -1], vec![1, 3, -4, -3, 2, 3, 4, -3, -1], vec![3], vec![-3, 1, 3]]
        );
    }

    #[test]
    fn action_composes_in_letter_order() {
        let (p, q) = (b(3, &[1, -2]), b(3, &[2, 2, 1]));
        let w = FreeWord::new(vec![1, -3, 2]);
        let lhs = p.mul(&q).act(&w).unwrap();
        let rhs = q.act(&p.act(&w).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hurwitz_preserves_product() {
        let f = vec![b(3, &[1, 1, 1]), b(3, &[2]), b(3, &[-1, 2, 1])];
        let h = hurwitz_move(&f, 1).unwrap();
        assert!(braid_equal(&ordered_product(3, &f), &ordered_product(3, &h)));
    }
}
