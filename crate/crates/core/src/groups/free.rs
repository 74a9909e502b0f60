//! Words in a free group on generators `1..=n`; negative letters are inverses.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeWord {
    pub letters: Vec<i32>,
}

impl FreeWord {
    pub fn new(letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0), "zero letter");
        FreeWord { letters }
    }

    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(i: usize) -> Self {
        FreeWord { letters: vec![i as i32] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancel adjacent `g g^-1` pairs.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != -w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.reduced().is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        FreeWord { letters: v }.reduced()
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `self * other * self^-1`.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse())
    }

    /// Freely and cyclically reduced form.
    pub fn cyclically_reduced(&self) -> Self {
        let mut v = self.reduced().letters;
        while v.len() >= 2 && v[0] == -v[v.len() - 1] {
            v.pop();
            v.remove(0);
        }
        FreeWord { letters: v }
    }

    /// Smallest rotation of the cyclic reduction of the word or its inverse;
    /// equal for relators that define the same normal closure up to rotation
    /// and inversion.
    pub fn cyclic_canonical(&self) -> Self {
        let w = self.cyclically_reduced();
        let mut best = w.clone();
        for cand in [w.clone(), w.inverse()] {
            let n = cand.letters.len();
            for r in 0..n {
                let mut rot = cand.letters[r..].to_vec();
                rot.extend_from_slice(&cand.letters[..r]);
                let rot = FreeWord { letters: rot };
                if rot < best {
                    best = rot;
                }
            }
        }
        best
    }

    /// Replace generator `i` by `images[i - 1]`; reduced result.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut v = Vec::new();
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                v.extend_from_slice(&img.letters);
            } else {
                v.extend(img.letters.iter().rev().map(|x| -x));
            }
        }
        FreeWord { letters: v }.reduced()
    }

    /// Exponent sum of each generator `1..=n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut s = vec![0i64; n];
        for &l in &self.letters {
            s[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        s
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Number of occurrences of generator `g` (either sign).
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.unsigned_abs() as usize == g).count()
    }

    /// Human-readable form with the given generator names, e.g. `a1 b2 a1^-1`.
    pub fn format(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&l| {
                let n = &names[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    n.clone()
                } else {
                    format!("{n}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.max_generator();
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

impl From<Vec<i32>> for FreeWord {
    fn from(v: Vec<i32>) -> Self {
        FreeWord::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_inverse() {
        let w = FreeWord::new(vec![1, 2, -2, -1, 3]);
        assert_eq!(w.reduced().letters, vec![3]);
        let a = FreeWord::new(vec![1, 2, -1]);
        assert!(a.mul(&a.inverse()).is_empty());
    }

    #[test]
    fn cyclic_forms() {
        let w = FreeWord::new(vec![-1, 2, 3, 1]);
        assert_eq!(w.cyclically_reduced().letters, vec![2, 3]);
        let a = FreeWord::new(vec![1, 2, 1, -2, -1, -2]);
        let b = FreeWord::new(vec![2, 1, -2, -1, -2, 1]);
        assert_eq!(a.cyclic_canonical(), b.cyclic_canonical());
        assert_eq!(a.cyclic_canonical(), a.inverse().cyclic_canonical());
    }

    #[test]
    fn substitution() {
        let w = FreeWord::new(vec![1, -2]);
        let imgs = [FreeWord::new(vec![2, 1]), FreeWord::new(vec![1])];
        assert_eq!(w.substitute(&imgs).letters, vec![2]);
    }
}
