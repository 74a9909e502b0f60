//! Permutations of `{1..n}` stored zero-based, composed left to right.

use std::fmt;

use serde::Serialize;

pub const MAX_DEGREE: usize = 8;

/// Permutation of at most [`MAX_DEGREE`] points; `img[i]` is the image of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree too large");
        let mut img = [0u8; MAX_DEGREE];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm { n: n as u8, img }
    }

    pub fn from_images(v: &[usize]) -> Self {
        let mut p = Self::identity(v.len());
        for (i, &x) in v.iter().enumerate() {
            p.img[i] = x as u8;
        }
        p
    }

    /// Transposition of the one-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.img.swap(i - 1, j - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        (0..self.degree()).map(|i| self.apply(i)).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        let mut p = *self;
        for i in 0..self.degree() {
            p.img[i] = other.img[self.img[i] as usize];
        }
        p
    }

    pub fn inverse(&self) -> Perm {
        let mut p = *self;
        for i in 0..self.degree() {
            p.img[self.img[i] as usize] = i as u8;
        }
        p
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.degree()).all(|i| self.apply(i) == i)
    }

    pub fn is_transposition(&self) -> bool {
        (0..self.degree()).filter(|&i| self.apply(i) != i).count() == 2
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut c = vec![s + 1];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x + 1);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// Cycle type as sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable();
        t
    }

    /// All permutations of degree `n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm::from_images(&v));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
            v.swap(i, j);
            v[i + 1..].reverse();
        }
    }

    pub fn transpositions(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(Perm::transposition(n, i, j));
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.cycles();
        if c.is_empty() {
            return write!(f, "()");
        }
        for cyc in c {
            let s: Vec<String> = cyc.iter().map(ToString::to_string).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Left-to-right product of a sequence of permutations of degree `n`.
pub fn product(n: usize, perms: &[Perm]) -> Perm {
    perms.iter().fold(Perm::identity(n), |acc, p| acc.then(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_four_transpositions() {
        let t = |i, j| Perm::transposition(4, i, j);
        let p = product(4, &[t(1, 2), t(2, 3), t(2, 4), t(1, 4)]);
        assert_eq!(p.to_string(), "(1,3)(2,4)");
        assert_eq!(p.cycle_type(), vec![2, 2]);
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::transpositions(4).len(), 6);
        let g = Perm::from_images(&[1, 2, 0]);
        assert_eq!(g.then(&g.inverse()), Perm::identity(3));
    }
}
