//! Coset enumeration (HLT strategy with coincidence processing).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::free::FreeWord;
use crate::groups::presentation::Presentation;

const UNDEF: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableStatus {
    Complete,
    Overflow,
}

/// Coset table for the trivial subgroup. Column `2k` is generator `k+1`,
/// column `2k+1` its inverse.
#[derive(Clone, Debug)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<Vec<usize>>,
    forward: Vec<usize>,
    queue: Vec<usize>,
    live: usize,
    pub status: TableStatus,
    pub cosets_defined: usize,
}

fn col(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl CosetTable {
    fn new(ngens: usize) -> Self {
        CosetTable {
            ngens,
            rows: vec![vec![UNDEF; 2 * ngens]],
            forward: vec![0],
            queue: Vec::new(),
            live: 1,
            status: TableStatus::Complete,
            cosets_defined: 1,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] != r {
            r = self.forward[r];
        }
        let mut x = c;
        while self.forward[x] != r {
            let next = self.forward[x];
            self.forward[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize, max: usize) -> Result<usize> {
        if self.live >= max {
            return Err(Error::CosetOverflow(max));
        }
        let d = self.rows.len();
        self.rows.push(vec![UNDEF; 2 * self.ngens]);
        self.forward.push(d);
        self.cosets_defined += 1;
        self.live += 1;
        self.rows[c][x] = d;
        self.rows[d][inv_col(x)] = c;
        Ok(d)
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (m, n) = (k.min(l), k.max(l));
        self.forward[n] = m;
        self.live -= 1;
        self.queue.push(n);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..2 * self.ngens {
                let f = self.rows[e][x];
                if f == UNDEF {
                    continue;
                }
                if self.rows[f][inv_col(x)] == e {
                    self.rows[f][inv_col(x)] = UNDEF;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.rows[e1][x] != UNDEF {
                    let t = self.rows[e1][x];
                    self.merge(f1, t);
                } else if self.rows[f1][inv_col(x)] != UNDEF {
                    let t = self.rows[f1][inv_col(x)];
                    self.merge(e1, t);
                } else {
                    self.rows[e1][x] = f1;
                    self.rows[f1][inv_col(x)] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize], max: usize) -> Result<()> {
        let n = w.len();
        if n == 0 {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = n as isize - 1;
        loop {
            while (i as isize) <= j && self.rows[f][w[i]] != UNDEF {
                f = self.rows[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.rows[b][inv_col(w[j as usize])] != UNDEF {
                b = self.rows[b][inv_col(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.rows[f][w[i]] = b;
                self.rows[b][inv_col(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i], max)?;
        }
    }

    /// Number of live cosets.
    pub fn order(&self) -> usize {
        self.live
    }

    /// Compacted table: `perm[g][c]` is the coset reached from `c` by generator `g+1`.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        let live: Vec<usize> = (0..self.rows.len()).filter(|&c| self.is_live(c)).collect();
        let index = |c: usize| live.iter().position(|&x| x == c).expect("live target");
        (0..self.ngens).map(|g| live.iter().map(|&c| index(self.rows[c][2 * g])).collect()).collect()
    }

    /// Every relator acts trivially on every coset.
    pub fn relators_hold(&self, p: &Presentation) -> bool {
        let perms = self.permutations();
        let n = perms.first().map_or(1, Vec::len);
        let inv: Vec<Vec<usize>> = perms
            .iter()
            .map(|pg| {
                let mut v = vec![0; n];
                for (i, &x) in pg.iter().enumerate() {
                    v[x] = i;
                }
                v
            })
            .collect();
        p.relators.iter().all(|r| {
            (0..n).all(|c0| {
                let mut c = c0;
                for &l in &r.letters {
                    let g = l.unsigned_abs() as usize - 1;
                    c = if l > 0 { perms[g][c] } else { inv[g][c] };
                }
                c == c0
            })
        })
    }
}

/// Enumerate cosets of the trivial subgroup; returns the complete table or
/// [`Error::CosetOverflow`].
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Precondition("max_cosets must be at least 1".into()));
    }
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r: &FreeWord| r.letters.iter().map(|&l| col(l)).collect())
        .filter(|r: &Vec<usize>| !r.is_empty())
        .collect();
    let n = p.n_generators();
    let mut t = CosetTable::new(n);
    let mut c = 0;
    while c < t.rows.len() {
        if t.is_live(c) {
            for r in &rels {
                if !t.is_live(c) {
                    break;
                }
                t.scan_and_fill(c, r, max_cosets)?;
            }
            for x in 0..2 * n {
                if !t.is_live(c) {
                    break;
                }
                if t.rows[c][x] == UNDEF {
                    t.define(c, x, max_cosets)?;
                }
            }
        }
        c += 1;
    }
    t.status = TableStatus::Complete;
    Ok(t)
}

/// Group order, or `None` on overflow.
pub fn group_order(p: &Presentation, max_cosets: usize) -> Option<usize> {
    todd_coxeter(p, max_cosets).ok().map(|t| t.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: usize, rels: &[&[i32]]) -> Presentation {
        Presentation::new(n, rels.iter().map(|r| FreeWord::new(r.to_vec())).collect())
    }

    #[test]
    fn cyclic_groups() {
        assert_eq!(group_order(&pres(1, &[&[1, 1, 1, 1, 1]]), 100), Some(5));
        assert_eq!(group_order(&pres(1, &[]), 50), None);
    }

    #[test]
    fn symmetric_group_s3() {
        // <a, b | a^2, b^2, (ab)^3>
        let p = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        let t = todd_coxeter(&p, 1000).unwrap();
        assert_eq!(t.order(), 6);
        assert!(t.relators_hold(&p));
    }

    #[test]
    fn braid_quotient_with_coincidences() {
        // <a, b | aba = bab, a^3> has order 24
        let p = pres(2, &[&[1, 2, 1, -2, -1, -2], &[1, 1, 1]]);
        let t = todd_coxeter(&p, 10000).unwrap();
        assert_eq!(t.order(), 24);
        assert!(t.relators_hold(&p));
    }
}
