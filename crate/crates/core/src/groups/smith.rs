//! Smith normal form over the integers.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::Integer;

/// Diagonal of the Smith normal form of an integer matrix (rows x cols),
/// nonzero entries only, each dividing the next.
pub fn smith_diagonal(m: &[Vec<i64>], cols: usize) -> Vec<Integer> {
    let mut a: Vec<Vec<Integer>> = m.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect();
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = false;
        while !done {
            done = true;
            let p = a[t][t].clone();
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let qt = a[i][t].div_floor(&p);
                    for j in t..cols {
                        let s = &qt * &a[t][j];
                        a[i][j] -= s;
                    }
                    if !a[i][t].is_zero() {
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let qt = a[t][j].div_floor(&p);
                    for row in a.iter_mut().skip(t) {
                        let s = &qt * &row[t];
                        row[j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        done = false;
                    }
                }
            }
            if !done {
                // move the smallest remaining entry of row/column t to the pivot
                let mut bi = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi.0][bi.1].abs() {
                        bi = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi.0][bi.1].abs() {
                        bi = (t, j);
                    }
                }
                a.swap(t, bi.0);
                for row in a.iter_mut() {
                    row.swap(t, bi.1);
                }
                continue;
            }
            // divisibility: if some entry is not divisible by the pivot, add its row
            let p = a[t][t].clone();
            if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero())) {
                for j in t..cols {
                    let x = a[i][j].clone();
                    a[t][j] += x;
                }
                done = false;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Invariant factors of the abelian group `Z^cols / rowspace(m)`: torsion
/// factors greater than 1 first, then one `0` per free factor.
pub fn invariant_factors(m: &[Vec<i64>], cols: usize) -> Vec<Integer> {
    let d = smith_diagonal(m, cols);
    let free = cols - d.len();
    let mut out: Vec<Integer> = d.into_iter().filter(|x| *x > Integer::from(1)).collect();
    out.extend(std::iter::repeat_n(Integer::zero(), free));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(invariant_factors(&[vec![2]], 1), vec![Integer::from(2)]);
        assert_eq!(invariant_factors(&[vec![2, 4], vec![6, 8]], 2), vec![Integer::from(2), Integer::from(4)]);
        assert_eq!(invariant_factors(&[vec![1, -1, 0]], 3), vec![Integer::zero(), Integer::zero()]);
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]], 2), vec![Integer::from(6)]);
    }
}
