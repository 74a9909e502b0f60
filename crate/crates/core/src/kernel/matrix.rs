//! Dense matrices over a coefficient ring.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Ring> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// `v^T M w`.
    pub fn bilinear(&self, v: &[C], w: &[C]) -> C {
        let mut acc = C::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc = acc + v[i].clone() * self[(i, j)].clone() * w[j].clone();
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// Determinant by cofactor expansion with memoized minors. Division free,
    /// so it works over any commutative ring, including polynomial rings.
    pub fn determinant(&self) -> Result<C> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(C::one());
        }
        assert!(n <= 24, "cofactor determinant limited to 24x24");
        let mut memo: HashMap<u32, C> = HashMap::new();
        Ok(self.minor_det(0, (1u32 << n) - 1, &mut memo))
    }

    fn minor_det(&self, row: usize, cols: u32, memo: &mut HashMap<u32, C>) -> C {
        if cols == 0 {
            return C::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = C::zero();
        let mut sign_neg = false;
        for j in 0..self.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = &self[(row, j)];
            if !a.is_zero() {
                let sub = self.minor_det(row + 1, cols & !(1 << j), memo);
                let t = a.clone() * sub;
                acc = if sign_neg { acc - t } else { acc + t };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}

impl<C: Field> Matrix<C> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = C::one() / m[(r, c)].clone();
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<C>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| if j < self.cols { self[(i, j)].clone() } else { b[i].clone() });
        let (m, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![C::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m[(r, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl Matrix<f64> {
    /// Numerical rank with relative tolerance, by Gaussian elimination with
    /// full pivoting.
    pub fn rank_approx(&self, rel_tol: f64) -> usize {
        let mut m = self.clone();
        let scale = m.data.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        if scale == 0.0 {
            return 0;
        }
        let mut rank = 0;
        let mut used_rows = vec![false; m.rows];
        let mut used_cols = vec![false; m.cols];
        loop {
            let mut best = (0.0, 0, 0);
            for i in (0..m.rows).filter(|&i| !used_rows[i]) {
                for j in (0..m.cols).filter(|&j| !used_cols[j]) {
                    if m[(i, j)].abs() > best.0 {
                        best = (m[(i, j)].abs(), i, j);
                    }
                }
            }
            if best.0 <= rel_tol * scale {
                return rank;
            }
            let (_, pi, pj) = best;
            used_rows[pi] = true;
            used_cols[pj] = true;
            rank += 1;
            for i in (0..m.rows).filter(|&i| !used_rows[i]) {
                let f = m[(i, pj)] / m[(pi, pj)];
                for j in 0..m.cols {
                    m[(i, j)] -= f * m[(pi, j)];
                }
            }
        }
    }
}

impl<C> Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

impl<C: Ring> Mul<&Matrix<C>> for &Matrix<C> {
    type Output = Matrix<C>;
    fn mul(self, rhs: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(C::zero(), |acc, k| acc + self[(i, k)].clone() * rhs[(k, j)].clone())
        })
    }
}

impl<C: Ring> Add<&Matrix<C>> for &Matrix<C> {
    type Output = Matrix<C>;
    fn add(self, rhs: &Matrix<C>) -> Matrix<C> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }
}

impl<C: Ring> Sub<&Matrix<C>> for &Matrix<C> {
    type Output = Matrix<C>;
    fn sub(self, rhs: &Matrix<C>) -> Matrix<C> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
