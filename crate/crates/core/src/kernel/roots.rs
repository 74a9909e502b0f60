//! Simultaneous root finding (Aberth–Ehrlich) with a posteriori inclusion radii.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Approximate root with inclusion radius and multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproxRoot<F> {
    pub value: Complex<F>,
    pub radius: F,
    pub multiplicity: usize,
}

impl<F: Real> ApproxRoot<F> {
    pub fn contains(&self, z: Complex<F>) -> bool {
        (self.value - z).norm() <= self.radius
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        (self.value - other.value).norm() <= self.radius + other.radius
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootMode {
    /// Every root simple; inclusion disks must be pairwise disjoint.
    Simple,
    /// Roots whose inflated disks overlap are merged into one cluster.
    Cluster,
}

#[derive(Clone, Copy, Debug)]
pub struct RootConfig {
    pub max_iterations: usize,
    /// Inflation factor applied to radii before testing cluster overlap.
    pub cluster_inflation: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { max_iterations: 2000, cluster_inflation: 2.0 }
    }
}

/// Evaluate `p` and `p'` at `z` (coefficients lowest degree first).
pub fn eval_with_derivative<F: Real>(coeffs: &[Complex<F>], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + *c;
    }
    (p, dp)
}

pub fn eval<F: Real>(coeffs: &[Complex<F>], z: Complex<F>) -> Complex<F> {
    coeffs.iter().rev().fold(Complex::zero(), |acc, c| acc * z + *c)
}

/// Running rounding-error bound for Horner evaluation at `z`.
fn eval_error_bound<F: Real>(coeffs: &[Complex<F>], z: Complex<F>) -> F {
    let az = z.norm();
    let mut acc = F::zero();
    for c in coeffs.iter().rev() {
        acc = acc * az + c.norm();
    }
    acc * F::epsilon() * F::lit(4.0 * coeffs.len() as f64)
}

/// Taylor coefficients of `p` at `z`: `p(z + h) = sum t_k h^k`.
pub fn taylor_shift<F: Real>(coeffs: &[Complex<F>], z: Complex<F>) -> Vec<Complex<F>> {
    let mut t = coeffs.to_vec();
    let n = t.len();
    for k in 0..n {
        for j in (k..n - 1).rev() {
            let next = t[j + 1];
            t[j] = t[j] + z * next;
        }
    }
    t
}

/// Upper bound on the distance from `z` to the nearest root of `p`:
/// `min_k (C(n,k) |p(z)| / |p^(k)(z)/k!|)^(1/k)`.
pub fn nearest_root_bound<F: Real>(coeffs: &[Complex<F>], z: Complex<F>) -> F {
    let t = taylor_shift(coeffs, z);
    let n = t.len() - 1;
    let p0 = t[0].norm() + eval_error_bound(coeffs, z);
    let mut best = F::infinity();
    let mut binom = F::one();
    for k in 1..=n {
        binom = binom * F::lit((n + 1 - k) as f64) / F::lit(k as f64);
        let tk = t[k].norm();
        if tk > F::zero() {
            let b = (binom * p0 / tk).powf(F::one() / F::lit(k as f64));
            if b < best {
                best = b;
            }
        }
    }
    best
}

fn trimmed<F: Real>(coeffs: &[Complex<F>]) -> Result<&[Complex<F>]> {
    let lead = coeffs.last().ok_or(Error::ZeroPolynomial)?;
    if lead.is_zero() {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    if coeffs.len() < 2 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Precondition("non-finite coefficient".into()));
    }
    Ok(coeffs)
}

/// Raw Aberth–Ehrlich iteration; returns approximations without radii.
pub fn aberth<F: Real>(coeffs: &[Complex<F>], cfg: &RootConfig) -> Result<Vec<Complex<F>>> {
    let coeffs = trimmed(coeffs)?;
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    if n == 1 {
        return Ok(vec![-coeffs[0] / lead]);
    }
    let mut r = F::zero();
    for (k, c) in coeffs.iter().enumerate().take(n) {
        let v = (c / lead).norm().powf(F::one() / F::lit((n - k) as f64));
        if v > r {
            r = v;
        }
    }
    if r == F::zero() {
        r = F::one();
    }
    let two_pi = F::TAU();
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let a = two_pi * F::lit(k as f64) / F::lit(n as f64) + F::lit(0.4);
            Complex::from_polar(r, a)
        })
        .collect();
    let mut frozen = vec![false; n];
    for _ in 0..cfg.max_iterations {
        let mut all = true;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p.norm() <= eval_error_bound(coeffs, z[i]) {
                frozen[i] = true;
                continue;
            }
            all = false;
            let ratio = p / dp;
            let mut s = Complex::zero();
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if !d.is_zero() {
                        s = s + Complex::<F>::one() / d;
                    }
                }
            }
            let denom = Complex::<F>::one() - ratio * s;
            let w = if denom.is_zero() || !dp.norm().is_normal() { ratio } else { ratio / denom };
            if !w.re.is_finite() || !w.im.is_finite() {
                z[i] = z[i] + Complex::new(F::epsilon().sqrt(), F::epsilon().sqrt()) * (F::one() + z[i].norm());
                continue;
            }
            z[i] = z[i] - w;
            if w.norm() <= F::epsilon() * (F::one() + z[i].norm()) {
                frozen[i] = true;
            }
        }
        if all {
            return Ok(z);
        }
    }
    if frozen.iter().all(|f| *f) {
        return Ok(z);
    }
    Err(Error::NonConvergence { iterations: cfg.max_iterations })
}

/// Weierstrass-type inclusion radii `n |p(z_i)| / |a_n prod_{j != i} (z_i - z_j)|`,
/// floored at one ulp of `1 + |z_i|` so exact float roots keep a nonzero disk.
pub fn inclusion_radii<F: Real>(coeffs: &[Complex<F>], z: &[Complex<F>]) -> Vec<F> {
    let n = z.len();
    let lead = coeffs[coeffs.len() - 1];
    (0..n)
        .map(|i| {
            let p = eval(coeffs, z[i]).norm() + eval_error_bound(coeffs, z[i]);
            let mut prod = lead.norm();
            for j in 0..n {
                if j != i {
                    prod = prod * (z[i] - z[j]).norm();
                }
            }
            let w = if prod > F::zero() { p / prod } else { F::infinity() };
            (F::lit(n as f64) * w).max(F::epsilon() * (F::one() + z[i].norm()))
        })
        .collect()
}

/// All roots of `sum coeffs[k] x^k` with inclusion radii.
pub fn roots_univariate<F: Real>(coeffs: &[Complex<F>], mode: RootMode) -> Result<Vec<ApproxRoot<F>>> {
    roots_with_config(coeffs, mode, &RootConfig::default())
}

pub fn roots_with_config<F: Real>(coeffs: &[Complex<F>], mode: RootMode, cfg: &RootConfig) -> Result<Vec<ApproxRoot<F>>> {
    let mut z = aberth(coeffs, cfg)?;
    if mode == RootMode::Simple {
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let (p, dp) = eval_with_derivative(coeffs, *zi);
                if dp.is_zero() {
                    break;
                }
                let step = p / dp;
                if !step.re.is_finite() {
                    break;
                }
                *zi = *zi - step;
            }
        }
    }
    let radii = inclusion_radii(coeffs, &z);
    match mode {
        RootMode::Simple => {
            for i in 0..z.len() {
                for j in i + 1..z.len() {
                    if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                        return Err(Error::RootsNotSeparated(i, j));
                    }
                }
            }
            Ok(z.iter().zip(&radii).map(|(&value, &radius)| ApproxRoot { value, radius, multiplicity: 1 }).collect())
        }
        RootMode::Cluster => Ok(merge_clusters(coeffs, &z, &radii, F::lit(cfg.cluster_inflation))),
    }
}

fn merge_clusters<F: Real>(coeffs: &[Complex<F>], z: &[Complex<F>], radii: &[F], inflate: F) -> Vec<ApproxRoot<F>> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= inflate * (radii[i] + radii[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out = Vec::new();
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| find(&mut parent, i) == root).collect();
        if members.is_empty() {
            continue;
        }
        let m = members.len();
        let mut center = members.iter().fold(Complex::zero(), |acc: Complex<F>, &i| acc + z[i]) / F::lit(m as f64);
        let spread = members.iter().map(|&i| (z[i] - center).norm() + radii[i]).fold(F::zero(), F::max);
        if m > 1 {
            center = refine_cluster_center(coeffs, center, m, spread);
        }
        let radius = members.iter().map(|&i| (z[i] - center).norm() + radii[i]).fold(F::zero(), F::max);
        out.push(ApproxRoot { value: center, radius, multiplicity: m });
    }
    out
}

/// Newton on the `(m-1)`-th derivative, which has a simple root inside a
/// cluster of `m` roots; kept only if it stays within the cluster.
fn refine_cluster_center<F: Real>(coeffs: &[Complex<F>], start: Complex<F>, m: usize, spread: F) -> Complex<F> {
    let mut d: Vec<Complex<F>> = coeffs.to_vec();
    for _ in 0..m - 1 {
        d = d.iter().enumerate().skip(1).map(|(k, c)| *c * F::lit(k as f64)).collect();
    }
    if d.len() < 2 {
        return start;
    }
    let mut c = start;
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(&d, c);
        if dp.is_zero() {
            break;
        }
        let step = p / dp;
        if !step.re.is_finite() {
            break;
        }
        c = c - step;
        if step.norm() <= F::epsilon() * (F::one() + c.norm()) {
            break;
        }
    }
    if (c - start).norm() <= spread {
        c
    } else {
        start
    }
}

/// Build coefficients from real `f64` values.
pub fn real_coeffs(c: &[f64]) -> Vec<Complex<f64>> {
    c.iter().map(|&x| Complex::new(x, 0.0)).collect()
}
