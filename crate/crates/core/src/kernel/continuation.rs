//! Root continuation along piecewise-linear paths in the parameter plane.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::mpoly::MPoly;
use crate::kernel::roots::{eval_with_derivative, ApproxRoot};
use crate::scalar::Real;
use crate::Rational;

/// A polynomial in `y` whose coefficients depend on a complex parameter `x`.
pub trait FiberFamily<F: Real>: Sync {
    /// Coefficients of the fiber polynomial at `x`, lowest degree in `y` first.
    fn fiber(&self, x: Complex<F>) -> Vec<Complex<F>>;
}

/// `sum_k c_k(x) y^k` with each `c_k` a polynomial in `x`.
#[derive(Clone, Debug)]
pub struct BivariateFamily<F> {
    /// `coeffs[k][j]` is the coefficient of `x^j y^k`.
    pub coeffs: Vec<Vec<Complex<F>>>,
}

impl<F: Real> BivariateFamily<F> {
    pub fn from_mpoly(p: &MPoly<Rational>, x: &str, y: &str) -> Result<Self> {
        let xi = p.var_index(x)?;
        let yi = p.var_index(y)?;
        if p.terms().any(|(e, _)| e.iter().enumerate().any(|(k, &v)| k != xi && k != yi && v != 0)) {
            return Err(Error::Precondition("fiber family must only involve x and y".into()));
        }
        let dy = p.degree_in(y)? as usize;
        let dx = p.degree_in(x)? as usize;
        let mut coeffs = vec![vec![Complex::zero(); dx + 1]; dy + 1];
        for (e, c) in p.terms() {
            coeffs[e[yi] as usize][e[xi] as usize] = Complex::new(F::from_rational(c), F::zero());
        }
        Ok(BivariateFamily { coeffs })
    }
}

impl<F: Real> FiberFamily<F> for BivariateFamily<F> {
    fn fiber(&self, x: Complex<F>) -> Vec<Complex<F>> {
        self.coeffs
            .iter()
            .map(|cx| cx.iter().rev().fold(Complex::zero(), |acc, c| acc * x + *c))
            .collect()
    }
}

/// Motion of one root: samples `(parameter, position)` with increasing parameter.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrandPath<F> {
    pub strand_id: usize,
    pub samples: Vec<(F, Complex<F>)>,
}

impl<F: Real> StrandPath<F> {
    pub fn start(&self) -> Complex<F> {
        self.samples[0].1
    }

    pub fn end(&self) -> Complex<F> {
        self.samples[self.samples.len() - 1].1
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ContinuationConfig {
    /// Step halvings allowed before a step is declared stalled.
    pub max_halvings: u32,
    /// Minimum admissible distance between strands anywhere on the path.
    pub min_separation: f64,
    pub newton_iterations: usize,
    /// Largest parameter step attempted.
    pub max_step: f64,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        ContinuationConfig { max_halvings: 40, min_separation: 1e-9, newton_iterations: 12, max_step: 1.0 / 32.0 }
    }
}

/// Point on the piecewise-linear path at parameter `s` in `[0, 1]`; vertex
/// `k` sits at parameter `k / (len - 1)`.
pub fn path_point<F: Real>(path: &[Complex<F>], s: F) -> Complex<F> {
    let segs = path.len() - 1;
    if segs == 0 {
        return path[0];
    }
    let t = s * F::lit(segs as f64);
    let k = t.floor().to_usize().unwrap_or(0).min(segs - 1);
    let h = t - F::lit(k as f64);
    path[k] + (path[k + 1] - path[k]) * h
}

fn min_pairwise<F: Real>(z: &[Complex<F>]) -> F {
    let mut best = F::infinity();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            best = best.min((z[i] - z[j]).norm());
        }
    }
    best
}

fn newton<F: Real>(coeffs: &[Complex<F>], start: Complex<F>, iters: usize) -> Option<Complex<F>> {
    let mut z = start;
    for _ in 0..iters {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.is_zero() {
            return None;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        z = z - step;
        if step.norm() <= F::lit(64.0) * F::epsilon() * (F::one() + z.norm()) {
            return Some(z);
        }
    }
    None
}

/// Track every root of the fiber along `path`.
///
/// A step is accepted when Newton started at each previous position
/// converges on the new fiber, every correction is below a third of the
/// smallest pairwise distance of the current positions, and the corrected
/// positions are distinct. Otherwise the step is halved.
pub fn continue_roots<F: Real, Fam: FiberFamily<F> + ?Sized>(
    family: &Fam,
    path: &[Complex<F>],
    initial: &[ApproxRoot<F>],
    cfg: &ContinuationConfig,
) -> Result<Vec<StrandPath<F>>> {
    let start: Vec<Complex<F>> = initial.iter().map(|r| r.value).collect();
    continue_points(family, path, &start, cfg)
}

pub fn continue_points<F: Real, Fam: FiberFamily<F> + ?Sized>(
    family: &Fam,
    path: &[Complex<F>],
    start: &[Complex<F>],
    cfg: &ContinuationConfig,
) -> Result<Vec<StrandPath<F>>> {
    if path.is_empty() {
        return Err(Error::Precondition("empty path".into()));
    }
    let min_sep = F::lit(cfg.min_separation);
    let mut pos = start.to_vec();
    let sep0 = min_pairwise(&pos);
    if sep0 < min_sep {
        return Err(Error::Clearance { parameter: 0.0, distance: sep0.to_f64().unwrap_or(0.0) });
    }
    let mut paths: Vec<StrandPath<F>> =
        (0..pos.len()).map(|i| StrandPath { strand_id: i, samples: vec![(F::zero(), pos[i])] }).collect();
    let segs = path.len().saturating_sub(1).max(1);
    // Next path vertex strictly after `s`; `s * segs` may round just below an integer.
    let node = |s: F| -> F {
        let n = F::lit(segs as f64);
        let mut t = (s * n).floor() + F::one();
        if t / n <= s {
            t = t + F::one();
        }
        (t / n).min(F::one())
    };
    let max_step = F::lit(cfg.max_step);
    let mut s = F::zero();
    let mut step = max_step;
    let third = F::one() / F::lit(3.0);
    while s < F::one() {
        let mut halvings = 0;
        loop {
            let target = (s + step).min(node(s));
            if target <= s {
                return Err(Error::ContinuationStalled { parameter: s.to_f64().unwrap_or(0.0), halvings });
            }
            let coeffs = family.fiber(path_point(path, target));
            if coeffs.last().is_none_or(|c| c.is_zero()) {
                return Err(Error::Precondition("fiber degree drops along the path".into()));
            }
            let sep = min_pairwise(&pos);
            let corrected: Option<Vec<Complex<F>>> = pos.iter().map(|&z| newton(&coeffs, z, cfg.newton_iterations)).collect();
            let ok = corrected.as_ref().is_some_and(|c| {
                c.iter().zip(&pos).all(|(a, b)| (*a - *b).norm() < third * sep) && min_pairwise(c) > F::zero()
            });
            if ok {
                let c = corrected.unwrap();
                let new_sep = min_pairwise(&c);
                if new_sep < min_sep {
                    return Err(Error::Clearance {
                        parameter: target.to_f64().unwrap_or(0.0),
                        distance: new_sep.to_f64().unwrap_or(0.0),
                    });
                }
                for (p, z) in paths.iter_mut().zip(&c) {
                    p.samples.push((target, *z));
                }
                pos = c;
                s = target;
                step = (step + step).min(max_step);
                break;
            }
            halvings += 1;
            if halvings > cfg.max_halvings {
                return Err(Error::ContinuationStalled { parameter: s.to_f64().unwrap_or(0.0), halvings });
            }
            step = step / F::lit(2.0);
        }
    }
    Ok(paths)
}

/// Permutation `perm[i] = j` such that strand `i` ends at `end_roots[j]`;
/// fails unless each end position lies in exactly one disk.
pub fn match_endpoints<F: Real>(paths: &[StrandPath<F>], end_roots: &[ApproxRoot<F>]) -> Result<Vec<usize>> {
    let mut perm = Vec::with_capacity(paths.len());
    for p in paths {
        let z = p.end();
        let hits: Vec<usize> = end_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| (r.value - z).norm() <= r.radius.max(F::lit(1e-8) * (F::one() + z.norm())))
            .map(|(j, _)| j)
            .collect();
        match hits.as_slice() {
            [j] => perm.push(*j),
            _ => return Err(Error::Validation(format!("end point of strand {} matches {} roots", p.strand_id, hits.len()))),
        }
    }
    let mut seen = perm.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != perm.len() {
        return Err(Error::Validation("end points are not a permutation of the fiber".into()));
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// y^2 - x
    fn sqrt_family() -> BivariateFamily<f64> {
        let c = |re: f64| Complex::new(re, 0.0);
        BivariateFamily { coeffs: vec![vec![c(0.0), c(-1.0)], vec![c(0.0)], vec![c(1.0)]] }
    }

    fn circle(n: usize) -> Vec<Complex<f64>> {
        (0..=n).map(|k| Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)).collect()
    }

    #[test]
    fn constant_path_gives_constant_strands() {
        let fam = sqrt_family();
        let x = Complex::new(4.0, 0.0);
        let start = [Complex::new(2.0, 0.0), Complex::new(-2.0, 0.0)];
        let paths = continue_points(&fam, &[x, x], &start, &ContinuationConfig::default()).unwrap();
        for p in &paths {
            assert!(p.samples.iter().all(|(_, z)| (*z - p.start()).norm() < 1e-14));
        }
    }

    #[test]
    fn loop_around_branch_point_swaps() {
        let fam = sqrt_family();
        let start = [Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
        let paths = continue_points(&fam, &circle(64), &start, &ContinuationConfig::default()).unwrap();
        assert!((paths[0].end() - start[1]).norm() < 1e-10);
        assert!((paths[1].end() - start[0]).norm() < 1e-10);
        // each root traces a half circle
        let mid = paths[0].samples.iter().find(|(s, _)| (*s - 0.5).abs() < 1e-12).unwrap().1;
        assert!((mid - Complex::new(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn path_through_branch_point_fails() {
        let fam = sqrt_family();
        let start = [Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
        let path = [Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
        assert!(continue_points(&fam, &path, &start, &ContinuationConfig::default()).is_err());
    }

    #[test]
    fn vertex_counts_with_inexact_node_parameters() {
        let fam = sqrt_family();
        let start = [Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
        for n in [26, 49, 52, 98] {
            let paths = continue_points(&fam, &circle(n), &start, &ContinuationConfig::default()).unwrap();
            assert!((paths[0].end() - start[1]).norm() < 1e-10, "{n} vertices");
        }
    }
}
