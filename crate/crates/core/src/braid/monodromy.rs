//! Braid monodromy of a plane curve along segment-circle-segment loops.

use std::f64::consts::{PI, TAU};

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::sweep::{sweep_at, strand_order, MAX_ROTATIONS, ROTATION_STEP};
use crate::braid::word::{conjugate_of_sigma1_power, BraidWord};
use crate::error::{Error, Result};
use crate::groups::perm::Perm;
use crate::kernel::continuation::{continue_points, BivariateFamily, ContinuationConfig};
use crate::kernel::roots::{roots_univariate, RootMode};
use crate::quartic::{classify_real_fiber, critical_values, fiber_coeffs, CriticalValue, PlaneCurve};
use crate::{Rational, StrandPath};

/// Basepoint `(3/4)(sqrt 3 - 3)` on the real axis between the tangency and the cusp.
pub fn default_basepoint() -> Complex<f64> {
    Complex::new(0.75 * (3f64.sqrt() - 3.0), 0.0)
}

/// Rotation giving the order `(A1, A2, B2, B1)` at the default basepoint.
pub fn default_rotation() -> f64 {
    PI / 2.0 - ROTATION_STEP
}

#[derive(Clone, Debug)]
pub struct MonodromyConfig {
    pub shear: Rational,
    pub basepoint: Complex<f64>,
    /// First rotation tried by the sweep.
    pub theta0: f64,
    /// Loop radius as a fraction of the smallest distance between critical values.
    pub radius_fraction: f64,
    /// Vertices on each small circle.
    pub circle_vertices: usize,
    pub continuation: ContinuationConfig,
}

impl Default for MonodromyConfig {
    fn default() -> Self {
        MonodromyConfig {
            shear: Rational::new(1.into(), 100.into()),
            basepoint: default_basepoint(),
            theta0: default_rotation(),
            radius_fraction: 0.25,
            circle_vertices: 64,
            continuation: ContinuationConfig::default(),
        }
    }
}

/// `b = conjugator * sigma_1^power * conjugator^-1`.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyWitness {
    pub conjugator: BraidWord,
    pub power: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopFactor {
    pub critical_value: CriticalValue,
    /// Direction from the basepoint, measured counterclockwise from `pi/2`.
    pub departure_angle: f64,
    pub braid: BraidWord,
    /// Braid of the path out to the small circle.
    pub approach: BraidWord,
    /// Braid of the small circle itself.
    pub local: BraidWord,
    pub exponent_sum: i64,
    pub permutation: Perm,
    pub witness: Option<ConjugacyWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Factorization {
    pub basepoint: Complex<f64>,
    pub shear: String,
    pub theta: f64,
    pub radius: f64,
    /// Names of the strands in their order at the basepoint.
    pub labels: Vec<String>,
    pub factors: Vec<LoopFactor>,
    /// Strand motion of each loop (approach, circle, return), for plotting.
    #[serde(skip)]
    pub paths: Vec<[Vec<StrandPath>; 3]>,
}

impl Factorization {
    pub fn braids(&self) -> Vec<BraidWord> {
        self.factors.iter().map(|f| f.braid.clone()).collect()
    }

    pub fn exponent_sums(&self) -> Vec<i64> {
        self.factors.iter().map(|f| f.exponent_sum).collect()
    }

    pub fn permutations(&self) -> Vec<Perm> {
        self.factors.iter().map(|f| f.permutation).collect()
    }
}

/// Curve data for tracing fibers of the sheared projection.
pub struct Tracer {
    pub curve: PlaneCurve,
    family: BivariateFamily<f64>,
    cfg: ContinuationConfig,
}

impl Tracer {
    pub fn new(curve: &PlaneCurve, shear: &Rational, cfg: ContinuationConfig) -> Result<Self> {
        let sheared = curve.sheared(shear)?;
        let family = BivariateFamily::from_mpoly(&sheared.equation, "x", "y")?;
        Ok(Tracer { curve: sheared, family, cfg })
    }

    pub fn fiber(&self, x: Complex<f64>) -> Result<Vec<Complex<f64>>> {
        let coeffs = fiber_coeffs(&self.curve, x)?;
        Ok(roots_univariate(&coeffs, RootMode::Simple)?.into_iter().map(|r| r.value).collect())
    }

    pub fn trace(&self, path: &[Complex<f64>], start: &[Complex<f64>]) -> Result<Vec<StrandPath>> {
        continue_points(&self.family, path, start, &self.cfg)
    }
}

fn ends(paths: &[StrandPath]) -> Vec<Complex<f64>> {
    paths.iter().map(|p| p.end()).collect()
}

fn cut_angle(z: Complex<f64>) -> f64 {
    (z.arg() - PI / 2.0).rem_euclid(TAU)
}

/// Path from `from` to the point at distance `r` from `target` facing
/// `from`, with a counterclockwise half-turn of radius `r` around each
/// obstacle closer than `r` to the segment.
pub fn approach_path(from: Complex<f64>, target: Complex<f64>, r: f64, obstacles: &[Complex<f64>], arc_vertices: usize) -> Vec<Complex<f64>> {
    let d = (target - from) / (target - from).norm();
    let stop = target - d * r;
    let len = (stop - from).norm();
    let mut hits: Vec<(f64, Complex<f64>)> = obstacles
        .iter()
        .filter(|&&o| (o - target).norm() > 1e-12)
        .filter_map(|&o| {
            let rel = (o - from) * d.conj();
            (rel.im.abs() < r && rel.re > 0.0 && rel.re < len).then_some((rel.re, o))
        })
        .collect();
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut v = vec![from];
    for (_, o) in hits {
        let phi0 = (-d).arg();
        for k in 0..=arc_vertices {
            v.push(o + Complex::from_polar(r, phi0 + PI * k as f64 / arc_vertices as f64));
        }
    }
    v.push(stop);
    v
}

/// Counterclockwise circle of radius `r` around `c` starting and ending at `start`.
pub fn circle_path(c: Complex<f64>, start: Complex<f64>, vertices: usize) -> Vec<Complex<f64>> {
    let r = (start - c).norm();
    let phi0 = (start - c).arg();
    let mut v: Vec<Complex<f64>> = (0..vertices).map(|k| c + Complex::from_polar(r, phi0 + TAU * k as f64 / vertices as f64)).collect();
    v.push(start);
    v
}

/// Shortest `v` (up to `max_len` letters) with `local = v sigma_1^k v^-1`,
/// where `k` is the exponent sum of `local`.
fn local_conjugator(local: &BraidWord, max_len: usize) -> Option<(BraidWord, i32)> {
    let n = local.n();
    let k = local.exponent_sum() as i32;
    if k == 0 {
        return None;
    }
    let core = BraidWord::sigma(n, 1).ok()?.pow(k);
    let target = local.artin_images();
    let alphabet: Vec<i32> = (1..n as i32).flat_map(|i| [i, -i]).collect();
    let mut layer = vec![BraidWord::identity(n)];
    for _ in 0..=max_len {
        for v in &layer {
            if core.conjugate_by(v).artin_images() == target {
                return Some((v.clone(), k));
            }
        }
        layer = layer
            .iter()
            .flat_map(|v| {
                alphabet.iter().filter(move |&&l| v.letters().last() != Some(&-l)).map(move |&l| {
                    let mut w = v.letters().to_vec();
                    w.push(l);
                    BraidWord::new(n, w).expect("in range")
                })
            })
            .collect();
    }
    None
}

fn find_witness(braid: &BraidWord, approach: &BraidWord, local: &BraidWord) -> Option<ConjugacyWitness> {
    let (v, k) = local_conjugator(local, 4)?;
    let w = approach.mul(&v);
    conjugate_of_sigma1_power(braid, &w, k).then_some(ConjugacyWitness { conjugator: w, power: k })
}

struct TracedLoop {
    cv: CriticalValue,
    angle: f64,
    pieces: [Vec<StrandPath>; 3],
}

/// Labels of the basepoint fiber in sweep order, read off the real-fiber
/// classification of the unsheared curve when the basepoint is real.
fn basepoint_labels(curve: &PlaneCurve, base: Complex<f64>, fiber: &[Complex<f64>], order: &[usize]) -> Vec<String> {
    let names = ["A1", "A2", "B2", "B1"];
    let labeled = if base.im == 0.0 { classify_real_fiber(curve, base.re).ok().and_then(|f| f.labeled) } else { None };
    order
        .iter()
        .enumerate()
        .map(|(p, &i)| match labeled {
            Some(l) if fiber.len() == 4 => {
                let k = (0..4).min_by(|&a, &b| (l[a] - fiber[i]).norm().total_cmp(&(l[b] - fiber[i]).norm())).unwrap();
                names[k].to_string()
            }
            _ => format!("y{}", p + 1),
        })
        .collect()
}

/// Braid monodromy factorization: one factor per critical value of the
/// sheared projection, loops ordered counterclockwise around the basepoint
/// starting from the direction `pi/2`, ties broken farthest first.
pub fn monodromy_factorization_with(curve: &PlaneCurve, cfg: &MonodromyConfig) -> Result<Factorization> {
    let cvs = critical_values(curve, &cfg.shear)?;
    let base = cfg.basepoint;
    let values: Vec<Complex<f64>> = cvs.iter().map(|c| c.value).collect();
    let mut min_dist = f64::INFINITY;
    for (i, a) in values.iter().enumerate() {
        if (a - base).norm() < 1e-9 {
            return Err(Error::Precondition("basepoint is a critical value".into()));
        }
        for b in &values[i + 1..] {
            min_dist = min_dist.min((a - b).norm());
        }
    }
    let radius = if min_dist.is_finite() { cfg.radius_fraction * min_dist } else { 0.25 };
    if values.iter().any(|v| (v - base).norm() <= radius) {
        return Err(Error::Precondition("basepoint lies inside a loop circle".into()));
    }
    let tracer = Tracer::new(curve, &cfg.shear, cfg.continuation)?;
    let start = tracer.fiber(base)?;

    let mut order: Vec<usize> = (0..cvs.len()).collect();
    order.sort_by(|&a, &b| {
        let (ta, tb) = (cut_angle(values[a] - base), cut_angle(values[b] - base));
        if (ta - tb).abs() < 1e-9 {
            (values[b] - base).norm().total_cmp(&(values[a] - base).norm())
        } else {
            ta.total_cmp(&tb)
        }
    });

    let traced: Vec<Result<TracedLoop>> = order
        .par_iter()
        .map(|&i| {
            let c = values[i];
            let out = approach_path(base, c, radius, &values, 16);
            let circle = circle_path(c, *out.last().expect("nonempty"), cfg.circle_vertices);
            let back: Vec<Complex<f64>> = out.iter().rev().copied().collect();
            let a = tracer.trace(&out, &start)?;
            let l = tracer.trace(&circle, &ends(&a))?;
            let r = tracer.trace(&back, &ends(&l))?;
            Ok(TracedLoop { cv: cvs[i].clone(), angle: cut_angle(c - base), pieces: [a, l, r] })
        })
        .collect();
    let traced: Vec<TracedLoop> = traced.into_iter().collect::<Result<_>>()?;

    let mut last = None;
    for rot in 0..=MAX_ROTATIONS {
        let theta = cfg.theta0 + rot as f64 * ROTATION_STEP;
        let words: Result<Vec<[BraidWord; 3]>> = traced
            .iter()
            .map(|t| Ok([sweep_at(&t.pieces[0], theta)?, sweep_at(&t.pieces[1], theta)?, sweep_at(&t.pieces[2], theta)?]))
            .collect();
        let words = match words {
            Ok(w) => w,
            Err(e @ Error::AmbiguousCrossing(_)) => {
                last = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let base_paths: Vec<StrandPath> =
            start.iter().enumerate().map(|(i, &z)| StrandPath { strand_id: i, samples: vec![(0.0, z)] }).collect();
        let base_order = strand_order(&base_paths, 0, theta)?;
        let labels = basepoint_labels(curve, base, &start, &base_order);
        let factors = traced
            .iter()
            .zip(words)
            .map(|(t, [a, l, r])| {
                let braid = a.mul(&l).mul(&r);
                let witness = find_witness(&braid, &a, &l);
                LoopFactor {
                    critical_value: t.cv.clone(),
                    departure_angle: t.angle,
                    exponent_sum: braid.exponent_sum(),
                    permutation: braid.permutation(),
                    braid,
                    approach: a,
                    local: l,
                    witness,
                }
            })
            .collect();
        return Ok(Factorization {
            basepoint: base,
            shear: cfg.shear.to_string(),
            theta,
            radius,
            labels,
            factors,
            paths: traced.into_iter().map(|t| t.pieces).collect(),
        });
    }
    Err(last.unwrap_or_else(|| Error::AmbiguousCrossing("no admissible rotation".into())))
}

pub fn monodromy_factorization(curve: &PlaneCurve, basepoint: Complex<f64>, shear: &Rational) -> Result<Factorization> {
    let cfg = MonodromyConfig { shear: shear.clone(), basepoint, ..MonodromyConfig::default() };
    monodromy_factorization_with(curve, &cfg)
}

/// Braid traced by the fiber along an open path, at a fixed rotation.
pub fn transport_braid(curve: &PlaneCurve, cfg: &MonodromyConfig, path: &[Complex<f64>], theta: f64) -> Result<BraidWord> {
    let tracer = Tracer::new(curve, &cfg.shear, cfg.continuation)?;
    let start = tracer.fiber(path[0])?;
    sweep_at(&tracer.trace(path, &start)?, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_equal, three_cuspidal_quartic_factors};
    use crate::groups::perm::product;

    #[test]
    fn three_cuspidal_quartic_monodromy() {
        let f = monodromy_factorization_with(&PlaneCurve::three_cuspidal_quartic(), &MonodromyConfig::default()).unwrap();
        assert_eq!(f.labels, vec!["A1", "A2", "B2", "B1"]);
        assert_eq!(f.exponent_sums(), vec![3, 3, 1, 3]);
        assert_eq!(product(4, &f.permutations()).to_string(), "(1,3)(2,4)");
        let re: Vec<f64> = f.factors.iter().map(|l| l.critical_value.value.re).collect();
        assert!((re[0] + 1.1315).abs() < 1e-3 && (re[1] + 1.1185).abs() < 1e-3);
        assert!((re[2] + 1.0).abs() < 1e-3 && re[3].abs() < 1e-12);
        for (l, fx) in f.factors.iter().zip(three_cuspidal_quartic_factors()) {
            assert!(braid_equal(&l.braid, &fx));
            let w = l.witness.as_ref().unwrap();
            assert!([1, 3].contains(&w.power.abs()));
        }
    }

    #[test]
    fn approach_detours_obstacles() {
        let obstacles = [Complex::new(-1.0, 0.0), Complex::new(-2.0, 0.0)];
        let p = approach_path(Complex::new(0.0, 0.0), obstacles[1], 0.1, &obstacles, 4);
        // five detour vertices around -1, passing on the upper side
        assert_eq!(p.len(), 7);
        assert!((p[3] - Complex::new(-1.0, 0.1)).norm() < 1e-12);
        assert!((p[6] - Complex::new(-1.9, 0.0)).norm() < 1e-12);
    }
}
