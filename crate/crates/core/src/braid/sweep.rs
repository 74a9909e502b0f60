//! Braid words from strand motion by a sweep over the rotated real order.

use num_complex::Complex;

use crate::braid::word::BraidWord;
use crate::error::{Error, Result};
use crate::StrandPath;

/// Rotation increment between retries.
pub const ROTATION_STEP: f64 = std::f64::consts::PI / 17.0;
pub const MAX_ROTATIONS: usize = 16;

const EPS: f64 = 1e-12;

/// Strand indices sorted by `Re(e^{i theta} y)` at sample `k`.
pub fn strand_order(paths: &[StrandPath], k: usize, theta: f64) -> Result<Vec<usize>> {
    let rot = Complex::from_polar(1.0, theta);
    let mut idx: Vec<usize> = (0..paths.len()).collect();
    let key = |i: usize| (rot * paths[i].samples[k].1).re;
    idx.sort_by(|&a, &b| key(a).total_cmp(&key(b)));
    for w in idx.windows(2) {
        let scale = 1.0 + paths[w[0]].samples[k].1.norm() + paths[w[1]].samples[k].1.norm();
        if (key(w[1]) - key(w[0])).abs() <= EPS * scale {
            return Err(Error::AmbiguousCrossing(format!("strands {} and {} tie at sample {k}", w[0], w[1])));
        }
    }
    Ok(idx)
}

fn check_aligned(paths: &[StrandPath]) -> Result<usize> {
    let Some(first) = paths.first() else { return Ok(0) };
    let m = first.samples.len();
    for p in paths {
        if p.samples.len() != m || p.samples.iter().zip(&first.samples).any(|(a, b)| a.0 != b.0) {
            return Err(Error::Precondition("strand paths must share their sample parameters".into()));
        }
    }
    if m == 0 {
        return Err(Error::Precondition("empty strand path".into()));
    }
    Ok(m)
}

/// Sweep at a fixed rotation. Each exchange of neighbours at positions
/// `p, p+1` emits `sigma_{p+1}`, positive when the strand coming from the
/// left has the smaller rotated imaginary part at the crossing.
pub fn sweep_at(paths: &[StrandPath], theta: f64) -> Result<BraidWord> {
    let n = paths.len();
    let m = check_aligned(paths)?;
    if n < 2 {
        return Err(Error::Precondition("a braid needs at least two strands".into()));
    }
    let rot = Complex::from_polar(1.0, theta);
    let w = |i: usize, k: usize| rot * paths[i].samples[k].1;
    let mut order = strand_order(paths, 0, theta)?;
    let mut letters = Vec::new();
    for k in 0..m - 1 {
        let mut events: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (da, db) = (w(i, k).re - w(j, k).re, w(i, k + 1).re - w(j, k + 1).re);
                let scale = 1.0 + w(i, k).norm() + w(j, k).norm();
                if db.abs() <= EPS * scale {
                    return Err(Error::AmbiguousCrossing(format!("strands {i} and {j} tie at sample {}", k + 1)));
                }
                if (da < 0.0) != (db < 0.0) {
                    events.push((da / (da - db), i, j));
                }
            }
        }
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (e, &(lam, i, j)) in events.iter().enumerate() {
            let shares = |o: &(f64, usize, usize)| o.1 == i || o.1 == j || o.2 == i || o.2 == j;
            if events.iter().enumerate().any(|(f, o)| f != e && (o.0 - lam).abs() <= 1e-9 && shares(o)) {
                return Err(Error::AmbiguousCrossing(format!("simultaneous crossings near sample {k}")));
            }
            let pi = order.iter().position(|&s| s == i).expect("strand present");
            let pj = order.iter().position(|&s| s == j).expect("strand present");
            if pi.abs_diff(pj) != 1 {
                return Err(Error::AmbiguousCrossing(format!("strands {i} and {j} are not neighbours at sample {k}")));
            }
            let p = pi.min(pj);
            let (left, right) = (order[p], order[p + 1]);
            let at = |s: usize| w(s, k) + (w(s, k + 1) - w(s, k)) * lam;
            let dim = at(right).im - at(left).im;
            let scale = 1.0 + at(left).norm() + at(right).norm();
            if dim.abs() <= 1e-9 * scale {
                return Err(Error::AmbiguousCrossing(format!("strands {i} and {j} meet near sample {k}")));
            }
            letters.push(if dim > 0.0 { p as i32 + 1 } else { -(p as i32 + 1) });
            order.swap(p, p + 1);
        }
    }
    BraidWord::new(n, letters)
}

/// Sweep with automatic rotation retries starting from `theta0`; returns
/// the word and the rotation used.
pub fn sweep_from(paths: &[StrandPath], theta0: f64) -> Result<(BraidWord, f64)> {
    let mut last = None;
    for r in 0..=MAX_ROTATIONS {
        let theta = theta0 + r as f64 * ROTATION_STEP;
        match sweep_at(paths, theta) {
            Ok(b) => return Ok((b, theta)),
            Err(e @ Error::AmbiguousCrossing(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Braid traced by the strands, ordered by real part after a generic rotation.
pub fn braid_from_strand_paths(paths: &[StrandPath]) -> Result<BraidWord> {
    sweep_from(paths, 0.0).map(|(b, _)| b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rotating(start: &[Complex<f64>], turns: f64, steps: usize) -> Vec<StrandPath> {
        start
            .iter()
            .enumerate()
            .map(|(i, &z)| StrandPath {
                strand_id: i,
                samples: (0..=steps)
                    .map(|k| {
                        let t = k as f64 / steps as f64;
                        (t, z * Complex::from_polar(1.0, PI * turns * t))
                    })
                    .collect(),
            })
            .collect()
    }

    #[test]
    fn constant_paths_give_identity() {
        let p = rotating(&[Complex::new(-1.0, 0.3), Complex::new(1.0, 0.0)], 0.0, 5);
        assert!(braid_from_strand_paths(&p).unwrap().is_empty());
    }

    #[test]
    fn counterclockwise_exchange_is_positive() {
        let p = rotating(&[Complex::new(-1.0, 0.0), Complex::new(1.0, 0.0)], 1.0, 64);
        assert_eq!(braid_from_strand_paths(&p).unwrap().letters(), &[1]);
        let q = rotating(&[Complex::new(-1.0, 0.0), Complex::new(1.0, 0.0)], -1.0, 64);
        assert_eq!(braid_from_strand_paths(&q).unwrap().letters(), &[-1]);
    }

    #[test]
    fn full_turn_of_three_points() {
        // a full counterclockwise rotation of three points is the full twist
        let p = rotating(&[Complex::new(-1.0, 0.0), Complex::new(0.2, 0.3), Complex::new(1.0, -0.1)], 2.0, 200);
        let b = braid_from_strand_paths(&p).unwrap();
        let delta2 = BraidWord::new(3, vec![1, 2, 1, 1, 2, 1]).unwrap();
        assert!(crate::braid::braid_equal(&b, &delta2));
    }

    #[test]
    fn tie_triggers_rotation() {
        let p = rotating(&[Complex::new(0.0, -1.0), Complex::new(0.0, 1.0)], 0.0, 3);
        let (b, theta) = sweep_from(&p, 0.0).unwrap();
        assert!(b.is_empty());
        assert!(theta > 0.0);
    }
}
