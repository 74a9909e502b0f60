//! Exact winding numbers of polynomial images of circles.
//!
//! Points on the circle are taken from the rational parametrization
//! `((1 - s^2) / (1 + s^2), 2s / (1 + s^2))`, so every sample is an exact
//! Gaussian rational. Between consecutive samples the image stays in a disk
//! around the first value whose radius is bounded by a Lipschitz constant of
//! `p` on the circle; when that disk avoids the origin the argument change is
//! read off exactly from quadrants.

use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kernel::roots::ApproxRoot;
use crate::scalar::{q, qi};
use crate::{Integer, Rational};

pub type GaussQ = Complex<Rational>;

fn eval(coeffs: &[GaussQ], z: &GaussQ) -> GaussQ {
    coeffs.iter().rev().fold(GaussQ::zero(), |acc, c| acc * z.clone() + c.clone())
}

fn norm_sqr(z: &GaussQ) -> Rational {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

/// Upper bound on `|z|` by `|re| + |im|`.
fn abs_bound(z: &GaussQ) -> Rational {
    z.re.abs() + z.im.abs()
}

fn quadrant(z: &GaussQ) -> i32 {
    let (x, y) = (&z.re, &z.im);
    let zero = Rational::zero();
    if *x > zero && *y >= zero {
        0
    } else if *x <= zero && *y > zero {
        1
    } else if *x < zero && *y <= zero {
        2
    } else {
        3
    }
}

/// Round to a rational with denominator `2^bits`.
fn dyadic(x: f64, bits: u32) -> Rational {
    let scale = (1u64 << bits) as f64;
    Rational::new(Integer::from((x * scale).round() as i64), Integer::from(1u64 << bits))
}

fn circle_point(center: &GaussQ, radius: &Rational, s: Option<&Rational>) -> GaussQ {
    let (c, d) = match s {
        None => (qi(-1), qi(0)),
        Some(s) => {
            let den = Rational::one() + s * s;
            ((Rational::one() - s * s) / den.clone(), (qi(2) * s) / den)
        }
    };
    GaussQ::new(center.re.clone() + radius * c, center.im.clone() + radius * d)
}

/// Coefficients of `p(center + u)` in `u`, by repeated synthetic division.
fn taylor_at(coeffs: &[GaussQ], center: &GaussQ) -> Vec<GaussQ> {
    let mut a = coeffs.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone() * center.clone();
            a[j] = a[j].clone() + t;
        }
    }
    a
}

/// Winding number of `p` around the origin along the positively oriented
/// circle `|z - center| = radius`; equals the number of roots inside.
pub fn winding_number(coeffs: &[GaussQ], center: &GaussQ, radius: &Rational) -> Result<i64> {
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    if !radius.is_positive() {
        return Err(Error::Precondition("radius must be positive".into()));
    }
    // Lipschitz bound of p on the circle from the Taylor expansion at the
    // center: sum k |b_k| r^(k-1).
    let b = taylor_at(coeffs, center);
    let mut lip = Rational::zero();
    let mut pow = Rational::one();
    for (k, bk) in b.iter().enumerate().skip(1) {
        lip += Rational::from_integer(k.into()) * abs_bound(bk) * pow.clone();
        pow *= radius.clone();
    }
    // Arc length is at most (pi/2) times the chord.
    let arc_factor = q(15708, 10000);
    let lip_sq = lip.clone() * lip * arc_factor.clone() * arc_factor;
    let mut n = 32usize;
    while n <= 1 << 14 {
        if let Some(w) = try_winding(coeffs, center, radius, n, &lip_sq) {
            return Ok(w);
        }
        n *= 2;
    }
    Err(Error::Validation("winding number could not be certified (root near the circle)".into()))
}

fn try_winding(coeffs: &[GaussQ], center: &GaussQ, radius: &Rational, n: usize, lip_sq: &Rational) -> Option<i64> {
    // Angles in (-pi, pi]; s = tan(theta/2); theta = pi maps to s = infinity.
    let mut pts = Vec::with_capacity(n);
    for k in 0..n {
        let theta = -std::f64::consts::PI + std::f64::consts::TAU * (k as f64 + 1.0) / n as f64;
        if k + 1 == n {
            pts.push(circle_point(center, radius, None));
        } else {
            let s = dyadic((theta / 2.0).tan(), 24);
            pts.push(circle_point(center, radius, Some(&s)));
        }
    }
    let vals: Vec<GaussQ> = pts.iter().map(|z| eval(coeffs, z)).collect();
    let mut quarter_turns: i64 = 0;
    for k in 0..n {
        let (z0, z1) = (&pts[k], &pts[(k + 1) % n]);
        let (w0, w1) = (&vals[k], &vals[(k + 1) % n]);
        let chord_sq = norm_sqr(&(z1.clone() - z0.clone()));
        if lip_sq.clone() * chord_sq >= norm_sqr(w0) {
            return None;
        }
        let d = (quadrant(w1) - quadrant(w0)).rem_euclid(4);
        quarter_turns += match d {
            0 => 0,
            1 => 1,
            3 => -1,
            _ => {
                let cross = w0.re.clone() * w1.im.clone() - w0.im.clone() * w1.re.clone();
                if cross.is_positive() {
                    2
                } else {
                    -2
                }
            }
        };
    }
    Some(quarter_turns / 4)
}

/// Check that the inclusion disk of `root` contains exactly
/// `root.multiplicity` roots of the exact polynomial.
pub fn certify_root(coeffs: &[GaussQ], root: &ApproxRoot<f64>) -> Result<bool> {
    let center = GaussQ::new(
        Rational::from_float(root.value.re).ok_or_else(|| Error::Precondition("non-finite root".into()))?,
        Rational::from_float(root.value.im).ok_or_else(|| Error::Precondition("non-finite root".into()))?,
    );
    let r = Rational::from_float(root.radius).ok_or_else(|| Error::Precondition("non-finite radius".into()))?;
    let w = winding_number(coeffs, &center, &r)?;
    Ok(w == root.multiplicity as i64)
}

/// Exact Gaussian-rational coefficients from rationals.
pub fn gauss_from_rationals(c: &[Rational]) -> Vec<GaussQ> {
    c.iter().map(|x| GaussQ::new(x.clone(), Rational::zero())).collect()
}

pub fn gauss_to_f64(z: &GaussQ) -> Complex<f64> {
    Complex::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::roots::{real_coeffs, roots_univariate, RootMode};

    #[test]
    fn counts_roots_inside() {
        // (z - 1)(z + 1)(z - 3)
        let c = gauss_from_rationals(&[qi(3), qi(-1), qi(-3), qi(1)]);
        let zero = GaussQ::zero();
        assert_eq!(winding_number(&c, &zero, &qi(2)).unwrap(), 2);
        assert_eq!(winding_number(&c, &zero, &q(1, 2)).unwrap(), 0);
        assert_eq!(winding_number(&c, &zero, &qi(5)).unwrap(), 3);
    }

    #[test]
    fn taylor_shift_at_root() {
        // p(1 + u) = u^3 - 4u
        let c = gauss_from_rationals(&[qi(3), qi(-1), qi(-3), qi(1)]);
        let one = GaussQ::new(qi(1), qi(0));
        assert_eq!(taylor_at(&c, &one), gauss_from_rationals(&[qi(0), qi(-4), qi(0), qi(1)]));
    }

    #[test]
    fn certifies_exact_float_roots() {
        let exact = gauss_from_rationals(&[qi(0), qi(-1), qi(0), qi(1)]);
        for r in roots_univariate(&real_coeffs(&[0.0, -1.0, 0.0, 1.0]), RootMode::Simple).unwrap() {
            assert!(r.radius > 0.0);
            assert!(certify_root(&exact, &r).unwrap());
        }
    }

    #[test]
    fn certifies_aberth_output() {
        let exact = gauss_from_rationals(&[qi(-6), qi(11), qi(-6), qi(1)]);
        let roots = roots_univariate(&real_coeffs(&[-6.0, 11.0, -6.0, 1.0]), RootMode::Simple).unwrap();
        for r in &roots {
            let inflated = ApproxRoot { radius: r.radius.max(1e-9), ..*r };
            assert!(certify_root(&exact, &inflated).unwrap());
        }
    }
}
