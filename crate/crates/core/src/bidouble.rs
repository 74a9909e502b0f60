//! Deformed bidouble covers `z^2 = v + a w`, `w^2 = u + b z`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::matrix::Matrix;
use crate::kernel::mpoly::{var_names, MPoly};
use crate::kernel::upoly::UPoly;
use crate::scalar::{q, qi, Field, Ring};
use crate::{QPoly, Rational};

/// The four base functions of the cover, over a common variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverData {
    pub u: QPoly,
    pub v: QPoly,
    pub a: QPoly,
    pub b: QPoly,
}

impl CoverData {
    /// Generic cover with independent variables `a, b, u, v`.
    pub fn symbolic() -> Self {
        let vars = var_names(&["a", "b", "u", "v"]);
        let g = QPoly::gens(&vars);
        CoverData { a: g[0].clone(), b: g[1].clone(), u: g[2].clone(), v: g[3].clone() }
    }

    /// Specialize `a` and `b` to constants, keeping `u, v` symbolic.
    pub fn with_constants(a: Rational, b: Rational) -> Self {
        let vars = var_names(&["u", "v"]);
        let g = QPoly::gens(&vars);
        CoverData {
            u: g[0].clone(),
            v: g[1].clone(),
            a: QPoly::constant(vars.clone(), a),
            b: QPoly::constant(vars, b),
        }
    }

    pub fn vars(&self) -> &[String] {
        self.u.vars()
    }

    fn check(&self) -> Result<()> {
        let v = self.u.vars();
        for p in [&self.v, &self.a, &self.b] {
            if p.vars() != v {
                return Err(Error::VariableMismatch { left: v.to_vec(), right: p.vars().to_vec() });
            }
        }
        Ok(())
    }
}

/// Multiplication by `z`, `w` and `zw` on the basis `(1, z, w, zw)`;
/// column `j` holds the coordinates of `x * e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultTable {
    pub m_z: Matrix<QPoly>,
    pub m_w: Matrix<QPoly>,
    pub m_zw: Matrix<QPoly>,
}

pub fn multiplication_matrices(cover: &CoverData) -> Result<MultTable> {
    cover.check()?;
    let vars = cover.vars().to_vec();
    let o = QPoly::zero(vars.clone());
    let l = QPoly::one(vars);
    let (u, v, a, b) = (&cover.u, &cover.v, &cover.a, &cover.b);
    let ab = a * b;
    // z*1 = z, z*z = v + a w, z*w = zw, z*zw = a u + ab z + v w
    let z_cols = [
        [o.clone(), l.clone(), o.clone(), o.clone()],
        [v.clone(), o.clone(), a.clone(), o.clone()],
        [o.clone(), o.clone(), o.clone(), l.clone()],
        [a * u, ab.clone(), v.clone(), o.clone()],
    ];
    // w*1 = w, w*z = zw, w*w = u + b z, w*zw = b v + u z + ab w
    let w_cols = [
        [o.clone(), o.clone(), l.clone(), o.clone()],
        [o.clone(), o.clone(), o.clone(), l.clone()],
        [u.clone(), b.clone(), o.clone(), o.clone()],
        [b * v, u.clone(), ab, o],
    ];
    let m_z = Matrix::from_fn(4, 4, |i, j| z_cols[j][i].clone());
    let m_w = Matrix::from_fn(4, 4, |i, j| w_cols[j][i].clone());
    let m_zw = &m_z * &m_w;
    Ok(MultTable { m_z, m_w, m_zw })
}

/// Residuals of the defining identities of the multiplication table:
/// `M_z^2 - (v + a M_w)`, `M_w^2 - (u + b M_z)`, `M_z M_w - M_w M_z`.
pub fn mult_table_residuals(cover: &CoverData, t: &MultTable) -> [Matrix<QPoly>; 3] {
    let id: Matrix<QPoly> = Matrix::from_fn(4, 4, |i, j| if i == j { QPoly::one(cover.vars().to_vec()) } else { QPoly::zero(cover.vars().to_vec()) });
    let r1 = &(&t.m_z * &t.m_z) - &(&id.scale(&cover.v) + &t.m_w.scale(&cover.a));
    let r2 = &(&t.m_w * &t.m_w) - &(&id.scale(&cover.u) + &t.m_z.scale(&cover.b));
    let r3 = &(&t.m_z * &t.m_w) - &(&t.m_w * &t.m_z);
    [r1, r2, r3]
}

/// Ramification determinant `det [[2z, -a], [-b, 2w]] = 4zw - ab` over the
/// cover's variables extended by `w, z`.
pub fn different(cover: &CoverData) -> Result<QPoly> {
    cover.check()?;
    let mut vars = cover.vars().to_vec();
    for extra in ["w", "z"] {
        if !vars.iter().any(|v| v == extra) {
            vars.push(extra.to_string());
        }
    }
    vars.sort();
    let ext = |p: &QPoly| p.with_vars(&vars);
    let z = QPoly::var(vars.clone(), "z")?;
    let w = QPoly::var(vars.clone(), "w")?;
    let two = QPoly::constant(vars.clone(), qi(2));
    let jac = Matrix::from_rows(vec![vec![&two * &z, -ext(&cover.a)?], vec![-ext(&cover.b)?, &two * &w]]);
    jac.determinant()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantNorm {
    /// `4^4 det(M_zw - (ab/4) I)`, the norm of `4zw - ab`.
    pub delta: QPoly,
    /// `-delta / 256`, with `a^2, b^2` replaced by `alpha, beta` when `a, b`
    /// are variables.
    pub p: QPoly,
}

pub fn discriminant_norm(cover: &CoverData) -> Result<DiscriminantNorm> {
    let t = multiplication_matrices(cover)?;
    let vars = cover.vars().to_vec();
    let shift = (&cover.a * &cover.b).scale(&q(1, 4));
    let m = Matrix::from_fn(4, 4, |i, j| if i == j { &t.m_zw[(i, j)] - &shift } else { t.m_zw[(i, j)].clone() });
    let delta = m.determinant()?.with_vars(&vars)?.scale(&qi(256));
    let mut p = delta.scale(&q(-1, 256));
    for (var, new) in [("a", "alpha"), ("b", "beta")] {
        let is_var = |x: &QPoly| x == &QPoly::var(vars.clone(), var).unwrap_or_else(|_| QPoly::zero(vec![]));
        let holder = if var == "a" { &cover.a } else { &cover.b };
        if vars.iter().any(|v| v == var) && is_var(holder) {
            p = halve_exponents(&p, var, new)?;
        }
    }
    Ok(DiscriminantNorm { delta, p })
}

/// Replace `var^(2k)` by `new^k`; errors if an odd power occurs.
pub fn halve_exponents(p: &QPoly, var: &str, new: &str) -> Result<QPoly> {
    let i = p.var_index(var)?;
    let mut names: Vec<String> = p.vars().to_vec();
    names[i] = new.to_string();
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        if e[i] % 2 == 1 {
            return Err(Error::Structural(format!("odd power of `{var}` in the discriminant")));
        }
        let mut f = e.clone();
        f[i] /= 2;
        terms.push((f, c.clone()));
    }
    let out = QPoly::from_terms(names.clone(), terms);
    names.sort();
    out.with_vars(&names)
}

/// `P(u, v, alpha, beta)` in closed form, variables `alpha, beta, u, v`.
pub fn p_closed_form() -> QPoly {
    QPoly::parse_with_vars(
        "-u^2*v^2 - 9/8*u*v*alpha*beta + beta*v^3 + alpha*u^3 + 27/256*alpha^2*beta^2",
        &["alpha", "beta", "u", "v"],
    )
    .expect("valid literal")
}

/// `delta_c(U, V) = -U^2 V^2 - (9/8) U V c^2 + c^2 V^3 + U^3 + (27/256) c^4` over `u, v`.
pub fn normalize_delta(c: &Rational) -> QPoly {
    let vars = var_names(&["c", "u", "v"]);
    delta_c_symbolic().specialize("c", c).expect("c is a variable").with_vars(&vars[1..]).expect("u, v")
}

/// `delta_c` with `c` kept as a variable; variables `c, u, v`.
pub fn delta_c_symbolic() -> QPoly {
    QPoly::parse_with_vars("-u^2*v^2 - 9/8*u*v*c^2 + c^2*v^3 + u^3 + 27/256*c^4", &["c", "u", "v"]).expect("valid literal")
}

/// `P(lambda^4 u0, lambda^2 v0, 1, lambda^6) - lambda^12 delta(u0, v0)` over
/// `lambda, u0, v0`; zero exactly when the rescaling identity holds.
pub fn scaling_identity_residual() -> Result<QPoly> {
    let vars = var_names(&["lambda", "u0", "v0"]);
    let g = QPoly::gens(&vars);
    let (l, u0, v0) = (&g[0], &g[1], &g[2]);
    let one = QPoly::one(vars.clone());
    let lhs = p_closed_form().compose(&[one, l.pow(6), &l.pow(4) * u0, &l.pow(2) * v0])?;
    let delta = normalize_delta(&qi(1)).compose(&[u0.clone(), v0.clone()])?;
    Ok(&lhs - &(&l.pow(12) * &delta))
}

/// `P(a^2 U, a^2 V, a^2, c^2 a^2) - a^8 delta_c(U, V)` over `a, c, u, v`.
pub fn normalization_residual() -> Result<QPoly> {
    let vars = var_names(&["a", "c", "u", "v"]);
    let g = QPoly::gens(&vars);
    let (a, c, u, v) = (&g[0], &g[1], &g[2], &g[3]);
    let a2 = a * a;
    let lhs = p_closed_form().compose(&[a2.clone(), &(c * c) * &a2, &a2 * u, &a2 * v])?;
    let d = delta_c_symbolic().compose(&[c.clone(), u.clone(), v.clone()])?;
    Ok(&lhs - &(&a.pow(8) * &d))
}

/// Element `re + im * zeta` of the cyclotomic field with `zeta^2 = -1 - zeta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cyclotomic3 {
    #[serde(serialize_with = "ser_q", rename = "one")]
    pub re: Rational,
    #[serde(serialize_with = "ser_q", rename = "zeta")]
    pub im: Rational,
}

fn ser_q<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Cyclotomic3 {
    pub fn new(re: Rational, im: Rational) -> Self {
        Cyclotomic3 { re, im }
    }

    pub fn rational(x: Rational) -> Self {
        Cyclotomic3 { re: x, im: Rational::zero() }
    }

    pub fn zeta() -> Self {
        Cyclotomic3 { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zeta_pow(k: u32) -> Self {
        match k % 3 {
            0 => Self::one(),
            1 => Self::zeta(),
            _ => Self::new(qi(-1), qi(-1)),
        }
    }

    /// `a + b zeta^2`, the Galois conjugate.
    pub fn conj(&self) -> Self {
        Cyclotomic3 { re: &self.re - &self.im, im: -self.im.clone() }
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.im + &self.im * &self.im
    }

    /// Embedding with `zeta = exp(2 pi i / 3)`.
    pub fn to_complex(&self) -> Complex<f64> {
        let z = Complex::from_polar(1.0, std::f64::consts::TAU / 3.0);
        Complex::new(self.re.to_f64().unwrap_or(f64::NAN), 0.0) + z * self.im.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for Cyclotomic3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cyclotomic3 { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Cyclotomic3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cyclotomic3 { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Cyclotomic3 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let bd = &self.im * &o.im;
        Cyclotomic3 { re: &self.re * &o.re - &bd, im: &self.re * &o.im + &self.im * &o.re - bd }
    }
}

impl Div for Cyclotomic3 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        let t = self * o.conj();
        Cyclotomic3 { re: t.re / n.clone(), im: t.im / n }
    }
}

impl Neg for Cyclotomic3 {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic3 { re: -self.re, im: -self.im }
    }
}

impl Zero for Cyclotomic3 {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Cyclotomic3 {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Ring for Cyclotomic3 {
    fn split_sign(&self) -> (bool, String) {
        if self.im.is_zero() {
            self.re.split_sign()
        } else {
            (false, self.to_string())
        }
    }
    fn needs_parens(&self) -> bool {
        !self.im.is_zero()
    }
}
impl Field for Cyclotomic3 {}

impl fmt::Display for Cyclotomic3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*zeta", self.im),
            (false, false) => write!(f, "{} + {}*zeta", self.re, self.im),
        }
    }
}

/// Singular point of the normalized branch curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspPoint {
    pub u: Cyclotomic3,
    pub v: Cyclotomic3,
    /// Power `k` of the cube root of unity with `u = zeta^k v`.
    pub zeta: u32,
    pub u_complex: Complex<f64>,
    pub v_complex: Complex<f64>,
    /// `(delta, d delta / du, d delta / dv)` at the point in the complex embedding.
    pub float_residuals: [f64; 3],
}

/// Singular points of `delta(u, v)`, solved exactly in `Q(zeta)`.
///
/// The identity `u delta_u - v delta_v = 3u^3 - 3v^3` (checked exactly) places
/// every singular point on one of the lines `u = zeta^k v`. On each line the
/// gcd of `delta`, `delta_u`, `delta_v` restricted to the line gives the
/// singular points on it.
pub fn find_cusps(delta: &QPoly) -> Result<Vec<CuspPoint>> {
    let vars = var_names(&["u", "v"]);
    let d = delta.with_vars(&vars)?;
    let du = d.derivative("u")?;
    let dv = d.derivative("v")?;
    let g = QPoly::gens(&vars);
    let euler = &(&g[0] * &du) - &(&g[1] * &dv);
    let expect = (&g[0].pow(3) - &g[1].pow(3)).scale(&qi(3));
    if euler != expect {
        return Err(Error::Structural("u*delta_u - v*delta_v is not 3u^3 - 3v^3".into()));
    }
    let to_cyc = |p: &QPoly| p.map_coeffs(|c| Cyclotomic3::rational(c.clone()));
    let (dc, duc, dvc) = (to_cyc(&d), to_cyc(&du), to_cyc(&dv));
    let mut out = Vec::new();
    for k in 0..3u32 {
        let zk = Cyclotomic3::zeta_pow(k);
        let restrict = |p: &MPoly<Cyclotomic3>| -> Result<UPoly<Cyclotomic3>> {
            let vv = MPoly::var(var_names(&["v"]), "v")?;
            let line = p.compose(&[vv.scale(&zk), vv])?;
            Ok(UPoly::new(line.to_univariate("v")?))
        };
        let (a, b, c) = (restrict(&dc)?, restrict(&duc)?, restrict(&dvc)?);
        let g = a.gcd(&b).gcd(&c);
        let gcd = if g.degree().unwrap_or(0) > 0 { g.div_rem(&g.gcd(&g.derivative()))?.0.monic() } else { g };
        match gcd.degree() {
            Some(0) => continue,
            Some(1) => {
                let v0 = -gcd.coeff(0);
                let u0 = zk.clone() * v0.clone();
                for p in [&dc, &duc, &dvc] {
                    if !p.eval(&[u0.clone(), v0.clone()]).is_zero() {
                        return Err(Error::Structural("exact residual nonzero".into()));
                    }
                }
                let (uc, vc) = (u0.to_complex(), v0.to_complex());
                let fe = |p: &QPoly| p.eval_with(&[uc, vc], |c| Complex::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).norm();
                out.push(CuspPoint {
                    u: u0,
                    v: v0,
                    zeta: k,
                    u_complex: uc,
                    v_complex: vc,
                    float_residuals: [fe(&d), fe(&du), fe(&dv)],
                });
            }
            _ => return Err(Error::Structural(format!("non-reduced singular locus on line u = zeta^{k} v"))),
        }
    }
    if out.len() != 3 {
        return Err(Error::Structural(format!("expected 3 singular points, found {}", out.len())));
    }
    Ok(out)
}

/// Random rational with numerator and denominator bounded by `bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    q(n, d)
}

/// At a point of the cover (`z, w, a, b` random, `u, v` solved from the
/// equations), the characteristic polynomials of `M_z` and `M_w` vanish at
/// `z` and `w`. Returns the number of points checked.
pub fn eigenvalue_check<R: Rng>(rng: &mut R, samples: usize) -> Result<usize> {
    let t = multiplication_matrices(&CoverData::symbolic())?;
    for _ in 0..samples {
        let (z, w, a, b) = (random_rational(rng, 9), random_rational(rng, 9), random_rational(rng, 9), random_rational(rng, 9));
        let v = &z * &z - &a * &w;
        let u = &w * &w - &b * &z;
        let vals = [a, b, u, v];
        let shifted = |m: &Matrix<QPoly>, x: &Rational| {
            Matrix::from_fn(4, 4, |i, j| {
                let e = m[(i, j)].eval(&vals);
                if i == j {
                    e - x.clone()
                } else {
                    e
                }
            })
        };
        if !shifted(&t.m_z, &z).determinant()?.is_zero() || !shifted(&t.m_w, &w).determinant()?.is_zero() {
            return Err(Error::Structural("characteristic polynomial does not vanish on the cover".into()));
        }
    }
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mz_top_right_entry() {
        let c = CoverData::symbolic();
        let t = multiplication_matrices(&c).unwrap();
        assert_eq!(t.m_z[(0, 3)], &c.a * &c.u);
        for r in mult_table_residuals(&c, &t) {
            assert!(r.is_zero());
        }
    }

    #[test]
    fn different_examples() {
        let d = different(&CoverData::symbolic()).unwrap();
        assert_eq!(d.to_string(), "-a*b + 4*w*z");
        let d0 = different(&CoverData::with_constants(qi(0), qi(0))).unwrap();
        assert_eq!(d0.to_string(), "4*w*z");
        let d1 = different(&CoverData::with_constants(qi(1), qi(1))).unwrap();
        let half = q(1, 2);
        assert!(d1.eval(&[qi(0), qi(0), half.clone(), half]).is_zero());
    }

    #[test]
    fn discriminant_matches_closed_form() {
        let n = discriminant_norm(&CoverData::symbolic()).unwrap();
        assert_eq!(n.p, p_closed_form());
        assert!(n.p.is_homogeneous());
        assert_eq!(n.p.total_degree(), Some(4));
        let g = QPoly::gens(n.p.vars());
        let swapped = n.p.compose(&[g[1].clone(), g[0].clone(), g[3].clone(), g[2].clone()]).unwrap();
        assert_eq!(swapped, n.p);
    }

    #[test]
    fn delta_normal_form() {
        assert_eq!(normalize_delta(&qi(1)).to_string(), "-u^2*v^2 + u^3 + v^3 - 9/8*u*v + 27/256");
        assert_eq!(normalize_delta(&qi(0)).to_string(), "-u^2*v^2 + u^3");
        assert!(scaling_identity_residual().unwrap().is_zero());
        assert!(normalization_residual().unwrap().is_zero());
    }

    #[test]
    fn cyclotomic_arithmetic() {
        let z = Cyclotomic3::zeta();
        assert_eq!(z.clone() * z.clone() * z.clone(), Cyclotomic3::one());
        let x = Cyclotomic3::new(q(3, 2), qi(-5));
        assert_eq!((x.clone() / x.clone()), Cyclotomic3::one());
        assert!((z.to_complex().powu(3) - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn three_cusps() {
        let cusps = find_cusps(&normalize_delta(&qi(1))).unwrap();
        assert_eq!(cusps.len(), 3);
        let real = cusps.iter().find(|c| c.zeta == 0).unwrap();
        assert_eq!(real.u, Cyclotomic3::rational(q(3, 4)));
        assert_eq!(real.v, Cyclotomic3::rational(q(3, 4)));
        for c in &cusps {
            let z = Cyclotomic3::zeta_pow(c.zeta);
            assert_eq!(c.v, Cyclotomic3::rational(q(3, 4)) * z.clone());
            assert_eq!(c.u, Cyclotomic3::rational(q(3, 4)) * z.clone() * z);
            assert!(c.float_residuals.iter().all(|r| *r < 1e-12));
        }
    }

    #[test]
    fn characteristic_polynomials_vanish_on_cover() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert_eq!(eigenvalue_check(&mut rng, 20).unwrap(), 20);
    }
}
