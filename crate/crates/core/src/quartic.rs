//! The nodal cubic `D`, its dual three-cuspidal quartic `C`, fibers of the
//! projection to `x` and the real root structure of those fibers.

use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::mpoly::var_names;
use crate::kernel::resultant::{discriminant, resultant};
use crate::kernel::roots::{nearest_root_bound, roots_univariate, ApproxRoot, RootMode};
use crate::kernel::upoly::UPoly;
use crate::scalar::{q, qi};
use crate::{QPoly, QUPoly, Rational};

/// Plane curve given by one equation, affine in `(x, y)` or projective in `(x, y, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    pub equation: QPoly,
    pub degree: u32,
}

impl PlaneCurve {
    pub fn new(equation: QPoly) -> Result<Self> {
        let degree = equation.total_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(PlaneCurve { equation, degree })
    }

    /// `D: y^2 - x^2 (x - 1)`.
    pub fn nodal_cubic() -> Self {
        Self::new(QPoly::parse_with_vars("y^2 - x^2*(x - 1)", &["x", "y"]).unwrap()).unwrap()
    }

    /// `C: (x^2 + y^2)^2 + x^3 + 9 x y^2 + (27/4) y^2`.
    pub fn three_cuspidal_quartic() -> Self {
        Self::new(QPoly::parse_with_vars("(x^2 + y^2)^2 + x^3 + 9*x*y^2 + 27/4*y^2", &["x", "y"]).unwrap()).unwrap()
    }

    /// Homogenize an affine curve in `(x, y)` with the new variable `z`.
    pub fn homogenize(&self) -> Result<Self> {
        let vars = var_names(&["x", "y", "z"]);
        let mut terms = Vec::new();
        for (e, c) in self.equation.with_vars(&vars[..2])?.terms() {
            let d = e[0] + e[1];
            terms.push((vec![e[0], e[1], self.degree - d], c.clone()));
        }
        Self::new(QPoly::from_terms(vars, terms))
    }

    /// Apply the shear `x -> x - eps*y`, so that the new `x` equals
    /// `x + eps*y` in the old coordinates.
    pub fn sheared(&self, eps: &Rational) -> Result<Self> {
        let vars = self.equation.vars().to_vec();
        let x = QPoly::var(vars.clone(), "x")?;
        let y = QPoly::var(vars, "y")?;
        Self::new(self.equation.substitute("x", &(&x - &y.scale(eps)))?)
    }

    /// Exact coefficients `c_k(x)` of `y^k`.
    pub fn y_coefficients(&self) -> Result<Vec<QUPoly>> {
        let e = self.equation.with_vars(&var_names(&["x", "y"]))?;
        e.coefficients_in("y")?
            .into_iter()
            .map(|c| Ok(UPoly::new(c.drop_var("y")?.to_univariate("x")?)))
            .collect()
    }
}

/// Projective parametrization `t -> (X(t), Y(t), Z(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCurve {
    pub components: [QUPoly; 3],
}

impl ParamCurve {
    fn from_strs(s: [&str; 3]) -> Self {
        let up = |s: &str| UPoly::new(QPoly::parse_with_vars(s, &["t"]).unwrap().to_univariate("t").unwrap());
        ParamCurve { components: [up(s[0]), up(s[1]), up(s[2])] }
    }

    /// `(t^2 + 1, t (t^2 + 1), 1)`, the standard parametrization of `D`.
    pub fn nodal_cubic() -> Self {
        Self::from_strs(["t^2 + 1", "t*(t^2 + 1)", "1"])
    }

    /// `(-3(1 + t^2) + 2, 2t, (1 + t^2)^2)`, the parametrization of `C`.
    pub fn three_cuspidal_quartic() -> Self {
        Self::from_strs(["-3*(1 + t^2) + 2", "2*t", "(1 + t^2)^2"])
    }

    pub fn max_degree(&self) -> usize {
        self.components.iter().filter_map(UPoly::degree).max().unwrap_or(0)
    }

    /// Affine point `(X/Z, Y/Z)`; `None` when `Z(t) = 0`.
    pub fn affine_point(&self, t: &Rational) -> Option<(Rational, Rational)> {
        let [x, y, z] = &self.components;
        let zv = z.eval(t);
        if zv.is_zero() {
            return None;
        }
        Some((x.eval(t) / zv.clone(), y.eval(t) / zv))
    }

    /// Limit point as `t -> infinity`, scaled so the largest coordinate is 1.
    pub fn point_at_infinity(&self) -> [Rational; 3] {
        let d = self.max_degree();
        let c = self.components.iter().map(|p| p.coeff(d)).collect::<Vec<_>>();
        let lead = c.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Rational::one);
        [c[0].clone() / lead.clone(), c[1].clone() / lead.clone(), c[2].clone() / lead]
    }

    fn as_mpolys(&self) -> Vec<QPoly> {
        self.components.iter().map(|p| QPoly::from_univariate("t", p.coeffs())).collect()
    }

    /// Divide all components by their common monic gcd and rational content.
    pub fn reduced(&self) -> Self {
        let g = self.components[0].gcd(&self.components[1]).gcd(&self.components[2]);
        let comps: Vec<QUPoly> = self.components.iter().map(|p| p.div_rem(&g).expect("nonzero gcd").0).collect();
        let all = QPoly::from_terms(
            var_names(&["t", "k"]),
            comps.iter().enumerate().flat_map(|(k, p)| {
                p.coeffs().iter().enumerate().map(move |(j, c)| (vec![j as u32, k as u32], c.clone()))
            }),
        );
        let content = match all.terms().next() {
            None => Rational::one(),
            Some(_) => {
                let prim = all.primitive();
                let (e, c) = all.terms().next().unwrap();
                (c.clone() / prim.coeff(e)).abs()
            }
        };
        let inv = Rational::one() / content;
        ParamCurve { components: [comps[0].scale(&inv), comps[1].scale(&inv), comps[2].scale(&inv)] }
    }
}

/// Substitute a parametrization into a projective equation in `(x, y, z)`.
pub fn substitute_param(curve: &PlaneCurve, param: &ParamCurve) -> Result<QUPoly> {
    let e = curve.equation.with_vars(&var_names(&["x", "y", "z"]))?;
    let s = e.compose(&param.as_mpolys())?;
    if s.is_zero() {
        return Ok(UPoly::zero());
    }
    Ok(UPoly::new(s.to_univariate("t")?))
}

/// Gradient of `curve` (projective, in `x, y, z`) along `param`, with the
/// common factor of the three components removed.
pub fn dual_parametrization(param: &ParamCurve, curve: &PlaneCurve) -> Result<ParamCurve> {
    if !substitute_param(curve, param)?.is_zero() {
        return Err(Error::Validation("parametrization does not lie on the curve".into()));
    }
    let e = curve.equation.with_vars(&var_names(&["x", "y", "z"]))?;
    let imgs = param.as_mpolys();
    let mut comps = Vec::new();
    for v in ["x", "y", "z"] {
        let g = e.derivative(v)?.compose(&imgs)?;
        comps.push(if g.is_zero() { UPoly::zero() } else { UPoly::new(g.to_univariate("t")?) });
    }
    Ok(ParamCurve { components: [comps[0].clone(), comps[1].clone(), comps[2].clone()] }.reduced())
}

/// Common factor removed by [`dual_parametrization`].
pub fn gradient_common_factor(param: &ParamCurve, curve: &PlaneCurve) -> Result<QUPoly> {
    let e = curve.equation.with_vars(&var_names(&["x", "y", "z"]))?;
    let imgs = param.as_mpolys();
    let mut g = UPoly::zero();
    for v in ["x", "y", "z"] {
        let d = e.derivative(v)?.compose(&imgs)?;
        if !d.is_zero() {
            g = g.gcd(&UPoly::new(d.to_univariate("t")?));
        }
    }
    Ok(g)
}

/// Implicit affine equation in `(x, y)` of a parametrized curve:
/// `Res_t(x Z - X, y Z - Y)`, made primitive with positive leading coefficient.
pub fn implicitize(param: &ParamCurve) -> Result<PlaneCurve> {
    let vars = var_names(&["t", "x", "y"]);
    let lift = |p: &QUPoly| QPoly::from_univariate("t", p.coeffs()).with_vars(&vars);
    let [xp, yp, zp] = &param.components;
    let (xp, yp, zp) = (lift(xp)?, lift(yp)?, lift(zp)?);
    let x = QPoly::var(vars.clone(), "x")?;
    let y = QPoly::var(vars.clone(), "y")?;
    let r = resultant(&(&(&x * &zp) - &xp), &(&(&y * &zp) - &yp), "t")?;
    if r.is_zero() {
        return Err(Error::Structural("degenerate elimination: resultant vanishes identically".into()));
    }
    PlaneCurve::new(r.primitive())
}

/// Coefficients `A(x)`, `B(x)` of the biquadratic `y^4 + A y^2 + B` and
/// `Theta = A^2 - 4B`.
#[derive(Clone, Debug, PartialEq)]
pub struct Biquadratic {
    pub a: QUPoly,
    pub b: QUPoly,
    pub theta: QUPoly,
}

pub fn biquadratic(curve: &PlaneCurve) -> Result<Biquadratic> {
    let c = curve.y_coefficients()?;
    if c.len() != 5 || c[1].degree().is_some() || c[3].degree().is_some() || c[4].degree() != Some(0) {
        return Err(Error::Precondition("curve is not monic biquadratic in y".into()));
    }
    let inv = Rational::one() / c[4].coeff(0);
    let a = c[2].scale(&inv);
    let b = c[0].scale(&inv);
    let theta = &(&a * &a) - &b.scale(&qi(4));
    Ok(Biquadratic { a, b, theta })
}

/// Multiplicity of `r` as a root of `p`.
pub fn vanishing_order(p: &QUPoly, r: &Rational) -> u32 {
    let lin = UPoly::new(vec![-r.clone(), Rational::one()]);
    let mut p = p.clone();
    let mut k = 0;
    while !p.is_zero() && p.eval(r).is_zero() {
        p = p.div_rem(&lin).expect("nonzero").0;
        k += 1;
    }
    k
}

/// Identities of the discriminant part of the fiber equation of `C`:
/// residuals of `2 Theta' - 3(8x + 9)^2` and `Theta - 32 (x + 9/8)^3`.
pub fn theta_residuals() -> Result<(QUPoly, QUPoly)> {
    let bq = biquadratic(&PlaneCurve::three_cuspidal_quartic())?;
    let lin = UPoly::new(vec![qi(9), qi(8)]);
    let r1 = &bq.theta.derivative().scale(&qi(2)) - &lin.pow(2).scale(&qi(3));
    let r2 = &bq.theta - &UPoly::new(vec![q(9, 8), qi(1)]).pow(3).scale(&qi(32));
    Ok((r1, r2))
}

/// Exact `Disc_y` of the curve as a polynomial in `x`.
pub fn disc_y(curve: &PlaneCurve) -> Result<QUPoly> {
    let e = curve.equation.with_vars(&var_names(&["x", "y"]))?;
    let d = discriminant(&e, "y")?;
    if d.is_zero() {
        return Err(Error::Structural("discriminant vanishes identically".into()));
    }
    Ok(UPoly::new(d.to_univariate("x")?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalValue {
    pub value: Complex<f64>,
    /// Order of vanishing of `Disc_y`.
    pub order: u32,
    pub radius: f64,
    /// Exact value when the corresponding square-free factor is linear.
    #[serde(serialize_with = "ser_opt_q")]
    pub exact: Option<Rational>,
}

fn ser_opt_q<S: serde::Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// Critical values of the projection `(x, y) -> x + eps y` restricted to the
/// curve, with orders read from the square-free decomposition of `Disc_y`.
/// Values closer than `1e-6` are merged with summed orders.
pub fn critical_values(curve: &PlaneCurve, shear: &Rational) -> Result<Vec<CriticalValue>> {
    let sheared = curve.sheared(shear)?;
    let disc = disc_y(&sheared)?;
    let sf = disc.squarefree_decomposition()?;
    let mut out: Vec<CriticalValue> = Vec::new();
    for (k, f) in sf.iter().enumerate() {
        let order = k as u32 + 1;
        match f.degree() {
            None | Some(0) => continue,
            Some(1) => {
                let r = -f.coeff(0) / f.coeff(1);
                out.push(CriticalValue {
                    value: Complex::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
                    order,
                    radius: 0.0,
                    exact: Some(r),
                });
            }
            Some(_) => {
                let c: Vec<Complex<f64>> = f.coeffs().iter().map(|x| Complex::new(x.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
                for r in roots_univariate(&c, RootMode::Simple)? {
                    let value = if r.value.im.abs() <= r.radius { Complex::new(r.value.re, 0.0) } else { r.value };
                    out.push(CriticalValue { value, order, radius: r.radius, exact: None });
                }
            }
        }
    }
    let mut merged: Vec<CriticalValue> = Vec::new();
    for cv in out {
        if let Some(m) = merged.iter_mut().find(|m| (m.value - cv.value).norm() < 1e-6) {
            m.order += cv.order;
            m.exact = None;
        } else {
            merged.push(cv);
        }
    }
    merged.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    Ok(merged)
}

/// Coefficients of the fiber polynomial at complex `x`, lowest degree first.
pub fn fiber_coeffs(curve: &PlaneCurve, x: Complex<f64>) -> Result<Vec<Complex<f64>>> {
    Ok(curve
        .y_coefficients()?
        .iter()
        .map(|p| p.coeffs().iter().rev().fold(Complex::zero(), |acc, c| acc * x + Complex::new(c.to_f64().unwrap_or(f64::NAN), 0.0)))
        .collect())
}

fn with_bounds(coeffs: &[Complex<f64>], groups: Vec<(Complex<f64>, usize)>) -> Vec<ApproxRoot<f64>> {
    groups
        .into_iter()
        .map(|(value, multiplicity)| {
            let b = nearest_root_bound(coeffs, value);
            ApproxRoot { value, radius: b.max(f64::EPSILON * (1.0 + value.norm())), multiplicity }
        })
        .collect()
}

fn group_equal(vals: &[Complex<f64>], tol: f64) -> Vec<(Complex<f64>, usize)> {
    let mut out: Vec<(Complex<f64>, usize)> = Vec::new();
    for &v in vals {
        if let Some(g) = out.iter_mut().find(|g| (g.0 - v).norm() <= tol * (1.0 + v.norm())) {
            g.1 += 1;
        } else {
            out.push((v, 1));
        }
    }
    out
}

/// Roots of the fiber over `x0` with multiplicity. Curves even in `y` of
/// degree 4 use the closed form `2y^2 = -A +- sqrt(Theta)`; other curves go
/// through the cluster-mode root finder.
pub fn fiber_solve(curve: &PlaneCurve, x0: Complex<f64>) -> Result<Vec<ApproxRoot<f64>>> {
    let coeffs = fiber_coeffs(curve, x0)?;
    if coeffs.last().is_none_or(|c| c.is_zero()) {
        return Err(Error::Precondition("leading coefficient vanishes on this fiber".into()));
    }
    if let Ok(bq) = biquadratic(curve) {
        let ev = |p: &QUPoly| -> Complex<f64> { p.coeffs().iter().rev().fold(Complex::zero(), |acc, c| acc * x0 + Complex::new(c.to_f64().unwrap(), 0.0)) };
        let (a, th) = (ev(&bq.a), ev(&bq.theta));
        let sq = th.sqrt();
        let mut ys = Vec::new();
        for s in [(-a + sq) / 2.0, (-a - sq) / 2.0] {
            let r = s.sqrt();
            ys.push(r);
            ys.push(-r);
        }
        return Ok(with_bounds(&coeffs, group_equal(&ys, 1e-12)));
    }
    roots_univariate(&coeffs, RootMode::Cluster)
}

/// Fiber over a rational `x0` with multiplicities decided exactly from the
/// signs of `A`, `B`, `Theta` (biquadratic curves only).
pub fn fiber_solve_exact(curve: &PlaneCurve, x0: &Rational) -> Result<Vec<ApproxRoot<f64>>> {
    let bq = biquadratic(curve)?;
    let (a, b, th) = (bq.a.eval(x0), bq.b.eval(x0), bq.theta.eval(x0));
    let xf = Complex::new(x0.to_f64().unwrap_or(f64::NAN), 0.0);
    let coeffs = fiber_coeffs(curve, xf)?;
    let af = Complex::new(a.to_f64().unwrap(), 0.0);
    let mut ys: Vec<(Complex<f64>, usize)> = Vec::new();
    let push_pair = |ys: &mut Vec<(Complex<f64>, usize)>, s: Complex<f64>, m: usize| {
        if s.is_zero() {
            ys.push((Complex::zero(), 2 * m));
        } else {
            let r = s.sqrt();
            ys.push((r, m));
            ys.push((-r, m));
        }
    };
    if th.is_zero() {
        push_pair(&mut ys, -af / 2.0, 2);
    } else if b.is_zero() {
        // y^2 (y^2 + A) = 0
        push_pair(&mut ys, Complex::zero(), 1);
        push_pair(&mut ys, -af, 1);
    } else {
        let sq = Complex::new(th.to_f64().unwrap(), 0.0).sqrt();
        push_pair(&mut ys, (-af + sq) / 2.0, 1);
        push_pair(&mut ys, (-af - sq) / 2.0, 1);
    }
    Ok(with_bounds(&coeffs, ys))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiberPattern {
    FourImaginary,
    TwoRealTwoImaginary,
    FourReal,
    TwoDoubleReal,
    ComplexQuadruple,
    /// Critical fibers other than the double-real one (`B = 0`, or a double
    /// non-real pair).
    OtherCritical,
}

/// Real fiber with its pattern and, when defined, the roots labelled
/// `(A1, A2, B2, B1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberStructure {
    pub x: f64,
    pub pattern: FiberPattern,
    pub roots: Vec<ApproxRoot<f64>>,
    pub labeled: Option<[Complex<f64>; 4]>,
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Classify the real fiber over `x0` by exact signs of `A`, `B`, `Theta` at
/// the rational value of `x0`.
pub fn classify_real_fiber(curve: &PlaneCurve, x0: f64) -> Result<FiberStructure> {
    let xq = Rational::from_float(x0).ok_or_else(|| Error::Precondition("x0 must be finite".into()))?;
    classify_real_fiber_exact(curve, &xq)
}

pub fn classify_real_fiber_exact(curve: &PlaneCurve, xq: &Rational) -> Result<FiberStructure> {
    let bq = biquadratic(curve)?;
    let (sa, sb, st) = (sign(&bq.a.eval(xq)), sign(&bq.b.eval(xq)), sign(&bq.theta.eval(xq)));
    let pattern = match (st, sb, sa) {
        (-1, _, _) => FiberPattern::ComplexQuadruple,
        (0, _, -1) => FiberPattern::TwoDoubleReal,
        (0, _, _) => FiberPattern::OtherCritical,
        (_, 0, _) => FiberPattern::OtherCritical,
        (_, -1, _) => FiberPattern::TwoRealTwoImaginary,
        (_, _, -1) => FiberPattern::FourReal,
        _ => FiberPattern::FourImaginary,
    };
    let roots = fiber_solve_exact(curve, xq)?;
    let expanded: Vec<Complex<f64>> = roots.iter().flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity)).collect();
    let labeled = label_roots(pattern, &expanded);
    Ok(FiberStructure { x: xq.to_f64().unwrap_or(f64::NAN), pattern, roots, labeled })
}

/// Labels `(A1, A2, B2, B1)` following the naming of the real picture:
/// `A1` is the upper imaginary root or the negative root closer to 0, `B1`
/// its negative, `A2` the remaining negative or upper root, `B2` its negative.
fn label_roots(pattern: FiberPattern, ys: &[Complex<f64>]) -> Option<[Complex<f64>; 4]> {
    if ys.len() != 4 {
        return None;
    }
    let mut v = ys.to_vec();
    match pattern {
        FiberPattern::FourImaginary => {
            v.sort_by(|a, b| b.im.total_cmp(&a.im));
            Some([v[0], v[1], v[2], v[3]])
        }
        FiberPattern::TwoRealTwoImaginary => {
            let (mut re, mut im): (Vec<_>, Vec<_>) = v.into_iter().partition(|z| z.im.abs() < 1e-9 * (1.0 + z.norm()));
            re.sort_by(|a, b| a.re.total_cmp(&b.re));
            im.sort_by(|a, b| b.im.total_cmp(&a.im));
            if re.len() != 2 || im.len() != 2 {
                return None;
            }
            Some([im[0], re[0], re[1], im[1]])
        }
        FiberPattern::FourReal | FiberPattern::TwoDoubleReal => {
            v.sort_by(|a, b| a.re.total_cmp(&b.re));
            // ascending: A2 < A1 < 0 < B1 < B2
            Some([v[1], v[0], v[3], v[2]])
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlexesAndCusps {
    /// `det(P, P', P'')` of the parametrization.
    pub flex_polynomial: QUPoly,
    /// Flexes at `t = infinity`: formal degree `3(d - 2)` minus actual degree.
    pub flexes_at_infinity: usize,
    /// Finite flex parameters (numeric).
    pub flex_parameters: Vec<f64>,
    /// Exact `t^2` at the finite flexes when the flex polynomial is even quadratic.
    pub flex_t_squared: Option<Rational>,
    /// Cusps of the dual curve at the finite flexes: exact `x` and `y^2`.
    pub cusps_exact: Vec<(Rational, Rational)>,
    /// Dual point at `t = infinity`.
    pub cusp_at_infinity: [Rational; 3],
}

/// Flexes of a parametrized plane cubic and the corresponding cusps of its dual.
pub fn flexes_and_cusps(cubic: &ParamCurve, curve: &PlaneCurve) -> Result<FlexesAndCusps> {
    let [p0, p1, p2] = &cubic.components;
    let d1 = [p0.derivative(), p1.derivative(), p2.derivative()];
    let d2 = [d1[0].derivative(), d1[1].derivative(), d1[2].derivative()];
    let m = [[p0.clone(), p1.clone(), p2.clone()], d1, d2];
    let det = &(&(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
        - &(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]))))
        + &(&m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0])));
    let d = cubic.max_degree();
    let formal = 3 * (d - 2);
    let actual = det.degree().ok_or(Error::Structural("flex polynomial vanishes".into()))?;
    let flexes_at_infinity = formal - actual;
    let c: Vec<Complex<f64>> = det.coeffs().iter().map(|x| Complex::new(x.to_f64().unwrap(), 0.0)).collect();
    let mut flex_parameters: Vec<f64> = if actual > 0 {
        roots_univariate(&c, RootMode::Cluster)?.into_iter().filter(|r| r.value.im.abs() <= r.radius).map(|r| r.value.re).collect()
    } else {
        Vec::new()
    };
    flex_parameters.sort_by(f64::total_cmp);
    let dual = dual_parametrization(cubic, &curve.homogenize()?)?;
    let mut cusps_exact = Vec::new();
    let mut flex_t_squared = None;
    if actual == 2 && det.coeff(1).is_zero() {
        let t2 = -det.coeff(0) / det.coeff(2);
        flex_t_squared = Some(t2.clone());
        // Dual components split into even and odd parts in t; x is even, y odd.
        let [dx, dy, dz] = &dual.components;
        let even = |p: &QUPoly| -> Option<Rational> {
            let mut acc = Rational::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if k % 2 == 1 && !c.is_zero() {
                    return None;
                }
                if k % 2 == 0 {
                    acc += c * num_traits::pow(t2.clone(), k / 2);
                }
            }
            Some(acc)
        };
        let odd_sq = |p: &QUPoly| -> Option<Rational> {
            let mut acc = Rational::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if k % 2 == 0 && !c.is_zero() {
                    return None;
                }
                if k % 2 == 1 {
                    acc += c * num_traits::pow(t2.clone(), k / 2);
                }
            }
            Some(acc.clone() * acc * t2.clone())
        };
        if let (Some(x), Some(y2), Some(z)) = (even(dx), odd_sq(dy), even(dz)) {
            cusps_exact.push((x / z.clone(), y2 / (z.clone() * z)));
        }
    }
    Ok(FlexesAndCusps {
        flex_polynomial: det,
        flexes_at_infinity,
        flex_parameters,
        flex_t_squared,
        cusps_exact,
        cusp_at_infinity: dual.point_at_infinity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_of_nodal_cubic() {
        let d = PlaneCurve::nodal_cubic().homogenize().unwrap();
        let dual = dual_parametrization(&ParamCurve::nodal_cubic(), &d).unwrap();
        assert_eq!(dual, ParamCurve::three_cuspidal_quartic());
        assert_eq!(dual.affine_point(&qi(0)), Some((qi(-1), qi(0))));
    }

    #[test]
    fn implicit_equation_of_c() {
        let c = implicitize(&ParamCurve::three_cuspidal_quartic()).unwrap();
        let expect = PlaneCurve::three_cuspidal_quartic().equation.scale(&qi(4));
        assert_eq!(c.equation, expect);
        let conic = implicitize(&ParamCurve::from_strs(["t", "t^2", "1"])).unwrap();
        assert_eq!(conic.equation.to_string(), "x^2 - y");
    }

    #[test]
    fn bad_parametrization_rejected() {
        let d = PlaneCurve::nodal_cubic().homogenize().unwrap();
        assert!(dual_parametrization(&ParamCurve::from_strs(["t", "t^2", "1"]), &d).is_err());
    }

    #[test]
    fn theta_identities() {
        let (r1, r2) = theta_residuals().unwrap();
        assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn discriminant_orders() {
        let disc = disc_y(&PlaneCurve::three_cuspidal_quartic()).unwrap();
        assert_eq!(vanishing_order(&disc, &qi(0)), 3);
        assert_eq!(vanishing_order(&disc, &qi(-1)), 1);
        assert_eq!(vanishing_order(&disc, &q(-9, 8)), 6);
        assert_eq!(disc.degree(), Some(10));
    }

    #[test]
    fn fiber_at_minus_one() {
        let c = PlaneCurve::three_cuspidal_quartic();
        let r = fiber_solve_exact(&c, &qi(-1)).unwrap();
        let zero = r.iter().find(|r| r.multiplicity == 2).unwrap();
        assert!(zero.value.norm() < 1e-15);
        assert!(r.iter().any(|r| (r.value.re - 0.5).abs() < 1e-14));
        assert!(r.iter().any(|r| (r.value.re + 0.5).abs() < 1e-14));
    }

    #[test]
    fn sign_of_a_on_interval() {
        let bq = biquadratic(&PlaneCurve::three_cuspidal_quartic()).unwrap();
        let lo = 0.75 * (-3.0 - 3f64.sqrt());
        let hi = 0.75 * (-3.0 + 3f64.sqrt());
        for k in -400..=100 {
            let x = q(k, 100);
            let xf = x.to_f64().unwrap();
            let neg = bq.a.eval(&x).is_negative();
            assert_eq!(neg, xf > lo && xf < hi, "x = {x}");
        }
    }
}
