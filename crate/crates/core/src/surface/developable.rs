//! The quartic `P` as the tangential developable of its cuspidal twisted cubic.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bidouble::p_closed_form;
use crate::error::{Error, Result};
use crate::kernel::{var_names, Matrix};
use crate::scalar::qi;
use crate::surface::pinch::sym2_coefficients;
use crate::surface::quadrics::x_vars;
use crate::{QPoly, Rational};

fn sw(s: &str) -> QPoly {
    QPoly::parse_with_vars(s, &["s", "w"]).expect("valid literal")
}

fn s_only(s: &str) -> QPoly {
    QPoly::parse_with_vars(s, &["s"]).expect("valid literal")
}

/// `G(s, w) = (16 s w^2, w^2 - 4 s w, s - w)` as `(beta, u, v)` with `alpha = 1`.
pub fn developable_map() -> [QPoly; 3] {
    [sw("16*s*w^2"), sw("w^2 - 4*s*w"), sw("s - w")]
}

/// Cuspidal curve `(alpha, beta, u, v) = (1, 64 s^3, 12 s^2, 3 s)`.
pub fn cuspidal_cubic() -> [QPoly; 4] {
    [s_only("1"), s_only("64*s^3"), s_only("12*s^2"), s_only("3*s")]
}

#[derive(Clone, Debug, Serialize)]
pub struct DevelopableMapReport {
    /// `P(u, v, 1, beta)` composed with `G` is zero.
    pub image_on_surface: bool,
    #[serde(serialize_with = "crate::surface::ser_display_vec")]
    pub minors: Vec<QPoly>,
    /// Each minor vanishes after `w = -2 s`.
    pub minors_vanish_on_line: bool,
    /// Some minor is nonzero at `(s, w) = (1, 1)`.
    pub minors_nonzero_off_line: bool,
    #[serde(serialize_with = "crate::surface::ser_display_vec")]
    pub rank_drop_image: Vec<QPoly>,
    pub image_is_cuspidal_cubic: bool,
}

fn p_on_g() -> Result<QPoly> {
    let [beta, u, v] = developable_map();
    p_closed_form().compose(&[sw("1"), beta, u, v])
}

pub fn developable_map_checks() -> Result<DevelopableMapReport> {
    let g = developable_map();
    let jac: Vec<[QPoly; 2]> = g.iter().map(|c| Ok([c.derivative("s")?, c.derivative("w")?])).collect::<Result<_>>()?;
    let minor = |i: usize, j: usize| &(&jac[i][0] * &jac[j][1]) - &(&jac[i][1] * &jac[j][0]);
    let minors = vec![minor(0, 1), minor(0, 2), minor(1, 2)];
    let line = sw("-2*s");
    let on_line: Vec<QPoly> = minors.iter().map(|m| m.substitute("w", &line)).collect::<Result<_>>()?;
    let at = [qi(1), qi(1)];
    let image: Vec<QPoly> = g
        .iter()
        .map(|c| c.substitute("w", &line).and_then(|p| p.with_vars(&var_names(&["s", "w"]))).and_then(|p| p.drop_var("w")))
        .collect::<Result<_>>()?;
    let cubic = cuspidal_cubic();
    Ok(DevelopableMapReport {
        image_on_surface: p_on_g()?.is_zero(),
        minors_vanish_on_line: on_line.iter().all(QPoly::is_zero),
        minors_nonzero_off_line: minors.iter().any(|m| m.eval(&at) != qi(0)),
        image_is_cuspidal_cubic: image.iter().zip(&cubic[1..]).all(|(a, b)| a == b),
        rank_drop_image: image,
        minors,
    })
}

/// `P` and its four partials composed with the cuspidal cubic.
pub fn gradient_on_cuspidal_curve() -> Result<Vec<(String, QPoly)>> {
    let p = p_closed_form();
    let c = cuspidal_cubic();
    let mut out = vec![("P".to_string(), p.compose(&c)?)];
    for v in ["alpha", "beta", "u", "v"] {
        out.push((format!("dP/d{v}"), p.derivative(v)?.compose(&c)?));
    }
    Ok(out)
}

/// Linear substitution taking `P` to the standard twisted-cubic coordinates,
/// read off by matching each monomial component `c s^k` of the cuspidal
/// cubic with `c x_k`. Returns images of `(alpha, beta, u, v)`.
pub fn coordinate_identification() -> Result<Vec<QPoly>> {
    let xs = QPoly::gens(&x_vars());
    cuspidal_cubic()
        .iter()
        .map(|comp| {
            let (e, c) = match comp.terms().collect::<Vec<_>>().as_slice() {
                [(e, c)] => ((*e).clone(), (*c).clone()),
                _ => return Err(Error::Structural("cubic component is not a monomial".into())),
            };
            let k = e.first().copied().unwrap_or(0) as usize;
            Ok(xs[k].scale(&c))
        })
        .collect()
}

/// `P` in the coordinates `x0..x3`.
pub fn p_in_cubic_coordinates() -> Result<QPoly> {
    p_closed_form().compose(&coordinate_identification()?)?.with_vars(&x_vars())
}

/// Coefficients `L` with `P = sum L_ij Q_i Q_j` after the identification.
pub fn p_as_quadratic_in_net() -> Result<Matrix<Rational>> {
    sym2_coefficients(&p_in_cubic_coordinates()?)
}

/// Point `(alpha, beta, u, v) = (1, 16 s w^2, w^2 - 4 s w, s - w)` of `P`.
pub fn surface_point(s: &Rational, w: &Rational) -> Vec<Rational> {
    vec![qi(1), qi(16) * s * w * w, w * w - qi(4) * s * w, s - w]
}

/// Rank of the differential of the Gauss map of `{f = 0}` at a smooth
/// point: rank of the Hessian restricted to the kernel of the gradient.
pub fn gauss_rank_at(f: &QPoly, point: &[Rational]) -> Result<usize> {
    if point.len() != f.nvars() {
        return Err(Error::WrongGeneratorCount { expected: f.nvars(), found: point.len() });
    }
    if f.eval(point) != qi(0) {
        return Err(Error::Precondition("point is not on the surface".into()));
    }
    let vars = f.vars().to_vec();
    let grad: Vec<QPoly> = vars.iter().map(|v| f.derivative(v)).collect::<Result<_>>()?;
    let g: Vec<Rational> = grad.iter().map(|d| d.eval(point)).collect();
    if g.iter().all(|x| *x == qi(0)) {
        return Err(Error::Precondition("gradient vanishes: singular point".into()));
    }
    let n = vars.len();
    let hess = Matrix::from_fn(n, n, |i, j| grad[i].derivative(&vars[j]).expect("variable").eval(point));
    let tangent = Matrix::from_rows(vec![g]).nullspace();
    let t = Matrix::from_fn(n, tangent.len(), |i, j| tangent[j][i].clone());
    Ok((&(&t.transpose() * &hess) * &t).rank())
}

#[derive(Clone, Debug, Serialize)]
pub struct VeroneseReport {
    #[serde(serialize_with = "crate::surface::ser_named")]
    pub minors: Vec<(String, QPoly)>,
    pub all_vanish: bool,
    pub sample_ranks: Vec<usize>,
}

/// `x_i = y_i^2`, `w1 = y2 y3`, `w2 = y1 y3`, `w3 = y1 y2` make every 2x2
/// minor of `[[x1, w3, w2], [w3, x2, w1], [w2, w1, x3]]` vanish.
pub fn veronese_model_check(samples: &[[f64; 3]]) -> Result<VeroneseReport> {
    let v = ["y1", "y2", "y3"];
    let p = |s: &str| QPoly::parse_with_vars(s, &v).expect("valid literal");
    let (x1, x2, x3) = (p("y1^2"), p("y2^2"), p("y3^2"));
    let (w1, w2, w3) = (p("y2*y3"), p("y1*y3"), p("y1*y2"));
    let m = [[x1.clone(), w3.clone(), w2.clone()], [w3.clone(), x2.clone(), w1.clone()], [w2, w1, x3]];
    let names = [["x1", "w3", "w2"], ["w3", "x2", "w1"], ["w2", "w1", "x3"]];
    let mut minors = Vec::new();
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            let d = &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1]);
            let name = format!("{}*{} - {}*{}", names[r1][c1], names[r2][c2], names[r1][c2], names[r2][c1]);
            minors.push((name, d));
        }
    }
    let sample_ranks = samples
        .iter()
        .map(|y| {
            let mf = Matrix::from_fn(3, 3, |i, j| m[i][j].eval_with(y, |c| c.to_f64().unwrap_or(f64::NAN)));
            mf.rank_approx(1e-10)
        })
        .collect();
    Ok(VeroneseReport { all_vanish: minors.iter().all(|(_, d)| d.is_zero()), minors, sample_ranks })
}
