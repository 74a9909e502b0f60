//! Conormal sections of the twisted cubic, pinch points and tangency to the
//! conic of cones.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{var_names, Matrix, UPoly};
use crate::scalar::qi;
use crate::surface::quadrics::{net_polys, x_vars};
use crate::{QPoly, QUPoly, Rational};

fn tpoly(s: &str) -> QPoly {
    QPoly::parse_with_vars(s, &["t"]).expect("valid literal")
}

fn to_u(p: &QPoly) -> QUPoly {
    UPoly::new(p.with_vars(&var_names(&["t"])).and_then(|p| p.to_univariate("t")).expect("univariate in t"))
}

/// Conormal frame along `v3(1, t)`: `e1 = (t^2, -2t, 1, 0)`, `e2 = (0, t^2, -2t, 1)`.
pub fn conormal_basis() -> [Vec<QPoly>; 2] {
    [
        vec![tpoly("t^2"), tpoly("-2*t"), tpoly("1"), tpoly("0")],
        vec![tpoly("0"), tpoly("t^2"), tpoly("-2*t"), tpoly("1")],
    ]
}

/// Components `(a_i, b_i)` of `grad Q_i` along the cubic in the conormal frame.
pub fn conormal_components() -> Result<[[QPoly; 2]; 3]> {
    let point: Vec<QPoly> = ["1", "t", "t^2", "t^3"].iter().map(|s| tpoly(s)).collect();
    let [e1, e2] = conormal_basis();
    let mut out: Vec<[QPoly; 2]> = Vec::new();
    for p in net_polys() {
        let grad: Vec<QPoly> = x_vars()
            .iter()
            .map(|v| p.derivative(v).and_then(|d| d.compose(&point)))
            .collect::<Result<_>>()?;
        // e1 has last entries (1, 0), e2 has (-2t, 1)
        let b = grad[3].clone();
        let a = &grad[2] + &(&tpoly("2*t") * &b);
        for k in 0..4 {
            let r = &grad[k] - &(&(&a * &e1[k]) + &(&b * &e2[k]));
            if !r.is_zero() {
                return Err(Error::Structural("gradient is not conormal along the cubic".into()));
            }
        }
        out.push([a, b]);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

fn check_sym3(lambda: &Matrix<Rational>) -> Result<()> {
    if lambda.rows() != 3 || lambda.cols() != 3 || !lambda.is_symmetric() {
        return Err(Error::Validation("expected a symmetric 3x3 coefficient matrix".into()));
    }
    Ok(())
}

fn form(lambda: &Matrix<Rational>, u: &[QPoly], v: &[QPoly]) -> QPoly {
    let mut acc = QPoly::zero(var_names(&["t"]));
    for i in 0..3 {
        for j in 0..3 {
            acc = &acc + &(&u[i] * &v[j]).scale(&lambda[(i, j)]);
        }
    }
    acc
}

/// `4 (a L a)(b L b) - (2 a L b)^2` for `F = sum L_ij Q_i Q_j` with `L`
/// symmetric (off-diagonal pairs counted twice).
pub fn pinch_discriminant(lambda: &Matrix<Rational>) -> Result<QUPoly> {
    check_sym3(lambda)?;
    if lambda.is_zero() {
        return Err(Error::Precondition("zero surface".into()));
    }
    let c = conormal_components()?;
    let a: Vec<QPoly> = c.iter().map(|x| x[0].clone()).collect();
    let b: Vec<QPoly> = c.iter().map(|x| x[1].clone()).collect();
    let aa = form(lambda, &a, &a);
    let bb = form(lambda, &b, &b);
    let ab = form(lambda, &a, &b).scale(&qi(2));
    Ok(to_u(&(&(&aa * &bb).scale(&qi(4)) - &(&ab * &ab))))
}

/// `sum L_ij Q_i Q_j` as a quartic in `x0..x3`.
pub fn surface_from_lambda(lambda: &Matrix<Rational>) -> Result<QPoly> {
    check_sym3(lambda)?;
    let qs = net_polys();
    let mut acc = QPoly::zero(x_vars());
    for i in 0..3 {
        for j in 0..3 {
            acc = &acc + &(&qs[i] * &qs[j]).scale(&lambda[(i, j)]);
        }
    }
    Ok(acc)
}

/// Symmetric `L` with `f = sum L_ij Q_i Q_j`, by an exact linear solve over
/// the quartic monomials.
pub fn sym2_coefficients(f: &QPoly) -> Result<Matrix<Rational>> {
    let f = f.with_vars(&x_vars())?;
    let qs = net_polys();
    let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let products: Vec<QPoly> = pairs.iter().map(|&(i, j)| &qs[i] * &qs[j]).collect();
    let mut monos: Vec<Vec<u32>> = products.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
    monos.extend(f.terms().map(|(e, _)| e.clone()));
    monos.sort();
    monos.dedup();
    let m = Matrix::from_fn(monos.len(), pairs.len(), |r, c| products[c].coeff(&monos[r]));
    let rhs: Vec<Rational> = monos.iter().map(|e| f.coeff(e)).collect();
    let mu = m.solve(&rhs).ok_or_else(|| Error::Structural("quartic is not a quadratic form in the net".into()))?;
    let mut l = Matrix::zeros(3, 3);
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if i == j {
            l[(i, i)] = mu[k].clone();
        } else {
            l[(i, j)] = &mu[k] / qi(2);
            l[(j, i)] = &mu[k] / qi(2);
        }
    }
    Ok(l)
}

/// Discriminant `B^2 - 4AC` of the conic `y^T L y` restricted to the line
/// dual to the cone point `(1, t, t^2)`; the line basis comes from an exact
/// kernel computation. Zero iff the line is tangent to (or contained in) the conic.
pub fn tangency_condition(lambda: &Matrix<Rational>, t: &Rational) -> Result<Rational> {
    check_sym3(lambda)?;
    let row = Matrix::from_rows(vec![vec![qi(1), t.clone(), t * t]]);
    let ns = row.nullspace();
    let (p, r) = (&ns[0], &ns[1]);
    let a = lambda.bilinear(p, p);
    let b = lambda.bilinear(p, r) * qi(2);
    let c = lambda.bilinear(r, r);
    Ok(&b * &b - qi(4) * a * c)
}

/// Tangency discriminant as a polynomial in `t`, using the line basis
/// `(t, -1, 0)`, `(0, t, -1)`.
pub fn tangency_polynomial(lambda: &Matrix<Rational>) -> Result<QUPoly> {
    check_sym3(lambda)?;
    let p = vec![tpoly("t"), tpoly("-1"), tpoly("0")];
    let r = vec![tpoly("0"), tpoly("t"), tpoly("-1")];
    let a = form(lambda, &p, &p);
    let b = form(lambda, &p, &r).scale(&qi(2));
    let c = form(lambda, &r, &r);
    Ok(to_u(&(&(&b * &b) - &(&a * &c).scale(&qi(4)))))
}

/// Constant `c` with `tangency = c * pinch`, if one exists.
pub fn tangency_pinch_ratio(lambda: &Matrix<Rational>) -> Result<Option<Rational>> {
    let tp = tangency_polynomial(lambda)?;
    let pd = pinch_discriminant(lambda)?;
    let Some(d) = pd.degree() else { return Ok(tp.is_zero().then(|| qi(1))) };
    let c = tp.coeff(d) / pd.coeff(d);
    Ok((tp == pd.scale(&c)).then_some(c))
}

/// Section of the conormal bundle induced by `sum l_i Q_i`.
pub fn conormal_section(l: &[Rational]) -> Result<[QUPoly; 2]> {
    let c = conormal_components()?;
    let mut out = [QPoly::zero(var_names(&["t"])), QPoly::zero(var_names(&["t"]))];
    for (li, ci) in l.iter().zip(&c) {
        for k in 0..2 {
            out[k] = &out[k] + &ci[k].scale(li);
        }
    }
    Ok([to_u(&out[0]), to_u(&out[1])])
}

/// Whether the section is `(t - t0)` times a nowhere-vanishing constant vector.
pub fn section_vanishes_simply_at(section: &[QUPoly; 2], t0: &Rational) -> bool {
    let lin = QUPoly::new(vec![-t0.clone(), qi(1)]);
    let mut consts = Vec::new();
    for s in section {
        if s.is_zero() {
            consts.push(qi(0));
            continue;
        }
        let (quo, rem) = match s.div_rem(&lin) {
            Ok(x) => x,
            Err(_) => return false,
        };
        if !rem.is_zero() || quo.degree().unwrap_or(0) > 0 {
            return false;
        }
        consts.push(quo.coeff(0));
    }
    consts.iter().any(|c| *c != qi(0))
}

/// `det M` for the pinch matrix at `t1 = 0` written with the off-diagonal
/// coefficient `l02` counted once, and its quotient by `(b0 - b2)^2`.
#[derive(Clone, Debug, Serialize)]
pub struct PinchMatrixCheck {
    #[serde(serialize_with = "crate::surface::ser_display")]
    pub det_m: QPoly,
    #[serde(serialize_with = "crate::surface::ser_display")]
    pub factor: QPoly,
    /// `factor == l00 l22 - l02^2 / 4`, the discriminant of `l00 y0^2 + l02 y0 y2 + l22 y2^2` up to `-1/4`.
    pub factor_is_conic_discriminant: bool,
    /// Whether the factor equals `l00 l22 - 4 l00^2`.
    pub matches_alternative: bool,
}

pub fn pinch_matrix_check() -> Result<PinchMatrixCheck> {
    let vars = ["b0", "b2", "l00", "l02", "l22"];
    let p = |s: &str| QPoly::parse_with_vars(s, &vars).expect("valid literal");
    let m11 = p("l00 + l02 + l22");
    let m12 = p("l00*b0 + 1/2*l02*b0 + 1/2*l02*b2 + l22*b2");
    let m22 = p("l00*b0^2 + l02*b0*b2 + l22*b2^2");
    let det_m = Matrix::from_rows(vec![vec![m11, m12.clone()], vec![m12, m22]]).determinant()?;
    let sq = p("b0^2 - 2*b0*b2 + b2^2");
    let factor = det_m.div_exact(&sq)?;
    Ok(PinchMatrixCheck {
        factor_is_conic_discriminant: factor == p("l00*l22 - 1/4*l02^2"),
        matches_alternative: factor == p("l00*l22 - 4*l00^2"),
        det_m,
        factor,
    })
}

/// Coefficient matrix of the tangential developable `Q1^2 - 4 Q0 Q2`.
pub fn developable_lambda() -> Matrix<Rational> {
    Matrix::from_rows(vec![vec![qi(0), qi(0), qi(-2)], vec![qi(0), qi(1), qi(0)], vec![qi(-2), qi(0), qi(0)]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::surface::quadrics::quadrics_through_twisted_cubic;

    #[test]
    fn conormal_components_are_linear() {
        let c = conormal_components().unwrap();
        let s: Vec<String> = c.iter().map(|x| format!("({}, {})", x[0], x[1])).collect();
        assert_eq!(s, vec!["(0, t)", "(-t, -1)", "(1, 0)"]);
        assert_eq!(quadrics_through_twisted_cubic().len(), 3);
    }

    #[test]
    fn squares_and_developable_are_everywhere_cuspidal() {
        let sq = Matrix::from_rows(vec![vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(0), qi(0)], vec![qi(0), qi(0), qi(0)]]);
        assert!(pinch_discriminant(&sq).unwrap().is_zero());
        assert!(pinch_discriminant(&developable_lambda()).unwrap().is_zero());
        assert!(pinch_discriminant(&Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn general_surface_has_four_pinch_points() {
        let l = Matrix::from_rows(vec![vec![qi(1), q(1, 2), qi(3)], vec![q(1, 2), qi(-2), qi(1)], vec![qi(3), qi(1), q(5, 3)]]);
        let d = pinch_discriminant(&l).unwrap();
        assert_eq!(d.degree(), Some(4));
        assert_eq!(d.gcd(&d.derivative()).degree(), Some(0));
        assert_eq!(tangency_pinch_ratio(&l).unwrap(), Some(qi(-1)));
        for t in [qi(0), qi(2), q(-1, 3)] {
            let tc = tangency_condition(&l, &t).unwrap();
            assert_eq!(tc == qi(0), d.eval(&t) == qi(0));
        }
    }

    #[test]
    fn sym2_round_trip() {
        let l = Matrix::from_rows(vec![vec![qi(2), qi(1), qi(0)], vec![qi(1), qi(0), q(1, 2)], vec![qi(0), q(1, 2), qi(-1)]]);
        let f = surface_from_lambda(&l).unwrap();
        assert_eq!(sym2_coefficients(&f).unwrap(), l);
        let not_in = QPoly::parse_with_vars("x0^4", &["x0", "x1", "x2", "x3"]).unwrap();
        assert!(sym2_coefficients(&not_in).is_err());
    }

    #[test]
    fn pinch_matrix_factor() {
        let c = pinch_matrix_check().unwrap();
        assert!(c.factor_is_conic_discriminant);
        assert!(!c.matches_alternative);
    }

    #[test]
    fn cone_sections_vanish_at_vertex() {
        for t0 in [qi(1), qi(-2), q(1, 3), qi(0)] {
            let s = conormal_section(&[qi(1), t0.clone(), &t0 * &t0]).unwrap();
            assert!(section_vanishes_simply_at(&s, &t0));
        }
    }
}
