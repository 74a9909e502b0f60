//! The twisted cubic, its net of quadrics and the determinant conic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{var_names, Matrix};
use crate::scalar::{q, qi};
use crate::{QPoly, Rational};

pub fn x_vars() -> Vec<String> {
    var_names(&["x0", "x1", "x2", "x3"])
}

pub fn lambda_vars() -> Vec<String> {
    var_names(&["l0", "l1", "l2"])
}

/// Quadratic form `x^T M x` with `M` symmetric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadricForm {
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Matrix<Rational>,
}

/// Conic `y^T M y` in three variables.
pub type ConicForm = QuadricForm;

pub(crate) fn ser_matrix<S: serde::Serializer>(m: &Matrix<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.rows()))?;
    for r in m.to_rows() {
        seq.serialize_element(&r.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl QuadricForm {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self> {
        if !matrix.is_square() || !matrix.is_symmetric() {
            return Err(Error::Validation("quadric matrix must be square and symmetric".into()));
        }
        Ok(QuadricForm { matrix })
    }

    /// Symmetric matrix of a homogeneous quadratic polynomial.
    pub fn from_poly(p: &QPoly) -> Result<Self> {
        let n = p.nvars();
        if !p.is_zero() && (!p.is_homogeneous() || p.total_degree() != Some(2)) {
            return Err(Error::Precondition("expected a quadratic form".into()));
        }
        let mut m = Matrix::zeros(n, n);
        for (e, c) in p.terms() {
            let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                m[(i, i)] = c.clone();
            } else {
                m[(i, j)] = c / qi(2);
                m[(j, i)] = c / qi(2);
            }
        }
        Ok(QuadricForm { matrix: m })
    }

    pub fn to_poly(&self, vars: &[String]) -> QPoly {
        let n = self.matrix.rows();
        let mut p = QPoly::zero(vars.to_vec());
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                p.add_term(e, self.matrix[(i, j)].clone());
            }
        }
        p
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.matrix.bilinear(x, x)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// `Q0 = x1 x3 - x2^2`, `Q1 = -x0 x3 + x1 x2`, `Q2 = x0 x2 - x1^2`: the
/// 2x2 minors of `[[x0, x1, x2], [x1, x2, x3]]`.
pub fn net_polys() -> [QPoly; 3] {
    let v = ["x0", "x1", "x2", "x3"];
    ["x1*x3 - x2^2", "-x0*x3 + x1*x2", "x0*x2 - x1^2"].map(|s| QPoly::parse_with_vars(s, &v).expect("valid literal"))
}

pub fn quadrics_through_twisted_cubic() -> [QuadricForm; 3] {
    net_polys().map(|p| QuadricForm::from_poly(&p).expect("quadratic"))
}

/// Components of `v3(t0, t1) = (t0^3, t0^2 t1, t0 t1^2, t1^3)`.
pub fn veronese_cubic() -> Vec<QPoly> {
    let v = ["t0", "t1"];
    ["t0^3", "t0^2*t1", "t0*t1^2", "t1^3"].iter().map(|s| QPoly::parse_with_vars(s, &v).expect("valid literal")).collect()
}

/// Affine point `v3(1, t)`.
pub fn cubic_point(t: &Rational) -> Vec<Rational> {
    vec![qi(1), t.clone(), t * t, t * t * t]
}

/// `[[x0, x1, x2], [x1, x2, x3]]` at a point.
pub fn minor_matrix(x: &[Rational]) -> Matrix<Rational> {
    Matrix::from_rows(vec![x[..3].to_vec(), x[1..].to_vec()])
}

/// `det(l0 Q0 + l1 Q1 + l2 Q2)` and its exact square root.
#[derive(Clone, Debug, Serialize)]
pub struct NetDeterminant {
    #[serde(serialize_with = "crate::surface::ser_display")]
    pub quartic: QPoly,
    #[serde(serialize_with = "crate::surface::ser_display")]
    pub conic_poly: QPoly,
    pub conic: ConicForm,
    pub is_square: bool,
}

pub fn net_matrix() -> Matrix<QPoly> {
    let lv = lambda_vars();
    let ls = QPoly::gens(&lv);
    let qs = quadrics_through_twisted_cubic();
    Matrix::from_fn(4, 4, |i, j| {
        let mut acc = QPoly::zero(lv.clone());
        for (l, qf) in ls.iter().zip(&qs) {
            acc = &acc + &l.scale(&qf.matrix[(i, j)]);
        }
        acc
    })
}

/// The determinant of the general member of the net is the square of a
/// conic; the square root's sign makes the `l1^2` coefficient positive.
pub fn net_determinant_conic() -> Result<NetDeterminant> {
    let lv = lambda_vars();
    let quartic = net_matrix().determinant()?.with_vars(&lv)?;
    let mut root = quartic.sqrt_exact().ok_or_else(|| Error::Structural("net determinant is not a square".into()))?;
    if root.coeff(&[0, 2, 0]) < qi(0) {
        root = -root;
    }
    let conic = QuadricForm::from_poly(&root)?;
    Ok(NetDeterminant { quartic, conic_poly: root, conic, is_square: true })
}

/// The member of the net singular at `v3(1, t)`, with its vertex.
#[derive(Clone, Debug, Serialize)]
pub struct ConeMember {
    #[serde(serialize_with = "crate::surface::ser_rationals")]
    pub lambda: Vec<Rational>,
    pub rank: usize,
    #[serde(serialize_with = "crate::surface::ser_rationals")]
    pub vertex: Vec<Rational>,
    pub vertex_on_cubic: bool,
}

/// Solves `sum l_i grad Q_i (v3(1, t)) = 0` inside the net.
pub fn cone_at(t: &Rational) -> Result<ConeMember> {
    let x = cubic_point(t);
    let qs = quadrics_through_twisted_cubic();
    // columns: gradients of Q_i at x
    let grads: Vec<Vec<Rational>> = qs.iter().map(|qf| qf.matrix.mul_vec(&x)).collect();
    let sys = Matrix::from_fn(4, 3, |r, c| grads[c][r].clone());
    let ns = sys.nullspace();
    if ns.len() != 1 {
        return Err(Error::Structural(format!("expected a unique cone, found {} solutions", ns.len())));
    }
    let lambda = ns[0].clone();
    let m = Matrix::from_fn(4, 4, |i, j| {
        lambda.iter().zip(&qs).fold(qi(0), |acc, (l, qf)| acc + l * &qf.matrix[(i, j)])
    });
    let kernel = m.nullspace();
    let vertex = kernel.first().cloned().unwrap_or_default();
    let vertex_on_cubic = kernel.len() == 1
        && Matrix::from_rows(vec![vertex.clone(), x.clone()]).rank() == 1
        && qs.iter().all(|qf| qf.eval(&vertex) == qi(0));
    Ok(ConeMember { lambda, rank: m.rank(), vertex, vertex_on_cubic })
}

/// Point of the conic of cones: the cone with vertex `v3(1, t)` is `(1, t, t^2)`.
pub fn cone_conic_point(t: &Rational) -> Vec<Rational> {
    vec![qi(1), t.clone(), t * t]
}

/// `l1^2 - l0 l2` up to scale, the conic of cones.
pub fn cone_conic() -> ConicForm {
    QuadricForm::new(Matrix::from_rows(vec![
        vec![qi(0), qi(0), q(-1, 2)],
        vec![qi(0), qi(1), qi(0)],
        vec![q(-1, 2), qi(0), qi(0)],
    ]))
    .expect("symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn net_vanishes_on_cubic() {
        let v = veronese_cubic();
        for p in net_polys() {
            assert!(p.compose(&v).unwrap().is_zero());
        }
        let q1 = &quadrics_through_twisted_cubic()[1];
        assert_eq!(q1.eval(&[qi(1), qi(1), qi(1), qi(1)]), qi(0));
        assert_eq!(q1.eval(&[qi(1), qi(0), qi(0), qi(1)]), qi(-1));
        assert_eq!(minor_matrix(&cubic_point(&q(3, 7))).rank(), 1);
    }

    #[test]
    fn determinant_is_square_of_cone_conic() {
        let nd = net_determinant_conic().unwrap();
        assert_eq!(nd.conic_poly.to_string(), "1/4*l1^2 - 1/4*l0*l2");
        assert_eq!(nd.quartic.eval(&[qi(1), qi(0), qi(0)]), qi(0));
        assert_eq!(nd.quartic.eval(&[qi(0), qi(1), qi(0)]), q(1, 16));
        assert_eq!(QuadricForm::from_poly(&nd.conic_poly).unwrap().to_poly(&lambda_vars()), nd.conic_poly);
    }

    #[test]
    fn cones_have_vertex_on_cubic() {
        for t in [qi(0), qi(1), qi(-2), q(1, 3), q(-5, 4)] {
            let c = cone_at(&t).unwrap();
            assert_eq!(c.rank, 3);
            assert!(c.vertex_on_cubic);
            let l = &c.lambda;
            // proportional to (1, t, t^2)
            assert_eq!(Matrix::from_rows(vec![l.clone(), cone_conic_point(&t)]).rank(), 1);
            assert_eq!(cone_conic().eval(l), qi(0));
        }
    }
}
