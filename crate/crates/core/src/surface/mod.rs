//! Quartic surfaces singular along the twisted cubic.

pub mod developable;
pub mod pinch;
pub mod quadrics;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::Matrix;
use crate::scalar::qi;
use crate::{QPoly, Rational};

pub use developable::{
    coordinate_identification, developable_map_checks, gauss_rank_at, gradient_on_cuspidal_curve, p_as_quadratic_in_net,
    p_in_cubic_coordinates, surface_point, veronese_model_check, DevelopableMapReport, VeroneseReport,
};
pub use pinch::{
    conormal_components, conormal_section, developable_lambda, pinch_discriminant, pinch_matrix_check, section_vanishes_simply_at,
    surface_from_lambda, sym2_coefficients, tangency_condition, tangency_pinch_ratio, tangency_polynomial, PinchMatrixCheck,
};
pub use quadrics::{
    cone_at, cone_conic, cone_conic_point, net_determinant_conic, quadrics_through_twisted_cubic, ConeMember, ConicForm,
    NetDeterminant, QuadricForm,
};

pub(crate) fn ser_display<S: serde::Serializer, T: std::fmt::Display>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_display_vec<S: serde::Serializer, T: std::fmt::Display>(x: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

pub(crate) fn ser_rationals<S: serde::Serializer>(x: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_display_vec(x, s)
}

pub(crate) fn ser_named<S: serde::Serializer>(x: &[(String, QPoly)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(x.iter().map(|(k, v)| (k.clone(), v.to_string())))
}

/// Conics through the cone points of the given parameters.
#[derive(Clone, Debug, Serialize)]
pub struct ConicFit {
    /// Dimension of the space of conics through the points.
    pub dimension: usize,
    pub conics: Vec<ConicForm>,
    /// The solution space is spanned by the conic of cones.
    pub spanned_by_cone_conic: bool,
}

/// Solves for conics through `(1, t, t^2)` at each parameter. Five distinct
/// parameters leave only the conic of cones.
pub fn unique_quartic_check(params: &[Rational]) -> Result<ConicFit> {
    for (i, a) in params.iter().enumerate() {
        if params[i + 1..].contains(a) {
            return Err(Error::Precondition(format!("repeated parameter {a}")));
        }
    }
    // monomials y0^2, y0 y1, y0 y2, y1^2, y1 y2, y2^2
    let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let rows: Vec<Vec<Rational>> = params
        .iter()
        .map(|t| {
            let y = cone_conic_point(t);
            pairs.iter().map(|&(i, j)| &y[i] * &y[j]).collect()
        })
        .collect();
    let ns = if rows.is_empty() {
        (0..6).map(|k| (0..6).map(|j| if j == k { qi(1) } else { qi(0) }).collect()).collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    let conics: Vec<ConicForm> = ns
        .iter()
        .map(|c| {
            let mut m = Matrix::zeros(3, 3);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if i == j {
                    m[(i, i)] = c[k].clone();
                } else {
                    m[(i, j)] = &c[k] / qi(2);
                    m[(j, i)] = &c[k] / qi(2);
                }
            }
            QuadricForm::new(m).expect("symmetric")
        })
        .collect();
    let reference = cone_conic().matrix;
    let spanned_by_cone_conic = conics.len() == 1 && {
        let flat = |m: &Matrix<Rational>| m.to_rows().concat();
        Matrix::from_rows(vec![flat(&conics[0].matrix), flat(&reference)]).rank() == 1
    };
    Ok(ConicFit { dimension: conics.len(), conics, spanned_by_cone_conic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn five_points_determine_the_conic() {
        let fit = unique_quartic_check(&[qi(0), qi(1), qi(-1), qi(2), q(1, 2)]).unwrap();
        assert_eq!(fit.dimension, 1);
        assert!(fit.spanned_by_cone_conic);
        assert_eq!(unique_quartic_check(&[qi(0), qi(1), qi(-1), qi(2)]).unwrap().dimension, 2);
        assert!(unique_quartic_check(&[qi(0), qi(1), qi(1), qi(2), qi(3)]).is_err());
    }
}
