//! Sylvester resultants and discriminants.

use crate::error::{Error, Result};
use crate::kernel::matrix::Matrix;
use crate::kernel::mpoly::MPoly;
use crate::scalar::{Field, Ring};

/// Sylvester matrix of `p` and `q` in `var`: `deg q` shifted rows of `p`'s
/// coefficients (highest degree first) on top, then `deg p` rows of `q`'s.
pub fn sylvester_matrix<C: Ring>(p: &MPoly<C>, q: &MPoly<C>, var: &str) -> Result<Matrix<MPoly<C>>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (p, q) = if p.vars() == q.vars() { (p.clone(), q.clone()) } else { MPoly::unify(p, q) };
    let pc = p.coefficients_in(var)?;
    let qc = q.coefficients_in(var)?;
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    if m == 0 {
        return Err(Error::ConstantInVariable(var.to_string()));
    }
    if n == 0 {
        return Err(Error::ConstantInVariable(var.to_string()));
    }
    let vars = p.vars().to_vec();
    let size = m + n;
    let mut s = Matrix::from_fn(size, size, |_, _| MPoly::zero(vars.clone()));
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            s[(r, r + k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            s[(n + r, r + k)] = c.clone();
        }
    }
    Ok(s)
}

/// `Res_var(p, q)` as the determinant of [`sylvester_matrix`], with `var`
/// removed from the variable list.
pub fn resultant<C: Ring>(p: &MPoly<C>, q: &MPoly<C>, var: &str) -> Result<MPoly<C>> {
    let s = sylvester_matrix(p, q, var)?;
    let vars = s[(0, 0)].vars().to_vec();
    let det = s.determinant()?.with_vars(&vars)?;
    det.drop_var(var)
}

/// `Disc_var(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)` with `d = deg_var f`.
pub fn discriminant<C: Field>(f: &MPoly<C>, var: &str) -> Result<MPoly<C>> {
    let d = f.degree_in(var)?;
    let fp = f.derivative(var)?;
    if d < 2 {
        return Ok(MPoly::one(remove(f.vars(), var)));
    }
    let res = resultant(f, &fp, var)?;
    let lc = f.coefficients_in(var)?.pop().expect("nonzero").drop_var(var)?;
    let mut disc = res.div_exact(&lc)?.with_vars(&remove(f.vars(), var))?;
    if (d * (d - 1) / 2) % 2 == 1 {
        disc = -disc;
    }
    Ok(disc)
}

fn remove(vars: &[String], var: &str) -> Vec<String> {
    vars.iter().filter(|v| *v != var).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QPoly;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn substitution_examples() {
        let (a, b) = MPoly::unify(&p("y^2 - x"), &p("y + 1"));
        let r2 = resultant(&a, &b, "y").unwrap();
        assert_eq!(r2, QPoly::parse_with_vars("1 - x", &["x"]).unwrap());
        let ab = ["a", "b", "y"];
        let r = resultant(
            &QPoly::parse_with_vars("y - a", &ab).unwrap(),
            &QPoly::parse_with_vars("y - b", &ab).unwrap(),
            "y",
        )
        .unwrap();
        assert_eq!(r, QPoly::parse_with_vars("a - b", &["a", "b"]).unwrap());
    }

    #[test]
    fn zero_input_errors() {
        let z = QPoly::zero(vec!["y".into()]);
        assert!(matches!(resultant(&z, &p("y"), "y"), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn quadratic_discriminant() {
        let f = QPoly::parse_with_vars("a*y^2 + b*y + c", &["a", "b", "c", "y"]).unwrap();
        let d = discriminant(&f, "y").unwrap();
        assert_eq!(d, QPoly::parse_with_vars("b^2 - 4*a*c", &["a", "b", "c"]).unwrap());
    }

    #[test]
    fn biquadratic_discriminant() {
        let f = QPoly::parse_with_vars("y^4 + A*y^2 + B", &["A", "B", "y"]).unwrap();
        let d = discriminant(&f, "y").unwrap();
        let expect = QPoly::parse_with_vars("16*B*(A^2 - 4*B)^2", &["A", "B"]).unwrap();
        assert_eq!(d, expect);
    }
}
