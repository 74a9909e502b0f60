//! Named end-to-end checks, grouped into numbered criteria.

use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bidouble::{discriminant_norm, find_cusps, normalize_delta, random_rational, scaling_identity_residual, CoverData, Cyclotomic3};
use crate::braid::{
    braid_equal, monodromy_factorization_with, three_cuspidal_quartic_arcs, three_cuspidal_quartic_factors, BraidWord, Factorization,
    MonodromyConfig,
};
use crate::error::Result;
use crate::groups::{
    abelianization, add_projective_relation, enumerate_homs_to_sym, group_order, perm::product, van_kampen, FreeWord, HomConstraints, Perm,
};
use crate::kernel::Matrix;
use crate::quartic::{
    classify_real_fiber_exact, dual_parametrization, implicitize, substitute_param, theta_residuals, vanishing_order, disc_y, FiberPattern,
    ParamCurve, PlaneCurve,
};
use crate::scalar::{q, qi};
use crate::surface::{
    developable_lambda, developable_map_checks, gauss_rank_at, gradient_on_cuspidal_curve, net_determinant_conic, pinch_discriminant,
    surface_point, unique_quartic_check,
};
use crate::{QPoly, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: Value) -> Self {
        Check { name: name.into(), pass, witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Wall time; left out of serialized output to keep it deterministic.
    #[serde(skip)]
    pub elapsed: Duration,
}

fn report(id: u32, title: &str, start: Instant, limit: Option<f64>, mut checks: Vec<Check>) -> CriterionReport {
    let elapsed = start.elapsed();
    if let Some(l) = limit {
        checks.push(Check::new(format!("runtime below {l} s"), elapsed.as_secs_f64() < l, json!({ "limit_s": l })));
    }
    CriterionReport { id, title: title.to_string(), pass: checks.iter().all(|c| c.pass), checks, elapsed }
}

fn failed(id: u32, title: &str, start: Instant, err: crate::Error) -> CriterionReport {
    report(id, title, start, None, vec![Check::new("computation", false, json!({ "error": err.to_string() }))])
}

fn run(id: u32, title: &str, limit: Option<f64>, f: impl FnOnce() -> Result<Vec<Check>>) -> CriterionReport {
    let start = Instant::now();
    match f() {
        Ok(checks) => report(id, title, start, limit, checks),
        Err(e) => failed(id, title, start, e),
    }
}

/// `-256 (-u^2 v^2 - (9/8) u v a^2 b^2 + b^2 v^3 + a^2 u^3 + (27/256) a^4 b^4)` in `a, b, u, v`.
pub fn discriminant_closed_form() -> QPoly {
    QPoly::parse_with_vars("-256*(-u^2*v^2 - 9/8*u*v*a^2*b^2 + b^2*v^3 + a^2*u^3 + 27/256*a^4*b^4)", &["a", "b", "u", "v"])
        .expect("closed form parses")
}

/// Norm of the different against the closed form of the branch curve.
pub fn discriminant_identity() -> CriterionReport {
    run(1, "discriminant identity", Some(1.0), || {
        let n = discriminant_norm(&CoverData::symbolic())?;
        let closed = discriminant_closed_form();
        let residual = n.delta.try_sub(&closed)?;
        Ok(vec![
            Check::new("256 det(M_zw - ab/4 I) equals closed form", residual.is_zero(), json!({ "delta": n.delta.to_string() })),
            Check::new("P homogeneous of degree 4", n.p.is_homogeneous() && n.p.total_degree() == Some(4), json!({ "P": n.p.to_string() })),
        ])
    })
}

pub fn scaling_identity() -> CriterionReport {
    run(2, "scaling identity", Some(1.0), || {
        let r = scaling_identity_residual()?;
        Ok(vec![Check::new("P(l^4 u0, l^2 v0, 1, l^6) - l^12 delta(u0, v0) = 0", r.is_zero(), json!({ "residual": r.to_string() }))])
    })
}

pub fn cusp_locations() -> CriterionReport {
    run(3, "cusp locations", None, || {
        let cusps = find_cusps(&normalize_delta(&qi(1)))?;
        let three_quarters = Cyclotomic3::rational(q(3, 4));
        let mut checks = vec![Check::new("exactly three singular points", cusps.len() == 3, json!({ "count": cusps.len() }))];
        for c in &cusps {
            let z = Cyclotomic3::zeta_pow(c.zeta);
            let exact = c.v == three_quarters.clone() * z.clone() && c.u == three_quarters.clone() * z.clone() * z;
            let max_res = c.float_residuals.iter().cloned().fold(0.0, f64::max);
            checks.push(Check::new(
                format!("cusp {}: ((3/4) zeta^{}, (3/4) zeta^{})", c.zeta, (2 * c.zeta) % 3, c.zeta),
                exact && max_res < 1e-12,
                json!({ "u": c.u.to_string(), "v": c.v.to_string(), "max_residual": max_res }),
            ));
        }
        Ok(checks)
    })
}

pub fn curve_duality() -> CriterionReport {
    run(4, "curve duality", None, || {
        let c = PlaneCurve::three_cuspidal_quartic();
        let d = PlaneCurve::nodal_cubic().homogenize()?;
        let dual = dual_parametrization(&ParamCurve::nodal_cubic(), &d)?;
        let imp = implicitize(&dual)?;
        let lc_ratio = scalar_ratio(&imp.equation, &c.equation);
        let back = dual_parametrization(&ParamCurve::three_cuspidal_quartic(), &c.homogenize()?)?;
        let closure = substitute_param(&d, &back)?;
        Ok(vec![
            Check::new(
                "implicit equation of the dual of D is a positive multiple of C",
                lc_ratio.as_ref().is_some_and(|r| r.is_positive()),
                json!({ "implicit": imp.equation.to_string(), "ratio": lc_ratio.map(|r| r.to_string()) }),
            ),
            Check::new("gradient parametrization of C lies on D", closure.is_zero(), json!({ "residual": closure.to_string() })),
        ])
    })
}

/// `r` with `a = r b`, if it exists.
fn scalar_ratio(a: &QPoly, b: &QPoly) -> Option<Rational> {
    let (e, c) = b.leading_term()?;
    let r = a.coeff(e) / c;
    (a.try_sub(&b.scale(&r)).ok()?.is_zero()).then_some(r)
}

pub fn real_fiber_table() -> CriterionReport {
    run(5, "real fiber table", None, || {
        let c = PlaneCurve::three_cuspidal_quartic();
        let cases = [
            (q(1, 2), FiberPattern::FourImaginary),
            (q(-1, 2), FiberPattern::TwoRealTwoImaginary),
            (q(-21, 20), FiberPattern::FourReal),
            (q(-9, 8), FiberPattern::TwoDoubleReal),
            (q(-6, 5), FiberPattern::ComplexQuadruple),
        ];
        let mut checks = Vec::new();
        for (x, want) in cases {
            let f = classify_real_fiber_exact(&c, &x)?;
            let mut pass = f.pattern == want;
            let mut w = json!({ "x": x.to_string(), "pattern": format!("{:?}", f.pattern) });
            if want == FiberPattern::TwoDoubleReal {
                let target = 3.0 * 3f64.sqrt() / 8.0;
                let doubles: Vec<f64> = f.roots.iter().filter(|r| r.multiplicity == 2).map(|r| r.value.re).collect();
                let ok = doubles.len() == 2 && doubles.iter().all(|d| (d.abs() - target).abs() < 1e-10) && doubles[0] * doubles[1] < 0.0;
                pass &= ok;
                w["double_roots"] = json!(doubles);
            }
            checks.push(Check::new(format!("fiber over x = {x}"), pass, w));
        }
        Ok(checks)
    })
}

pub fn theta_identities() -> CriterionReport {
    run(6, "theta identities", None, || {
        let (r1, r2) = theta_residuals()?;
        let disc = disc_y(&PlaneCurve::three_cuspidal_quartic())?;
        let orders: Vec<u32> = [qi(0), qi(-1), q(-9, 8)].iter().map(|r| vanishing_order(&disc, r)).collect();
        Ok(vec![
            Check::new("2 Theta' = 3 (8x + 9)^2", r1.is_zero(), json!({ "residual": r1.to_string() })),
            Check::new("Theta = 32 (x + 9/8)^3", r2.is_zero(), json!({ "residual": r2.to_string() })),
            Check::new("Disc_y orders at 0, -1, -9/8 are 3, 1, 6", orders == [3, 1, 6], json!({ "orders": orders })),
        ])
    })
}

/// Factorization of the three-cuspidal quartic with the default loops.
pub fn compute_factorization() -> Result<Factorization> {
    monodromy_factorization_with(&PlaneCurve::three_cuspidal_quartic(), &MonodromyConfig::default())
}

/// Structural checks on a computed factorization.
pub fn monodromy_checks(f: &Factorization) -> Vec<Check> {
    let sums = f.exponent_sums();
    let powers: Vec<Option<i32>> = f.factors.iter().map(|l| l.witness.as_ref().map(|w| w.power)).collect();
    let perms = f.permutations();
    let prod = product(4, &perms);
    let same_sign = sums.iter().all(|s| *s > 0) || sums.iter().all(|s| *s < 0);
    let expected_sums = sums == [3, 3, 1, 3] || sums == [-3, -3, -1, -3];
    vec![
        Check::new("four factors", f.factors.len() == 4, json!({ "count": f.factors.len() })),
        Check::new("exponent sums (3, 3, 1, 3) up to global sign", expected_sums, json!({ "exponent_sums": sums })),
        Check::new(
            "each factor conjugate to sigma_1^k with |k| in {1, 3}",
            powers.iter().zip(&sums).all(|(p, s)| p.is_some_and(|k| [1, 3].contains(&k.abs()) && k as i64 == *s)),
            json!({
                "powers": powers,
                "conjugators": f.factors.iter().map(|l| l.witness.as_ref().map(|w| w.conjugator.letters().to_vec())).collect::<Vec<_>>(),
            }),
        ),
        Check::new(
            "permutations are transpositions",
            perms.iter().all(Perm::is_transposition),
            json!({ "permutations": perms.iter().map(|p| p.to_string()).collect::<Vec<_>>() }),
        ),
        Check::new("ordered product is a double transposition", prod.cycle_type() == [2, 2], json!({ "product": prod.to_string() })),
        Check::new("signs consistent", same_sign, json!({ "exponent_sums": sums })),
    ]
}

pub fn braid_monodromy() -> CriterionReport {
    run(7, "braid monodromy", Some(30.0), || {
        let f = compute_factorization()?;
        let mut checks = monodromy_checks(&f);
        let critical: Vec<f64> = f.factors.iter().map(|l| l.critical_value.value.re).collect();
        let order_ok = critical.len() == 4
            && (critical[0] + 1.1315).abs() < 1e-3
            && (critical[1] + 1.1185).abs() < 1e-3
            && (critical[2] + 1.0).abs() < 1e-3
            && critical[3].abs() < 1e-3;
        checks.push(Check::new(
            "counterclockwise order: two values near -9/8, then -1, then 0",
            order_ok,
            json!({ "critical_values": critical }),
        ));
        let fixture = three_cuspidal_quartic_factors();
        let eq: Vec<bool> = f.factors.iter().zip(&fixture).map(|(l, b)| braid_equal(&l.braid, b)).collect();
        checks.push(Check::new(
            "factors agree with the reference arcs",
            eq.len() == 4 && eq.iter().all(|x| *x),
            json!({ "labels": f.labels, "factors": f.braids().iter().map(|b| b.letters().to_vec()).collect::<Vec<_>>() }),
        ));
        Ok(checks)
    })
}

fn tangency_half_twist() -> Result<BraidWord> {
    let (arc, k) = three_cuspidal_quartic_arcs()[2].clone();
    Ok(crate::braid::halftwist_around_arc(&arc, 4)?.pow(k))
}

pub fn sigma_action() -> CriterionReport {
    run(8, "tangency half-twist action", None, || {
        let t = tangency_half_twist()?;
        let names: Vec<String> = ["a1", "a2", "b2", "b1"].iter().map(|s| s.to_string()).collect();
        let expected: [&[i32]; 4] = [&[1, 3, 4, -3, -1], &[1, 3, -4, -3, 2, 3, 4, -3, -1], &[3], &[-3, 1, 3]];
        let images = t.artin_images();
        Ok(images
            .iter()
            .zip(expected)
            .zip(&names)
            .map(|((img, want), name)| {
                Check::new(
                    format!("{name} -> {}", FreeWord::new(want.to_vec()).format(&names)),
                    img.letters == want && img.is_reduced(),
                    json!({ "image": img.format(&names) }),
                )
            })
            .collect())
    })
}

/// Abelianization and projective order checks for a van Kampen presentation.
pub fn fingerprint_checks(label: &str, factors: &[BraidWord]) -> Result<Vec<Check>> {
    let p = van_kampen(factors, 4)?;
    let ab = abelianization(&p);
    let proj = add_projective_relation(&p)?;
    let ab_proj = abelianization(&proj);
    let order = group_order(&proj, 10_000);
    Ok(vec![
        Check::new(format!("{label}: affine abelianization Z"), ab == [0], json!({ "invariants": ab })),
        Check::new(format!("{label}: projective abelianization Z/4"), ab_proj == [4], json!({ "invariants": ab_proj })),
        Check::new(format!("{label}: projective order 12"), order == Some(12), json!({ "order": order, "max_cosets": 10_000 })),
    ])
}

pub fn group_fingerprints() -> CriterionReport {
    run(9, "group fingerprints", None, || {
        let mut checks = fingerprint_checks("reference factors", &three_cuspidal_quartic_factors())?;
        let f = compute_factorization()?;
        checks.extend(fingerprint_checks("computed factors", &f.braids())?);
        Ok(checks)
    })
}

pub fn s4_uniqueness() -> CriterionReport {
    run(10, "unique transitive transposition representation", Some(1.0), || {
        let p = van_kampen(&three_cuspidal_quartic_factors(), 4)?;
        let e = enumerate_homs_to_sym(&p, 4, HomConstraints { transpositions: true, transitive: true });
        let t = |i, j| Perm::transposition(4, i, j);
        let expected = [t(1, 2), t(2, 3), t(2, 4), t(1, 4)];
        Ok(vec![
            Check::new("1296 candidate tuples", e.candidates == 1296, json!({ "candidates": e.candidates, "satisfying": e.satisfying })),
            Check::new("exactly one conjugacy class", e.classes.len() == 1, json!({ "classes": e.classes.len() })),
            Check::new(
                "class contains (1,2), (2,3), (2,4), (1,4)",
                e.classes.first().is_some_and(|c| c.contains(&expected)),
                json!({ "representative": e.classes.first().map(|c| c.images.iter().map(|p| p.to_string()).collect::<Vec<_>>()) }),
            ),
        ])
    })
}

fn random_symmetric(rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let mut m = Matrix::zeros(3, 3);
    for i in 0..3 {
        for j in i..3 {
            let x = random_rational(rng, 9);
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    m
}

pub fn surface_suite(seed: u64) -> CriterionReport {
    run(11, "surface suite", Some(60.0), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checks = Vec::new();
        let nd = net_determinant_conic()?;
        checks.push(Check::new(
            "net determinant is a perfect square",
            nd.is_square && (&nd.conic_poly * &nd.conic_poly) == nd.quartic,
            json!({ "conic": nd.conic_poly.to_string() }),
        ));
        let grads = gradient_on_cuspidal_curve()?;
        checks.push(Check::new(
            "gradient of P vanishes on the cuspidal cubic",
            grads.iter().all(|(_, r)| r.is_zero()),
            json!(grads.iter().map(|(n, r)| (n.clone(), r.to_string())).collect::<std::collections::BTreeMap<_, _>>()),
        ));
        let dm = developable_map_checks()?;
        checks.push(Check::new(
            "DG minors vanish exactly on w + 2s = 0",
            dm.minors_vanish_on_line && dm.minors_nonzero_off_line && dm.image_on_surface && dm.image_is_cuspidal_cubic,
            json!({ "minors": dm.minors.iter().map(|m| m.to_string()).collect::<Vec<_>>() }),
        ));
        let sq = Matrix::from_rows(vec![vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(0), qi(0)], vec![qi(0), qi(0), qi(0)]]);
        let d_dev = pinch_discriminant(&developable_lambda())?;
        let d_sq = pinch_discriminant(&sq)?;
        checks.push(Check::new(
            "pinch discriminant vanishes for the developable and for squares",
            d_dev.is_zero() && d_sq.is_zero(),
            json!({ "developable": d_dev.to_string(), "square": d_sq.to_string() }),
        ));
        let mut simple = Vec::new();
        for _ in 0..5 {
            let l = random_symmetric(&mut rng);
            let d = pinch_discriminant(&l)?;
            let ok = d.degree() == Some(4) && d.gcd(&d.derivative()).degree() == Some(0);
            simple.push(ok);
        }
        checks.push(Check::new("random surfaces have 4 simple pinch points", simple.iter().all(|x| *x), json!({ "samples": simple })));
        let fit = unique_quartic_check(&[qi(0), qi(1), qi(-1), qi(2), q(1, 2)])?;
        checks.push(Check::new(
            "conic through five cone points is unique",
            fit.dimension == 1 && fit.spanned_by_cone_conic,
            json!({ "dimension": fit.dimension }),
        ));
        let p = crate::bidouble::p_closed_form();
        let mut ranks = Vec::new();
        while ranks.len() < 5 {
            let (s, w) = (random_rational(&mut rng, 9), random_rational(&mut rng, 9));
            if (&w + &s * qi(2)).is_zero() {
                continue;
            }
            let pt = surface_point(&s, &w);
            ranks.push(json!({ "s": s.to_string(), "w": w.to_string(), "rank": gauss_rank_at(&p, &pt)? }));
        }
        checks.push(Check::new("Gauss map rank 1 at smooth points of P", ranks.iter().all(|r| r["rank"] == 1), json!(ranks)));
        Ok(checks)
    })
}

/// Criteria 1 to 11.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        discriminant_identity(),
        scaling_identity(),
        cusp_locations(),
        curve_duality(),
        real_fiber_table(),
        theta_identities(),
        braid_monodromy(),
        sigma_action(),
        group_fingerprints(),
        s4_uniqueness(),
        surface_suite(seed),
    ]
}

/// Rational as `f64` for reporting.
pub fn approx(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_criteria_pass() {
        for r in run_all(7) {
            for c in &r.checks {
                assert!(c.pass, "criterion {} check '{}' failed: {}", r.id, c.name, c.witness);
            }
        }
    }
}
