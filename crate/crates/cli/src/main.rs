//! `bidouble`: command-line access to the discriminant, curve, braid, group
//! and surface computations.

mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use bidouble_core::bidouble::{discriminant_norm, find_cusps, normalize_delta, CoverData};
use bidouble_core::braid::{three_cuspidal_quartic_factors, BraidWord, MonodromyConfig};
use bidouble_core::groups::{
    abelianization, add_projective_relation, enumerate_homs_to_sym, tietze_simplify, todd_coxeter, van_kampen, HomConstraints, Perm,
    Presentation, TableStatus,
};
use bidouble_core::quartic::{classify_real_fiber_exact, critical_values, disc_y, fiber_coeffs, PlaneCurve};
use bidouble_core::scalar::parse_rational;
use bidouble_core::verify::{self, Check};
use bidouble_core::{Complex, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use report::RunReport;

#[derive(Parser)]
#[command(name = "bidouble", version, about = "Branch curves of deformed bidouble covers and their braid monodromy")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    out: Format,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Factors built from the reference arcs.
    Fixture,
    /// Factors computed by numerical monodromy.
    Computed,
}

#[derive(Args)]
struct GroupInput {
    /// Presentation as JSON `{"generators": [...], "relators": [[...]]}`.
    #[arg(long, conflicts_with = "source")]
    presentation: Option<PathBuf>,
    /// Braid factors used for the van Kampen presentation.
    #[arg(long, value_enum, default_value_t = Source::Fixture)]
    source: Source,
    /// Add the relation a1 a2 b2 b1 = 1 of the projective complement.
    #[arg(long)]
    projective: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Norm of the different of the deformed bidouble cover.
    Discriminant {
        /// Specialize `a` (requires `--b`).
        #[arg(long, value_parser = rational, requires = "b")]
        a: Option<Rational>,
        #[arg(long, value_parser = rational, requires = "a")]
        b: Option<Rational>,
    },
    /// Singular points of the normalized branch curve.
    Cusps {
        /// Normalizing constant.
        #[arg(long, value_parser = rational, default_value = "1")]
        c: Rational,
    },
    /// Duality and discriminant identities of the nodal cubic and its dual quartic.
    CurveChecks,
    /// Real fiber of the three-cuspidal quartic over `x`.
    Fiber {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Rational,
    },
    /// Critical values of the sheared projection.
    CriticalValues {
        #[arg(long, value_parser = rational, default_value = "1/100")]
        shear: Rational,
    },
    /// Braid monodromy factorization of the three-cuspidal quartic.
    Monodromy {
        #[arg(long, value_parser = rational, default_value = "1/100")]
        shear: Rational,
    },
    /// Van Kampen presentation of the complement.
    Vankampen {
        #[arg(long, value_enum, default_value_t = Source::Fixture)]
        source: Source,
        #[arg(long)]
        projective: bool,
        /// Budget of Tietze eliminations; 0 skips simplification.
        #[arg(long, default_value_t = 0)]
        tietze: usize,
    },
    /// Homomorphisms into a symmetric group, up to conjugation.
    EnumerateHoms {
        #[command(flatten)]
        input: GroupInput,
        /// Target group `sN`.
        #[arg(long, value_parser = sym_degree, default_value = "s4")]
        target: usize,
        /// Generators map to transpositions.
        #[arg(long)]
        transpositions: bool,
        /// Image acts transitively.
        #[arg(long)]
        transitive: bool,
    },
    /// Group order by Todd-Coxeter coset enumeration.
    CosetOrder {
        #[command(flatten)]
        input: GroupInput,
        #[arg(long, default_value_t = 10_000)]
        max_cosets: usize,
    },
    /// Net of quadrics, pinch points and the tangential developable.
    SurfaceChecks,
    /// Every criterion, one line each.
    ReproduceAll,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

fn sym_degree(s: &str) -> Result<usize, String> {
    let n: usize = s
        .strip_prefix(['s', 'S'])
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| format!("target must look like s4, got {s}"))?;
    if (1..=7).contains(&n) {
        Ok(n)
    } else {
        Err(format!("degree {n} outside 1..=7"))
    }
}

enum Output {
    Report(RunReport),
    Svg(String, bool),
}

type Outcome = Result<Output, bidouble_core::Error>;

fn factors_for(source: Source) -> Result<Vec<BraidWord>, bidouble_core::Error> {
    match source {
        Source::Fixture => Ok(three_cuspidal_quartic_factors()),
        Source::Computed => Ok(verify::compute_factorization()?.braids()),
    }
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Fixture => "fixture",
        Source::Computed => "computed",
    }
}

fn load_group(input: &GroupInput) -> Result<(Presentation, Value), bidouble_core::Error> {
    let (p, from) = match &input.presentation {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| bidouble_core::Error::Parse(format!("{}: {e}", path.display())))?;
            (Presentation::from_json(&text)?, json!(path.display().to_string()))
        }
        None => (labeled_van_kampen(&factors_for(input.source)?)?, json!(source_name(input.source))),
    };
    let p = if input.projective { add_projective_relation(&p)? } else { p };
    Ok((p, json!({ "presentation": from, "projective": input.projective })))
}

/// Van Kampen presentation with generators named after the strands at the basepoint.
fn labeled_van_kampen(factors: &[BraidWord]) -> Result<Presentation, bidouble_core::Error> {
    let mut p = van_kampen(factors, 4)?;
    p.generators = ["a1", "a2", "b2", "b1"].iter().map(|s| s.to_string()).collect();
    Ok(p)
}

fn presentation_json(p: &Presentation) -> Value {
    json!({
        "generators": p.generators,
        "relators": p.relators.iter().map(|r| r.format(&p.generators)).collect::<Vec<_>>(),
    })
}

fn c(z: Complex<f64>) -> Value {
    json!([z.re, z.im])
}

fn run(cmd: &Command, common: &Common) -> Outcome {
    let svg = common.out == Format::Svg;
    let unsupported = |name: &str| -> Outcome {
        Err(bidouble_core::Error::Precondition(format!("`{name}` has no svg output")))
    };
    let report = match cmd {
        Command::Discriminant { a, b } => {
            if svg {
                return unsupported("discriminant");
            }
            let closed = verify::discriminant_closed_form();
            let (cover, closed, inputs) = match (a, b) {
                (Some(a), Some(b)) => {
                    let specialized = closed.specialize("a", a)?.specialize("b", b)?;
                    (CoverData::with_constants(a.clone(), b.clone()), specialized, json!({ "a": a.to_string(), "b": b.to_string() }))
                }
                _ => (CoverData::symbolic(), closed, json!({ "a": "symbolic", "b": "symbolic" })),
            };
            let n = discriminant_norm(&cover)?;
            let residual = n.delta.try_sub(&closed)?;
            RunReport::new(
                "discriminant",
                inputs,
                json!({ "delta": n.delta.to_string(), "P": n.p.to_string() }),
                vec![Check::new("delta equals the closed form", residual.is_zero(), json!({ "residual": residual.to_string() }))],
            )
        }
        Command::Cusps { c: k } => {
            let cusps = find_cusps(&normalize_delta(k))?;
            if svg {
                let mut plot = svg::Plot::new("cusps: u (filled) in the complex plane");
                for (i, p) in cusps.iter().enumerate() {
                    plot.point(i, p.u_complex, format!("u{}", p.zeta));
                    plot.point(i, p.v_complex, format!("v{}", p.zeta));
                }
                return Ok(Output::Svg(plot.render(), true));
            }
            let max_res = cusps.iter().flat_map(|p| p.float_residuals).fold(0.0, f64::max);
            let mut checks = vec![
                Check::new("three singular points", cusps.len() == 3, json!({ "count": cusps.len() })),
                Check::new("residuals below 1e-12", max_res < 1e-12, json!({ "max_residual": max_res })),
            ];
            if k == &Rational::from_integer(1.into()) {
                checks = verify::cusp_locations().checks;
            }
            RunReport::new("cusps", json!({ "c": k.to_string() }), serde_json::to_value(&cusps).expect("serializable"), checks)
        }
        Command::CurveChecks => {
            if svg {
                return unsupported("curve-checks");
            }
            let reports = [verify::curve_duality(), verify::real_fiber_table(), verify::theta_identities()];
            let checks: Vec<Check> = reports.iter().flat_map(|r| r.checks.iter().cloned()).collect();
            RunReport::new("curve-checks", json!({}), json!({ "criteria": reports.iter().map(|r| &r.title).collect::<Vec<_>>() }), checks)
        }
        Command::Fiber { x } => {
            let curve = PlaneCurve::three_cuspidal_quartic();
            let f = classify_real_fiber_exact(&curve, x)?;
            if svg {
                let mut plot = svg::Plot::new(&format!("fiber over x = {x}"));
                for (i, r) in f.roots.iter().enumerate() {
                    plot.point(i, r.value, format!("m{}", r.multiplicity));
                }
                return Ok(Output::Svg(plot.render(), true));
            }
            let coeffs = fiber_coeffs(&curve, Complex::new(verify::approx(x), 0.0))?;
            let scale: f64 = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let residual = f
                .roots
                .iter()
                .map(|r| coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, c| acc * r.value + c).norm() / scale)
                .fold(0.0, f64::max);
            let count: usize = f.roots.iter().map(|r| r.multiplicity).sum();
            RunReport::new(
                "fiber",
                json!({ "x": x.to_string() }),
                serde_json::to_value(&f).expect("serializable"),
                vec![
                    Check::new("four roots with multiplicity", count == 4, json!({ "count": count })),
                    Check::new("relative residual below 1e-8", residual < 1e-8, json!({ "residual": residual })),
                ],
            )
        }
        Command::CriticalValues { shear } => {
            let curve = PlaneCurve::three_cuspidal_quartic();
            let cv = critical_values(&curve, shear)?;
            if svg {
                let mut plot = svg::Plot::new(&format!("critical values, shear {shear}"));
                for v in &cv {
                    plot.point(v.order as usize, v.value, format!("order {}", v.order));
                }
                return Ok(Output::Svg(plot.render(), true));
            }
            let deg = disc_y(&curve.sheared(shear)?)?.degree().unwrap_or(0);
            let total: u32 = cv.iter().map(|v| v.order).sum();
            RunReport::new(
                "critical-values",
                json!({ "shear": shear.to_string() }),
                serde_json::to_value(&cv).expect("serializable"),
                vec![Check::new("orders add up to the degree of Disc_y", total as usize == deg, json!({ "orders": total, "degree": deg }))],
            )
        }
        Command::Monodromy { shear } => {
            let cfg = MonodromyConfig { shear: shear.clone(), ..MonodromyConfig::default() };
            let f = bidouble_core::braid::monodromy_factorization_with(&PlaneCurve::three_cuspidal_quartic(), &cfg)?;
            if svg {
                let mut plot = svg::Plot::new("strand motion along each loop");
                for (k, legs) in f.paths.iter().enumerate() {
                    for leg in legs {
                        for s in leg {
                            plot.polyline(k, s.samples.iter().map(|p| p.1).collect());
                        }
                    }
                }
                return Ok(Output::Svg(plot.render(), true));
            }
            let checks = verify::monodromy_checks(&f);
            let mut results = serde_json::to_value(&f).expect("serializable");
            results["words"] = json!(f.braids().iter().map(|b| b.to_string()).collect::<Vec<_>>());
            RunReport::new(
                "monodromy",
                json!({ "shear": shear.to_string(), "basepoint": c(cfg.basepoint), "theta0": cfg.theta0 }),
                results,
                checks,
            )
        }
        Command::Vankampen { source, projective, tietze } => {
            if svg {
                return unsupported("vankampen");
            }
            let factors = factors_for(*source)?;
            let affine = labeled_van_kampen(&factors)?;
            let p = if *projective { add_projective_relation(&affine)? } else { affine };
            let mut results = json!({ "presentation": presentation_json(&p), "abelianization": abelianization(&p) });
            if *tietze > 0 {
                let t = tietze_simplify(&p, *tietze);
                results["simplified"] = json!({
                    "presentation": presentation_json(&t.presentation),
                    "eliminated": t.eliminated,
                    "budget_exhausted": t.budget_exhausted,
                });
            }
            RunReport::new(
                "vankampen",
                json!({ "source": source_name(*source), "projective": projective, "tietze": tietze }),
                results,
                verify::fingerprint_checks(source_name(*source), &factors)?,
            )
        }
        Command::EnumerateHoms { input, target, transpositions, transitive } => {
            if svg {
                return unsupported("enumerate-homs");
            }
            let (p, mut inputs) = load_group(input)?;
            inputs["target"] = json!(format!("s{target}"));
            inputs["transpositions"] = json!(transpositions);
            inputs["transitive"] = json!(transitive);
            let constraints = HomConstraints { transpositions: *transpositions, transitive: *transitive };
            let e = enumerate_homs_to_sym(&p, *target, constraints);
            let class_total: usize = e.classes.iter().map(|c| c.size).sum();
            let mut checks =
                vec![Check::new("class sizes add up to the satisfying tuples", class_total == e.satisfying, json!({ "sum": class_total }))];
            let default_question = input.presentation.is_none() && !input.projective && *target == 4 && *transpositions && *transitive;
            if default_question {
                let t = |i, j| Perm::transposition(4, i, j);
                let expected = [t(1, 2), t(2, 3), t(2, 4), t(1, 4)];
                checks.push(Check::new("exactly one class", e.classes.len() == 1, json!({ "classes": e.classes.len() })));
                checks.push(Check::new(
                    "class contains (1,2), (2,3), (2,4), (1,4)",
                    e.classes.first().is_some_and(|c| c.contains(&expected)),
                    json!({}),
                ));
            }
            RunReport::new("enumerate-homs", inputs, serde_json::to_value(&e).expect("serializable"), checks)
        }
        Command::CosetOrder { input, max_cosets } => {
            if svg {
                return unsupported("coset-order");
            }
            let (p, mut inputs) = load_group(input)?;
            inputs["max_cosets"] = json!(max_cosets);
            let (order, defined, holds) = match todd_coxeter(&p, *max_cosets) {
                Ok(t) if t.status == TableStatus::Complete => (Some(t.order()), Some(t.cosets_defined), t.relators_hold(&p)),
                Ok(t) => (None, Some(t.cosets_defined), false),
                Err(bidouble_core::Error::CosetOverflow(_)) => (None, None, false),
                Err(e) => return Err(e),
            };
            RunReport::new(
                "coset-order",
                inputs,
                json!({ "order": order, "cosets_defined": defined, "abelianization": abelianization(&p) }),
                vec![
                    Check::new("enumeration complete", order.is_some(), json!({ "max_cosets": max_cosets, "cosets_defined": defined })),
                    Check::new("relators act trivially on the cosets", holds, json!({})),
                ],
            )
        }
        Command::SurfaceChecks => {
            if svg {
                return unsupported("surface-checks");
            }
            let r = verify::surface_suite(common.seed);
            RunReport::new("surface-checks", json!({ "seed": common.seed }), json!({ "title": r.title }), r.checks)
        }
        Command::ReproduceAll => {
            if svg {
                return unsupported("reproduce-all");
            }
            let reports = verify::run_all(common.seed);
            let summary: Vec<Value> = reports.iter().map(|r| json!({ "id": r.id, "title": r.title, "pass": r.pass })).collect();
            let checks = reports
                .iter()
                .flat_map(|r| r.checks.iter().map(move |c| Check::new(format!("{}. {}: {}", r.id, r.title, c.name), c.pass, c.witness.clone())))
                .collect();
            RunReport::new("reproduce-all", json!({ "seed": common.seed }), json!({ "criteria": summary }), checks)
        }
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("BIDOUBLE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli.command, &cli.common) {
        Ok(Output::Svg(s, ok)) => {
            print!("{s}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Ok(Output::Report(r)) => {
            match cli.common.out {
                Format::Text => print!("{}", r.to_text()),
                _ => println!("{}", r.to_json()),
            }
            ExitCode::from(if r.pass() { 0 } else { 1 })
        }
        Err(bidouble_core::Error::Precondition(m)) if m.contains("svg") => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
