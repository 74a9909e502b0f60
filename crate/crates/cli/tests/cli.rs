use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bidouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bidouble")).args(args).env("BIDOUBLE_THREADS", "2").output().expect("binary runs")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/v1")
}

/// Compare stdout with the stored fixture; `BIDOUBLE_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let out = bidouble(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("BIDOUBLE_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing fixture {}", path.display()));
    assert_eq!(String::from_utf8_lossy(&out.stdout), want, "output of {args:?} differs from {}", path.display());
}

fn json(args: &[&str]) -> Value {
    let out = bidouble(args);
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn golden_discriminant() {
    golden("discriminant", &["discriminant", "--out", "json"]);
}

#[test]
fn golden_cusps() {
    golden("cusps", &["cusps", "--out", "json"]);
}

#[test]
fn golden_curve_checks() {
    golden("curve-checks", &["curve-checks"]);
}

#[test]
fn golden_fiber() {
    golden("fiber-tangency", &["fiber", "--x", "-9/8"]);
}

#[test]
fn golden_critical_values() {
    golden("critical-values", &["critical-values", "--shear", "1/100"]);
}

#[test]
fn golden_monodromy() {
    golden("monodromy", &["monodromy", "--shear", "1/100", "--out", "json"]);
}

#[test]
fn golden_vankampen() {
    golden("vankampen-projective", &["vankampen", "--projective", "--tietze", "10"]);
}

#[test]
fn golden_enumerate_homs() {
    golden("enumerate-homs", &["enumerate-homs", "--target", "s4", "--transpositions", "--transitive"]);
}

#[test]
fn golden_coset_order() {
    golden("coset-order-projective", &["coset-order", "--projective"]);
}

#[test]
fn golden_surface_checks() {
    golden("surface-checks", &["surface-checks", "--seed", "1"]);
}

#[test]
fn golden_reproduce_all() {
    golden("reproduce-all", &["reproduce-all", "--seed", "1"]);
}

#[test]
fn cusps_include_the_real_point() {
    let v = json(&["cusps"]);
    let pts = v["results"].as_array().unwrap();
    assert_eq!(pts.len(), 3);
    assert!(pts.iter().any(|p| p["u"]["one"] == "3/4" && p["u"]["zeta"] == "0" && p["v"]["one"] == "3/4"));
    assert!(pts.iter().all(|p| p["float_residuals"].as_array().unwrap().iter().all(|r| r.as_f64().unwrap() < 1e-12)));
}

#[test]
fn monodromy_exponent_sums() {
    let v = json(&["monodromy", "--shear", "1/100", "--out", "json"]);
    let sums: Vec<i64> = v["results"]["factors"].as_array().unwrap().iter().map(|f| f["exponent_sum"].as_i64().unwrap()).collect();
    assert_eq!(sums, [3, 3, 1, 3]);
}

#[test]
fn single_conjugacy_class() {
    let v = json(&["enumerate-homs", "--target", "s4", "--transpositions", "--transitive"]);
    assert_eq!(v["results"]["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn determinism_across_thread_counts() {
    let one = Command::new(env!("CARGO_BIN_EXE_bidouble")).args(["reproduce-all"]).env("BIDOUBLE_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_bidouble")).args(["reproduce-all"]).env("BIDOUBLE_THREADS", "4").output().unwrap();
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(bidouble(&["cusps", "--nonsense"]).status.code(), Some(2));
    assert_eq!(bidouble(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(bidouble(&["enumerate-homs", "--target", "q4"]).status.code(), Some(2));
}

#[test]
fn svg_only_where_plots_exist() {
    let out = bidouble(&["fiber", "--x", "1/2", "--out", "svg"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("<svg"));
    assert_eq!(bidouble(&["vankampen", "--out", "svg"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_one_with_witness() {
    let out = bidouble(&["coset-order", "--projective", "--max-cosets", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(!failed.is_empty());
    assert_eq!(failed[0]["witness"]["max_cosets"], 5);
}

#[test]
fn presentation_from_file() {
    let dir = std::env::temp_dir().join(format!("bidouble-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.json");
    std::fs::write(&path, r#"{"generators":["x","y"],"relators":[[1,1],[2,2],[1,2,1,2,1,2]]}"#).unwrap();
    let v = json(&["coset-order", "--presentation", path.to_str().unwrap()]);
    assert_eq!(v["results"]["order"], 6);
    let v = json(&["enumerate-homs", "--presentation", path.to_str().unwrap(), "--target", "s3"]);
    assert_eq!(v["results"]["satisfying"], 10);
}
