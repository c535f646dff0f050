use std::path::PathBuf;
use std::process::{Command, Output};

use hsleaf::exactnum::{QPoly, QSqrt2, Var};
use hsleaf::report::BuiltinBarriers;

fn hsleaf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsleaf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hsleaf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn paper_check_passes() {
    let o = hsleaf(&["paper-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("items passed"));
}

#[test]
fn paper_check_json_lists_items() {
    let o = hsleaf(&["paper-check", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let items = v["items"].as_array().unwrap();
    assert!(items.len() >= 20);
    assert_eq!(items.iter().filter(|i| i["status"] == "NOTE").count(), 1);
}

#[test]
fn corrupted_barrier_fails_paper_check() {
    let mut art = BuiltinBarriers::default();
    let t = art.g.pieces.last_mut().unwrap();
    let mut cs = t.numerator.coeffs().to_vec();
    cs[1] = QSqrt2::from_ratios(0, 1, 1, 4);
    t.numerator = QPoly::new(cs).with_var(Var::Tau);
    let path = scratch("corrupt.json");
    std::fs::write(&path, serde_json::to_string(&art).unwrap()).unwrap();
    let o = hsleaf(&["paper-check", "--barriers", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Q₃ golden"));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn indicial_reports_degrees() {
    let o = hsleaf(&["indicial", "4", "2", "0", "0"]);
    assert_eq!(stdout(&o).trim(), "mu = 0, degrees = {-2, -3}");
}

#[test]
fn indicial_rejects_zero_dimension() {
    assert_eq!(
        hsleaf(&["indicial", "0", "2", "0", "0"]).status.code(),
        Some(4)
    );
}

#[test]
fn fit_b_reports_estimate_and_interval() {
    let o = hsleaf(&["fit-b", "plus"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("b+ ≈ 0.24"), "{out}");
    assert!(out.contains("certified interval (0, 0.545]"), "{out}");
}

#[test]
fn export_then_verify_roundtrips() {
    let path = scratch("h.json");
    let o = hsleaf(&["export", "h", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = hsleaf(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified"));
}

#[test]
fn flipped_jump_is_rejected() {
    let path = scratch("g.json");
    assert_eq!(
        hsleaf(&["export", "g", "--out", path.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["pieces"][1]["numerator"][0]["a"] = "1/10".into();
    std::fs::write(&path, v.to_string()).unwrap();
    let o = hsleaf(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("jump check failed at s = 1"));
}

#[test]
fn malformed_certificate_is_a_parse_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{").unwrap();
    let o = hsleaf(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(
        hsleaf(&["verify", "/nonexistent/cert.json"]).status.code(),
        Some(4)
    );
}

#[test]
fn solve_writes_csv() {
    let path = scratch("minus.csv");
    let o = hsleaf(&[
        "solve",
        "minus_leaf",
        "--s-max",
        "100",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("s,w\n"));
    assert!(csv.lines().count() > 10);
}

#[test]
fn synth_with_bad_config_is_a_parse_error() {
    let path = scratch("cfg.json");
    std::fs::write(&path, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(
        hsleaf(&["synth", path.to_str().unwrap()]).status.code(),
        Some(4)
    );
}
