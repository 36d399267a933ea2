use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syz-mirror"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn mirror_writes_report_figure_and_twin() {
    let dir = tempfile::tempdir().unwrap();
    let lifting = dir.path().join("h.json");
    fs::write(&lifting, r#"{"(0,0)": -1}"#).unwrap();
    let out = run(
        dir.path(),
        &["mirror", "--expr", "t + z1 + z2 + 1/(z1*z2)", "--param", "t=10", "--lifting", lifting.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&dir.path().join("mirror.json"));
    assert_eq!(r["calabi_yau"], serde_json::json!([0, 0, 1]));
    assert_eq!(r["seed"], serde_json::json!(0));
    assert!(fs::read_to_string(dir.path().join("mirror.svg")).unwrap().starts_with("<svg"));
    let twin = json(&dir.path().join("mirror.svg.json"));
    assert!(!twin["primitives"].as_array().unwrap().is_empty());
}

#[test]
fn non_smooth_mirror_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--format", "json", "mirror", "--expr", "1 + z1^2 + z2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&dir.path().join("mirror.json"))["smooth"], serde_json::json!(false));
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["mirror", "--expr", "1 + + z"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["base", "--mode", "2d", "--expr", "(z - 1)*(z + 1)"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["no-such-command"]).status.code(), Some(1));
}

#[test]
fn reports_are_byte_stable() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let out = run(d.path(), &["--resolution", "32", "base", "--mode", "3d", "--expr", "1 + z1 + z2"]);
        assert_eq!(out.status.code(), Some(0));
    }
    for name in ["base.json", "base.svg", "base.svg.json", "base.pgm"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn transform_pipelines() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--format", "json", "base", "--mode", "2d", "--expr", "(z - 2)*(z - 4)"]);
    assert_eq!(out.status.code(), Some(0));
    let section = dir.path().join("s2.json");
    fs::write(&section, r#"{"path": [[1, -1], [3.5, 1], [5, 1]], "cut": [2, 4]}"#).unwrap();
    let base = dir.path().join("base.json");
    let out = run(dir.path(), &["transform2d", "--section", section.to_str().unwrap(), "--base", base.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&dir.path().join("transform2d.json"));
    assert_eq!(r["invariants"]["degree"], serde_json::json!(1));
    assert_eq!(r["degree_equals_intersection"], serde_json::json!(true));

    let d3 = tempfile::tempdir().unwrap();
    let out = run(d3.path(), &["--format", "json", "--resolution", "32", "base", "--mode", "3d", "--expr", "1 + z1 + z2"]);
    assert_eq!(out.status.code(), Some(0));
    let s3 = d3.path().join("s3.json");
    fs::write(&s3, r#"{"legs": [{"alpha": [0, 0], "beta": [1, 0], "n": 0.5}]}"#).unwrap();
    let base3 = d3.path().join("base.json");
    let out = run(d3.path(), &["transform3d", "--section", s3.to_str().unwrap(), "--base", base3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("integrality"));
}

#[test]
fn check_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--format", "json", "check"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
