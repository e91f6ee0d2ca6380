use std::path::Path;
use std::process::{Command, Output};

fn loopmul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopmul"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = loopmul(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn corpus(sub: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(sub)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn torus_commands() {
    assert_eq!(stdout(&["torus", "mul", "1,0", "0,1"]), "1,1\n");
    assert_eq!(stdout(&["torus", "mul", "(0,1)", "(1,0)"]), "1,-1\n");
    assert_eq!(stdout(&["torus", "int", "2,0", "0,3"]), "6\n");
    assert_eq!(stdout(&["torus", "int", "-2,1", "1,1"]), "3\n");
    assert_eq!(stdout(&["torus", "twist", "--along", "1,0", "--on", "0,1"]), "1,1\n");
    assert_eq!(
        stdout(&["torus", "twist", "--along", "1,0", "--on", "0,1", "--neg"]),
        "1,-1\n"
    );
    assert_eq!(
        stdout(&[
            "torus", "profile", "--alpha", "1,0", "--beta", "0,1", "--gamma", "1,2", "--range", "-2..2"
        ]),
        "n,value\n-2,5\n-1,3\n0,1\n1,1\n2,3\n"
    );
}

#[test]
fn torus_errors_exit_nonzero() {
    assert!(!loopmul(&["torus", "mul", "0,0", "1,0"]).status.success());
    assert!(!loopmul(&["torus", "twist", "--along", "2,0", "--on", "0,1"]).status.success());
}

#[test]
fn scene_commands() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    let grid = grid.to_str().unwrap();
    stdout(&["scene", "grid", "1", "0", "0", "1", "--out", grid]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["scene", "validate", grid])).unwrap();
    assert_eq!(v["faces"], 1);
    assert_eq!(v["genus"], 1);
    let faces: serde_json::Value = serde_json::from_str(&stdout(&["scene", "faces", grid])).unwrap();
    assert_eq!(faces[0]["degree"], 4);

    let resolved = dir.path().join("r.json");
    let resolved = resolved.to_str().unwrap();
    stdout(&["scene", "resolve", grid, "--from", "A", "--to", "B", "--out", resolved]);
    let census: serde_json::Value =
        serde_json::from_str(&stdout(&["scene", "census", resolved])).unwrap();
    assert_eq!(census["components"][0]["homology"], serde_json::json!([1, 1]));
    assert_eq!(census["trivial"], serde_json::json!([]));

    let bigons: serde_json::Value = serde_json::from_str(&stdout(&[
        "scene",
        "bigons",
        &corpus("scenes/bigon_control.json"),
        "--from",
        "A",
        "--to",
        "B",
    ]))
    .unwrap();
    assert_eq!(bigons.as_array().unwrap().len(), 2);
    let refused = loopmul(&[
        "scene",
        "resolve",
        &corpus("scenes/bigon_control.json"),
        "--from",
        "A",
        "--to",
        "B",
    ]);
    assert!(!refused.status.success());
    assert!(String::from_utf8_lossy(&refused.stderr).contains("bigon"));
}

#[test]
fn dt_commands() {
    let g2 = corpus("dt/genus2_closed.json");
    let ty: serde_json::Value = serde_json::from_str(&stdout(&["dt", "validate", &g2])).unwrap();
    assert_eq!(ty["genus"], 2);
    assert_eq!(ty["curves"], 3);

    let dir = tempfile::tempdir().unwrap();
    let twisted = dir.path().join("t.json");
    let twisted = twisted.to_str().unwrap();
    stdout(&["dt", "twist", &g2, "--k", "-2,0,0", "--out", twisted]);
    let k: Vec<i64> = serde_json::from_str(&stdout(&["dt", "solve", twisted, &g2])).unwrap();
    assert_eq!(k, vec![-2, 0, 0]);
    assert!(!loopmul(&["dt", "twist", &g2, "--k", "0,1,0"]).status.success());
    let torus = corpus("dt/one_holed_torus.json");
    assert!(!loopmul(&["dt", "solve", &g2, &torus]).status.success());
}

#[test]
fn verify_small_run() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = loopmul(&[
        "verify",
        "--bound",
        "2",
        "--gamma-bound",
        "2",
        "--range",
        "-3..3",
        "--trials",
        "30",
        "--seed",
        "3",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 6);
    for s in v["suites"].as_array().unwrap() {
        for field in ["suite", "params", "cases", "failures", "millis"] {
            assert!(s.get(field).is_some(), "{field}");
        }
    }
}

#[test]
fn verify_reports_injected_fault() {
    let out = loopmul(&[
        "verify",
        "--suite",
        "resolution_oracle",
        "--bound",
        "1",
        "--convention",
        "flipped",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("witness [census]"));
    assert!(text.contains("\"a\":[1,0]"));
}

#[test]
fn verify_parameter_errors() {
    assert_eq!(loopmul(&["verify", "--bound", "0"]).status.code(), Some(2));
    assert_eq!(loopmul(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let out = loopmul(&[
        "verify",
        "--suite",
        "twist_coordinates",
        "--trials",
        "5",
        "--out",
        "/nonexistent/dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
