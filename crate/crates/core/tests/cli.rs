use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn lgdms(args: &[&str], out: &Path, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lgdms"));
    cmd.args(args).arg("--out").arg(out);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn write_config(dir: &Path, json: &str) -> PathBuf {
    let p = dir.join("config.json");
    std::fs::write(&p, json).unwrap();
    p
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn success_writes_report_and_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("f2_c3_z3.json");
    let o = lgdms(&["pressure-curve", cfg.to_str().unwrap()], tmp.path(), &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(tmp.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["command"], "pressure-curve");
    assert_eq!(report["status"], "OK");
    // defaults are echoed back
    assert_eq!(report["config"]["pressure"]["steps"], 41);
    let csv = std::fs::read_to_string(tmp.path().join("pressure_curve.csv")).unwrap();
    assert_eq!(csv.lines().count(), 42);
}

#[test]
fn render_writes_pgm() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("f2_c4_cantor.json");
    let o = lgdms(&["render", cfg.to_str().unwrap()], tmp.path(), &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let pgm = std::fs::read(tmp.path().join("attractor.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n"));
    assert!(tmp.path().join("points.csv").exists());
}

#[test]
fn config_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        // ratio above 1
        r#"{"gdms": {"rank": 2, "ratios": [1.2, 0.3], "symmetric": true}}"#,
        // unknown field
        r#"{"gdms": {"rank": 2, "ratios": [0.3, 0.3], "symmetric": true}, "colour": 1}"#,
        "not json",
    ];
    for json in cases {
        let cfg = write_config(tmp.path(), json);
        let o = lgdms(&["delta-full", cfg.to_str().unwrap()], &tmp.path().join("out"), &[]);
        assert_eq!(code(&o), 2, "{json}");
    }
    let cfg = write_config(tmp.path(), r#"{"gdms": {"rank": 2, "ratios": [0.3, 0.3], "symmetric": true}}"#);
    let o = lgdms(&["delta-kernel", cfg.to_str().unwrap()], &tmp.path().join("out"), &[]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("quotient: required for delta-kernel"));
    let o = lgdms(&["walks", cfg.to_str().unwrap()], &tmp.path().join("out"), &[]);
    assert_eq!(code(&o), 2);
    let asym = configs().join("f2_asymmetric.json");
    let o = lgdms(&["amenability", asym.to_str().unwrap()], &tmp.path().join("out"), &[]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("dichotomy requires symmetric GDMS"));
}

#[test]
fn env_cap_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("f2_c3_lattice.json");
    let o = lgdms(&["walks", cfg.to_str().unwrap()], tmp.path(), &[("LGDMS_BALL_CAP", "50")]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let o = lgdms(&["render", configs().join("f2_c4_cantor.json").to_str().unwrap()], tmp.path(), &[("LGDMS_POINT_CAP", "10")]);
    assert_eq!(code(&o), 3);
}

#[test]
fn unknown_command_is_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = lgdms(&["frobnicate", "x.json"], tmp.path(), &[]);
    assert_eq!(code(&o), 2);
}
