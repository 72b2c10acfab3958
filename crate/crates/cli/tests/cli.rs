use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_neutral-asymp"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
}

fn run(name: &str, out: &std::path::Path) -> Output {
    bin()
        .arg("run")
        .arg(fixture(name))
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

#[test]
fn exit_codes_cover_every_outcome() {
    for (name, code) in [
        ("t1_case_a_m2", 0),
        ("bad_c", 1),
        ("neg_b_harmonic", 2),
        ("neg_causality", 3),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let out = run(name, dir.path());
        assert_eq!(out.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn run_writes_trace_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = run("t1_case_a_m2", dir.path());
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert!(!csv.contains('\r'));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,x,z,delta_m_z"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 4);
    let mantissa = row[1].split('e').next().unwrap().trim_start_matches('-');
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
    let verdict: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("verdict.json")).unwrap()).unwrap();
    assert_eq!(verdict["overall_pass"], true);
    assert_eq!(verdict["exit_code"], 0);
    assert!(dir.path().join("decomposition.json").exists());
}

#[test]
fn horizon_override_shortens_the_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run", fixture("t1_case_a_m2").to_str().unwrap(), "--horizon", "2000", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.code().is_some());
    let verdict: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("verdict.json")).unwrap()).unwrap();
    assert_eq!(verdict["horizon"], 2000);
}

#[test]
fn causality_failure_writes_error_report() {
    let dir = tempfile::tempdir().unwrap();
    run("neg_causality", dir.path());
    let err: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("error.json")).unwrap()).unwrap();
    assert_eq!(err["kind"], "causality");
    assert!(!dir.path().join("verdict.json").exists());
}

#[test]
fn missing_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("run")
        .arg(dir.path().join("nope.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn catalog_is_deterministic_and_complete() {
    let a = bin().arg("catalog").output().unwrap();
    let b = bin().arg("catalog").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    for id in ["power_offset", "geometric", "sigmoid", "power_sgn", "identity", "affine", "delay_d", "half", "floor_log"] {
        assert!(text.contains(id), "catalog lacks {id}");
    }
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().arg("selftest").arg("--out").arg(dir.path()).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 12);
}
