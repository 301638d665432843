use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynquant"))
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("job.conf");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn passing_job_exits_zero_and_writes_json() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["verify-cocycle"], &configs().join("sl2_symbolic.conf"), d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(d.path().join("verify-cocycle.json")).unwrap();
    assert!(text.ends_with("}\n"));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["lambda"], "symbolic");
}

#[test]
fn violation_exits_one() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["bundle-check"], &configs().join("line_bundle_wrong_shift.conf"), d.path());
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(d.path().join("bundle-check.json")).unwrap()).unwrap();
    assert_eq!(v["right"]["failure"]["order"], 2);
}

#[test]
fn malformed_levi_exits_two_with_line_and_field() {
    let d = tempfile::tempdir().unwrap();
    let conf = write_config(d.path(), "algebra = sl3\nlevi = [3]\nreps = [[1, 0], [1, 0]]\n");
    let o = run(&["twist"], &conf, d.path());
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2") && err.contains("`levi`"), "{err}");
    assert!(!d.path().join("twist.json").exists());
}

#[test]
fn integer_point_is_rejected_as_non_generic() {
    let d = tempfile::tempdir().unwrap();
    let conf = write_config(d.path(), "algebra = sl2\nreps = [[1], [1]]\nlambda = [3]\n");
    let o = run(&["twist"], &conf, d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flags_override_the_file() {
    let d = tempfile::tempdir().unwrap();
    let o = run(
        &["verify-qdybe", "--samples", "2", "--seed", "5"],
        &configs().join("sl2_symbolic.conf"),
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(d.path().join("verify-qdybe.json")).unwrap()).unwrap();
    assert_eq!(v["lambda"]["samples"], 2);
    assert_eq!(v["lambda"]["seed"], 5);
    let bad = run(
        &["verify-qdybe", "--samples", "0"],
        &configs().join("sl2_symbolic.conf"),
        d.path(),
    );
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--samples"));
}

#[test]
fn hopf_input_resolves_next_to_the_config() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["hopf-check"], &configs().join("hopf_z3.conf"), d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let conf = configs().join("cp1_star.conf");
    for d in [&a, &b] {
        assert_eq!(run(&["star-table", "--t-order", "2"], &conf, d.path()).status.code(), Some(0));
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("star-table.json")).unwrap();
    assert_eq!(read(&a), read(&b));
}
