use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tern48::format::write_orbit_matrix;
use tern48::manifest::RunManifest;
use tern48_core::orbit_matrix::OrbitMatrix;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tern48"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn manifest(dir: &Path) -> RunManifest {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

/// Path of the first generated matrix and the label of its designs.
fn first_matrix(dir: &Path) -> (String, String) {
    let name = manifest(&dir.join("gen")).outputs[0].path.clone();
    let label = name.trim_end_matches(".om").to_string();
    (format!("gen/{name}"), label)
}

/// Orbit matrices of 2-(11,5,2) designs under Z_5, written to `dir/gen`.
fn small_matrices(dir: &Path, threads: &str) -> Output {
    run(
        dir,
        &["--threads", threads, "--out-dir", "gen", "generate-om", "--params", "11,5,2", "--order", "5", "--sizes", "1,5,5"],
    )
}

#[test]
fn usage_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run(tmp.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["expand", "OM1", "--resume", "3"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["analyze", "missing.design"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["verify-paper", "--tier", "slow"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["--format", "xml", "generate-om"]).status.code(), Some(2));
}

#[test]
fn tampered_matrix_is_rejected_naming_c2() {
    let tmp = tempfile::tempdir().unwrap();
    let mut om = OrbitMatrix::appendix(1).unwrap();
    om.s[0][1] = 1;
    fs::write(tmp.path().join("bad.om"), write_orbit_matrix(&om)).unwrap();
    let o = run(tmp.path(), &["expand", "bad.om"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("C2 violated at row 0"));
}

#[test]
fn fano_census_matches_brute_force() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(tmp.path(), &["generate-om", "--params", "7,3,1", "--order", "1", "--sizes", "1,1,1,1,1,1,1"]);
    assert!(o.status.success());
    // all 30 labeled Fano planes are equivalent under row and column permutations
    assert_eq!(stdout(&o).lines().next(), Some("1 orbit matrices"));
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(small_matrices(a.path(), "1").status.success());
    assert!(small_matrices(b.path(), "3").status.success());
    let (ma, mb) = (manifest(&a.path().join("gen")), manifest(&b.path().join("gen")));
    assert!(!ma.outputs.is_empty());
    assert_eq!(ma.outputs, mb.outputs);
    let om = ma.outputs[0].path.clone();
    for (dir, threads) in [(a.path(), "1"), (b.path(), "4")] {
        let o = run(dir, &["--threads", threads, "--out-dir", "ex", "expand", &format!("gen/{om}"), "--isomorph-reject"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ea, eb) = (manifest(&a.path().join("ex")), manifest(&b.path().join("ex")));
    assert_eq!(ea.outputs, eb.outputs);
    assert_eq!(ea.counts, eb.counts);
    assert!(ea.counts.designs_emitted.unwrap() > 0);
}

#[test]
fn limit_and_resume_cover_the_stream() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert!(small_matrices(dir, "2").status.success());
    let (om, label) = first_matrix(dir);
    let whole = run(dir, &["--out-dir", "all", "expand", &om]);
    assert!(whole.status.success());
    let total = manifest(&dir.join("all")).counts.designs_emitted.unwrap();
    assert!(total >= 2, "need at least two designs, got {total}");
    let head = run(dir, &["--out-dir", "head", "expand", &om, "--limit", "1"]);
    assert!(head.status.success());
    let token = manifest(&dir.join("head")).resume.expect("stream continues");
    let tail = run(dir, &["--out-dir", "tail", "expand", &om, "--resume", &token]);
    assert!(tail.status.success());
    assert_eq!(manifest(&dir.join("tail")).counts.designs_emitted, Some(total - 1));
    let read = |p: &str| fs::read_to_string(dir.join(p.replace("gen-", &format!("{label}-")))).unwrap();
    assert_eq!(read("head/gen-000001.design"), read("all/gen-000001.design"));
    assert_eq!(read("tail/gen-000001.design"), read("all/gen-000002.design"));
    // the provenance line replays to the same design
    let line = read("all/provenance.txt").lines().nth(1).unwrap().to_string();
    let cells: Vec<&str> = line.split_whitespace().skip(2).collect();
    let replay = run(dir, &["--out-dir", "replay", "expand", &om, "--replay", &cells.join(" ")]);
    assert!(replay.status.success());
    assert_eq!(read("replay/gen-000001.design"), read("all/gen-000002.design"));
}

#[test]
fn zero_budget_yields_a_token() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert!(small_matrices(dir, "1").status.success());
    let (om, _) = first_matrix(dir);
    let o = run(dir, &["--out-dir", "b", "expand", &om, "--budget", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("budget exhausted"));
    assert_eq!(manifest(&dir.join("b")).resume.as_deref(), Some("0:0"));
}

#[test]
fn build_analyze_and_classify_small_designs() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert!(small_matrices(dir, "1").status.success());
    let (om, label) = first_matrix(dir);
    assert!(run(dir, &["--out-dir", "ex", "expand", &om]).status.success());
    let design = format!("ex/{label}-000001.design");
    let o = run(dir, &["--out-dir", "codes", "build-code", &design]);
    assert!(o.status.success());
    let code = format!("codes/{label}-000001.code");
    assert!(fs::read_to_string(dir.join(&code)).unwrap().starts_with("12 "));
    let o = run(dir, &["--format", "json", "--out-dir", "an", "analyze", "ex"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["groups"][&label]["inputs"], v["global"]["inputs"]);
    assert!(dir.join(format!("an/{label}-000001.json")).exists());
    let o = run(dir, &["classify-equiv", "ex", "codes"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let first = |f: &str| text.lines().find(|l| l.contains(f)).unwrap().split_whitespace().nth(1).unwrap().to_string();
    // a design and the code built from it land in the same class
    assert_eq!(first(&design), first(&code));
}
