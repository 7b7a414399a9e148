//! End-to-end tests of the command-line interface, driving the compiled
//! binary through files in a temp directory.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gausscanon::generation::tms_cm;
use gausscanon::io::write_cov;
use gausscanon::phase_space::CovMatrix;
use gausscanon::sampling;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gausscanon"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gausscanon-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_vacuum_as_pure() {
    let dir = tempdir("validate");
    let file = dir.join("vacuum.json");
    write_cov(&file, &CovMatrix::vacuum(2)).unwrap();
    let out = run(&["validate", "--in", path_str(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["physical"], true);
    assert_eq!(v["pure"], true);
}

#[test]
fn make_three_mode_rejects_bad_purities_with_exit_1() {
    let out = run(&["make-three-mode", "--purities", "4,2,2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "CondPos violated: 4+1>2+2");
}

#[test]
fn make_three_mode_emits_a_valid_state() {
    let dir = tempdir("make");
    let file = dir.join("three.json");
    let out = run(&["make-three-mode", "--purities", "3,2,2", "--out", path_str(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let check = run(&["validate", "--in", path_str(&file)]);
    let v = stdout_json(&check);
    assert_eq!(v["pure"], true);
}

#[test]
fn glu_equiv_recognizes_scrambled_copies() {
    let dir = tempdir("equiv");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let g = tms_cm(1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let l = sampling::random_local_unitary(&mut rng, 2, 2.0);
    write_cov(&a, &g).unwrap();
    write_cov(&b, &l.apply(&g).unwrap()).unwrap();
    let out = run(&["glu-equiv", "--a", path_str(&a), "--b", path_str(&b)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["equivalent"], true);

    let c = dir.join("c.json");
    write_cov(&c, &tms_cm(1.2).unwrap()).unwrap();
    let out = run(&["glu-equiv", "--a", path_str(&a), "--b", path_str(&c)]);
    assert_eq!(stdout_json(&out)["equivalent"], false);
}

#[test]
fn standard_form_writes_canonical_matrix() {
    let dir = tempdir("stdform");
    let input = dir.join("in.json");
    let output = dir.join("std.json");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = tms_cm(0.7).unwrap();
    let l = sampling::random_local_unitary(&mut rng, 2, 1.5);
    write_cov(&input, &l.apply(&g).unwrap()).unwrap();
    let out = run(&[
        "standard-form",
        "--in",
        path_str(&input),
        "--out",
        path_str(&output),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = stdout_json(&out);
    let lambda = summary["lambdas"][0].as_f64().unwrap();
    assert!((lambda - 0.7_f64.cosh()).abs() < 1e-9);
    let check = run(&["glu-equiv", "--a", path_str(&input), "--b", path_str(&output)]);
    assert_eq!(stdout_json(&check)["equivalent"], true);
}

#[test]
fn gen_and_apply_roundtrip_through_the_shared_format() {
    let dir = tempdir("glocc");
    let state = dir.join("dtms.json");
    let filtered = dir.join("filtered.json");
    let out = run(&[
        "gen", "dtms", "--s", "1.0", "--theta", "0.7853981633974483", "--out",
        path_str(&state),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "glocc", "apply", "--state", path_str(&state),
        "--mode", "1", "--r", "1.3169578969248166", "--x", "2.0",
        "--out", path_str(&filtered),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let check = run(&["validate", "--in", path_str(&filtered)]);
    assert_eq!(stdout_json(&check)["pure"], true);
}

#[test]
fn classify_reports_class_and_determinants() {
    let out = run(&["classify", "--purities", "3,3,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["class"], "symmetric");
    assert!((v["block_dets"]["12"].as_f64().unwrap() + 4.0).abs() < 1e-9);
}

#[test]
fn scan_is_reproducible_per_seed() {
    let dir = tempdir("scan");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for f in [&a, &b] {
        let out = run(&[
            "glocc", "scan", "--trials", "25", "--out", path_str(f), "--seed", "31",
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let text = std::fs::read_to_string(&a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "lambda1,lambda2,lambda3,r,x,phi,mode,C1,C2,C3,purity_residual"
    );
    assert_eq!(lines.count(), 25);

    // the env var is a fallback seed
    let c = dir.join("c.csv");
    let out = bin()
        .env("GAUSSCANON_SEED", "31")
        .args(["glocc", "scan", "--trials", "25", "--out", path_str(&c)])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["validate", "--no-such-flag", "x"]);
    assert_eq!(out.status.code(), Some(2));
}
