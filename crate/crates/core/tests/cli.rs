use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use tropical_marginal::marginal::residual_right;
use tropical_marginal::protocols::{fixtures, ProtocolParams, ProtocolTranscript};
use tropical_marginal::wire::{self, ErrorRecord, SetFile};
use tropical_marginal::{Matrix, Scalar};

fn tropmarg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropmarg"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("tropmarg runs")
}

fn error_kind(out: &Output) -> String {
    let record: ErrorRecord =
        wire::from_text(&String::from_utf8_lossy(&out.stderr)).expect("stderr is an error record");
    record.error
}

#[test]
fn sandwich_fixture_reproduces_the_printed_key() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("p.json"), fixtures::SANDWICH_4X4).unwrap();
    let out = tropmarg(&["run-protocol", "sandwich", "--params", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let t: ProtocolTranscript = wire::from_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let k = Matrix::min_plus([
        [202, 208, 164, 183],
        [217, 223, 179, 198],
        [203, 209, 165, 184],
        [200, 206, 162, 181],
    ]);
    assert!(t.agreed);
    assert_eq!(t.key_a, k);
}

#[test]
fn tampered_set_fails_verification() {
    let dir = TempDir::new().unwrap();
    let run = |args: &[&str]| tropmarg(args, dir.path());
    assert!(run(&["gen-params", "--dim", "3", "--seed", "4", "-o", "p.json"])
        .status
        .success());
    let out = run(&[
        "gen-marginal",
        "--word",
        "right",
        "--in",
        "p.json",
        "--encoding",
        "raw",
        "-o",
        "s.json",
        "--word-out",
        "w.json",
    ]);
    assert!(out.status.success());
    assert!(run(&["verify-marginal", "--set", "s.json", "--word", "w.json"])
        .status
        .success());

    let params: ProtocolParams = wire::from_text(&fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    let star = residual_right(&params.blocks[0].w).unwrap();
    let file: SetFile = wire::from_text(&fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    let mut tuples = file.tuples().unwrap();
    let low = star.get(0, 1).to_i64().unwrap() - 1;
    tuples[1][0] = tuples[1][0].with_entry(0, 1, Scalar::int(low)).unwrap();
    let bad = SetFile::encode(&tuples, wire::Encoding::Raw).unwrap();
    fs::write(dir.path().join("bad.json"), wire::to_text(&bad).unwrap()).unwrap();

    let out = run(&["verify-marginal", "--set", "bad.json", "--word", "w.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tuple 1 is not marginal"));
}

#[test]
fn same_seed_gives_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let run = |args: &[&str]| tropmarg(args, dir.path());
    for name in ["a.json", "b.json"] {
        let out = run(&[
            "gen-params",
            "--family",
            "ldp",
            "--blocks",
            "2",
            "--seed",
            "9",
            "-o",
            name,
        ]);
        assert!(out.status.success());
    }
    let a = fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.json")).unwrap());
    assert_eq!(a.last(), Some(&b'\n'));

    for proto in ["sidelnikov", "one-sided", "sandwich", "multiblock"] {
        let first = run(&["run-protocol", proto, "--params", "a.json", "--seed", "3"]);
        let second = run(&["run-protocol", proto, "--params", "a.json", "--seed", "3"]);
        assert_eq!(first.status.code(), Some(0), "{proto}");
        assert_eq!(first.stdout, second.stdout, "{proto}");
    }
    let first = run(&["gen-marginal", "--word", "sandwich", "--in", "a.json", "--seed", "5"]);
    let second = run(&["gen-marginal", "--word", "sandwich", "--in", "a.json", "--seed", "5"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn attack_subcommand_recovers_the_baseline_key() {
    let dir = TempDir::new().unwrap();
    let run = |args: &[&str]| tropmarg(args, dir.path());
    assert!(run(&["gen-params", "--degree", "3", "--seed", "2", "-o", "p.json"])
        .status
        .success());
    assert!(
        run(&["run-protocol", "sidelnikov", "--params", "p.json", "-o", "t.json"])
            .status
            .success()
    );
    let out = run(&["attack", "--transcript", "t.json"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"verdict\":\"recovered\""));
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.json"), "{").unwrap();
    let out = tropmarg(&["run-protocol", "sandwich", "--params", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "malformed-input");

    let out = tropmarg(&["run-protocol", "sandwich", "--params", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    fs::write(dir.path().join("p.json"), fixtures::SANDWICH_4X4).unwrap();
    let out = tropmarg(&["gen-marginal", "--word", "nonsense", "--in", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sampler_exhaustion_exits_three() {
    let dir = TempDir::new().unwrap();
    let run = |args: &[&str]| tropmarg(args, dir.path());
    assert!(run(&[
        "gen-params",
        "--dim",
        "2",
        "--range",
        "0..0",
        "--l",
        "0",
        "-o",
        "p.json"
    ])
    .status
    .success());
    let out = run(&["gen-marginal", "--word", "right", "--in", "p.json", "--count", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "sampler-exhausted");
}

#[test]
fn selftest_passes() {
    let out = tropmarg(&["selftest"], Path::new("."));
    assert!(out.status.success());
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
