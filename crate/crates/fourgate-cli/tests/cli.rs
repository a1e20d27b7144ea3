//! End-to-end tests of the command-line surface: file round-trips, exit
//! codes, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fourgate")
}

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fourgate-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn compile_identity_circuit_reports_zero_gates() {
    let dir = tempdir("identity");
    std::fs::write(dir.join("id.json"), r#"{"n": 3, "gates": []}"#).unwrap();
    let out = run(&["compile", "id.json", "--out", "id.compiled.json"], &dir);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("mq_count: 0"), "{stdout}");

    let verify = run(&["verify", "id.json", "id.compiled.json", "--dense"], &dir);
    assert!(verify.status.success(), "{verify:?}");
}

#[test]
fn compile_cnot_circuit_verifies_clean() {
    let dir = tempdir("cnot");
    std::fs::write(
        dir.join("cnot.json"),
        r#"{"n": 2, "gates": [{"type": "CX", "control": 0, "target": 1}]}"#,
    )
    .unwrap();
    for variant in ["xz", "zx"] {
        let out = run(
            &[
                "compile",
                "cnot.json",
                "--out",
                "cnot.compiled.json",
                "--variant",
                variant,
            ],
            &dir,
        );
        assert!(out.status.success(), "{out:?}");
        let stdout = String::from_utf8_lossy(&out.stdout);
        let count: usize = stdout
            .lines()
            .find_map(|l| l.strip_prefix("mq_count: "))
            .unwrap()
            .parse()
            .unwrap();
        assert!(count <= 4);
        let verify = run(&["verify", "cnot.json", "cnot.compiled.json", "--dense"], &dir);
        assert!(verify.status.success(), "{verify:?}");
    }
}

#[test]
fn malformed_json_exits_2_with_position() {
    let dir = tempdir("malformed");
    std::fs::write(dir.join("bad.json"), "{\"n\": 2,\n  \"gates\": [oops]}").unwrap();
    let out = run(&["compile", "bad.json", "--out", "x.json"], &dir);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line") && stderr.contains("column"), "{stderr}");
}

#[test]
fn verify_file_against_itself_passes() {
    let dir = tempdir("self");
    let gen = run(
        &["gen", "--kind", "clifford", "--n", "3", "--seed", "5", "--out", "c.json"],
        &dir,
    );
    assert!(gen.status.success());
    let out = run(&["verify", "c.json", "c.json", "--dense"], &dir);
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn corrupted_candidate_exits_1() {
    let dir = tempdir("corrupt");
    std::fs::write(
        dir.join("target.json"),
        r#"{"n": 2, "gates": [{"type": "H", "qubit": 0}]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.join("candidate.json"),
        r#"{"n": 2, "gates": [{"type": "H", "qubit": 0}, {"type": "X", "qubit": 1}]}"#,
    )
    .unwrap();
    let out = run(&["verify", "target.json", "candidate.json"], &dir);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dense_flag_rejected_for_large_n() {
    let dir = tempdir("dense-cap");
    let gen = run(
        &["gen", "--kind", "clifford", "--n", "6", "--seed", "1", "--out", "c.json"],
        &dir,
    );
    assert!(gen.status.success());
    let out = run(&["verify", "c.json", "c.json", "--dense"], &dir);
    assert_eq!(out.status.code(), Some(2));
    // without the flag the tableau checks suffice
    let out = run(&["verify", "c.json", "c.json"], &dir);
    assert!(out.status.success());
}

#[test]
fn gen_cx_n1_is_empty_and_recomposes() {
    let dir = tempdir("gen-cx");
    let out = run(
        &["gen", "--kind", "cx", "--n", "1", "--seed", "2", "--out", "cx1.json"],
        &dir,
    );
    assert!(out.status.success());
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("cx1.json")).unwrap()).unwrap();
    assert_eq!(file["gates"].as_array().unwrap().len(), 0);

    // a larger instance contains only CX records and recomposes to an
    // invertible CNOT layer
    let out = run(
        &["gen", "--kind", "cx", "--n", "5", "--seed", "2", "--out", "cx5.json"],
        &dir,
    );
    assert!(out.status.success());
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("cx5.json")).unwrap()).unwrap();
    let mut op = fourgate::clifford::CliffordOp::identity(5);
    for gate in file["gates"].as_array().unwrap() {
        assert_eq!(gate["type"], "CX");
        op.apply_cnot(
            gate["control"].as_u64().unwrap() as usize,
            gate["target"].as_u64().unwrap() as usize,
        );
    }
    let s = op.s();
    assert!(s.submatrix(0, 5, 5, 5).is_zero(), "stays a CNOT layer");
    assert!(s.submatrix(5, 0, 5, 5).is_zero());
    assert_eq!(s.submatrix(5, 5, 5, 5).rank(), 5, "layer matrix invertible");
}

#[test]
fn gen_clifford_tableau_is_symplectic() {
    let dir = tempdir("gen-clifford");
    let out = run(
        &["gen", "--kind", "clifford", "--n", "3", "--seed", "4", "--out", "c3.json"],
        &dir,
    );
    assert!(out.status.success());
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("c3.json")).unwrap()).unwrap();
    let gates = file["gates"].as_array().unwrap();
    assert!(gates.len() >= 9, "mixing length of at least n^2");
    let mut op = fourgate::clifford::CliffordOp::identity(3);
    for gate in gates {
        match gate["type"].as_str().unwrap() {
            "H" => op.apply_h(gate["qubit"].as_u64().unwrap() as usize),
            "S" => op.apply_s(gate["qubit"].as_u64().unwrap() as usize),
            "CX" => op.apply_cnot(
                gate["control"].as_u64().unwrap() as usize,
                gate["target"].as_u64().unwrap() as usize,
            ),
            other => panic!("unexpected gate {other}"),
        }
    }
    assert!(op.is_symplectic());
}

#[test]
fn bench_row_counts_and_determinism() {
    let dir = tempdir("bench");
    let args = [
        "bench", "--n", "8,16", "--samples", "2", "--seed", "1", "--out", "a.csv",
    ];
    let out = run(&args, &dir);
    assert!(out.status.success(), "{out:?}");
    let a = std::fs::read(dir.join("a.csv")).unwrap();
    let text = String::from_utf8(a.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // header + 8 data rows + summary header + 2 summary rows
    assert_eq!(lines.len(), 12, "{text}");
    assert_eq!(lines[0], "n,method,sample,total_nuc");
    assert_eq!(lines[9], "method,beta,ci_low,ci_high");
    assert!(lines[10].starts_with("constant_cost,"));
    assert!(lines[11].starts_with("gaussian,"));

    let mut args2 = args;
    args2[8] = "b.csv";
    let out = run(&args2, &dir);
    assert!(out.status.success());
    let b = std::fs::read(dir.join("b.csv")).unwrap();
    assert_eq!(a, b, "same seed and config must give identical bytes");
}

#[test]
fn bench_rejects_bad_flags() {
    let dir = tempdir("bench-bad");
    let out = run(
        &["bench", "--n", "1,notanumber", "--samples", "2", "--out", "x.csv"],
        &dir,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compiled_file_roundtrip_is_exact() {
    let dir = tempdir("roundtrip");
    let gen = run(
        &["gen", "--kind", "clifford", "--n", "4", "--seed", "8", "--out", "c.json"],
        &dir,
    );
    assert!(gen.status.success());
    let out = run(&["compile", "c.json", "--out", "c.compiled.json"], &dir);
    assert!(out.status.success());

    // parse and re-emit: identical JSON value
    let text = std::fs::read_to_string(dir.join("c.compiled.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let reparsed: fourgate_cli_test_support::CompiledFileMirror =
        serde_json::from_str(&text).unwrap();
    let reemitted = serde_json::to_value(&reparsed).unwrap();
    assert_eq!(value, reemitted);

    // the compiled file still verifies against the source
    let out = run(&["verify", "c.json", "c.compiled.json", "--dense"], &dir);
    assert!(out.status.success());
}

/// Minimal mirror of the compiled-file schema, kept in the test so the
/// round-trip check does not share the production serializer.
mod fourgate_cli_test_support {
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    pub struct CompiledFileMirror {
        pub n: usize,
        pub pauli: serde_json::Value,
        pub layers: Vec<serde_json::Value>,
    }
}
