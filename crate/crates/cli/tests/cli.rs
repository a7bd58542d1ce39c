use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const WORKED: &str = r#"{"ring": "int", "rows": [["1", "0"], ["0", "1"], ["1", "1"]]}"#;
const COLLINEAR: &str =
    r#"{"ring": "int", "rows": [["1","0","0"], ["0","1","0"], ["1","1","0"], ["0","0","1"]]}"#;

fn mvvd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvvd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn basis_lists_exponents_in_lex_order() {
    let out = mvvd(&["basis", "--n", "1", "--d", "2"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["count"], 3);
    assert_eq!(
        doc["exponents"],
        serde_json::json!([[2, 0], [1, 1], [0, 2]])
    );
}

#[test]
fn mu_of_worked_example() {
    let dir = TempDir::new().unwrap();
    let x = file(&dir, "x.json", WORKED);
    let out = mvvd(&["mu", "--input", s(&x)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        json(&out)["rows"],
        serde_json::json!([["1", "1"], ["1", "0"], ["0", "1"]])
    );
}

#[test]
fn eta_of_degree_one_echoes_input() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"ring": "int", "rows": [["2", "-1", "0"], ["5", "3", "1"], ["0", "4", "-7"]]}"#;
    let x = file(&dir, "x.json", text);
    let out = mvvd(&["eta", "--d", "1", "--input", s(&x)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let echoed = String::from_utf8(out.stdout).unwrap();
    let again = file(&dir, "again.json", &echoed);
    let out = mvvd(&["eta", "--d", "1", "--input", s(&again)]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), echoed);
    assert_eq!(
        serde_json::from_str::<Value>(&echoed).unwrap()["rows"],
        serde_json::json!([["2", "-1", "0"], ["5", "3", "1"], ["0", "4", "-7"]])
    );
}

#[test]
fn veronese_and_sym_write_matrices() {
    let dir = TempDir::new().unwrap();
    let x = file(&dir, "x.json", WORKED);
    let out_path = dir.path().join("v.json");
    let out = mvvd(&[
        "veronese",
        "--d",
        "2",
        "--input",
        s(&x),
        "--output",
        s(&out_path),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["rows"][2], serde_json::json!(["1", "1", "1"]));

    let u = file(
        &dir,
        "u.json",
        r#"{"ring": "int", "rows": [["1", "1"], ["0", "1"]]}"#,
    );
    let out = mvvd(&["sym", "--d", "2", "--input", s(&u)]);
    assert!(out.status.success());
    assert_eq!(json(&out)["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_hdv_on_worked_file() {
    let dir = TempDir::new().unwrap();
    let x = file(&dir, "x.json", WORKED);
    let out = mvvd(&["verify", "hdv", "--n", "1", "--d", "2", "--input", s(&x)]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["lhs"], "-1");
    assert_eq!(doc["rhs"], "-1");
    assert_eq!(doc["verdict"], "equal");
}

#[test]
fn verify_hdv_symbolic() {
    let out = mvvd(&["verify", "hdv", "--n", "2", "--d", "2", "--symbolic"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["verdict"], "equal");
    assert!(doc["ring"].as_str().unwrap().starts_with("poly["));
}

#[test]
fn verify_naive_is_unequal_and_exits_zero() {
    let out = mvvd(&["verify", "naive", "--n", "2", "--d", "2", "--seed", "1"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["verdict"], "unequal");
    assert_eq!(doc["seed"], 1);
}

#[test]
fn verify_remaining_identities() {
    for args in [
        &["verify", "dual", "--n", "2", "--d", "3", "--seed", "5"][..],
        &[
            "verify",
            "dual",
            "--n",
            "1",
            "--d",
            "2",
            "--ring",
            "mod_p",
            "--modulus",
            "101",
        ],
        &[
            "verify", "lemma", "--n", "2", "--d", "2", "--alpha", "-3", "--src", "2", "--dst", "0",
        ],
        &["verify", "sym", "--n", "3", "--d", "2"],
        &["verify", "sym", "--n", "2", "--d", "2", "--symbolic"],
        &["verify", "abstract", "--n", "2", "--d", "2"],
        &["verify", "affine", "--d", "4", "--symbolic"],
        &[
            "verify",
            "hdv",
            "--n",
            "3",
            "--d",
            "2",
            "--algorithm",
            "berkowitz",
        ],
    ] {
        let out = mvvd(args);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        assert_ne!(json(&out)["verdict"], "unequal", "{args:?}");
    }
}

#[test]
fn naive_in_dimension_one_holds_so_exit_is_zero() {
    let out = mvvd(&["verify", "naive", "--n", "1", "--d", "3", "--seed", "4"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["verdict"], "equal");
}

#[test]
fn lemma_with_equal_columns_is_rejected() {
    let out = mvvd(&[
        "verify", "lemma", "--n", "2", "--d", "1", "--src", "1", "--dst", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn genpos_collinear_witness() {
    let dir = TempDir::new().unwrap();
    let x = file(&dir, "c.json", COLLINEAR);
    let out = mvvd(&["genpos", "--input", s(&x)]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["witness"], serde_json::json!([0, 1, 2]));

    let out = mvvd(&["genpos", "--input", s(&x), "--eta"]);
    let doc = json(&out);
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["method"], "eta");
    assert!(doc.get("witness").is_none());
}

#[test]
fn genpos_random_configuration() {
    let out = mvvd(&["genpos", "--n", "2", "--m", "6", "--seed", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["m"], 6);
    let out = mvvd(&["genpos", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: usage:"));
}

#[test]
fn bench_agrees_everywhere() {
    let out = mvvd(&[
        "bench", "--n", "2", "--d", "5", "--trials", "20", "--ring", "mod_p",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["agreement_rate"], 1.0);
    assert_eq!(doc["per_trial"].as_array().unwrap().len(), 20);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["verify", "hdv", "--n", "2", "--d", "3", "--seed", "9"][..],
        &["verify", "naive", "--n", "2", "--d", "2", "--seed", "1"],
        &[
            "genpos", "--n", "3", "--m", "7", "--seed", "2", "--ring", "mod_p",
        ],
        &["basis", "--n", "3", "--d", "3"],
    ] {
        assert_eq!(mvvd(args).stdout, mvvd(args).stdout, "{args:?}");
    }
}

#[test]
fn errors_are_single_line_with_reason_code() {
    let dir = TempDir::new().unwrap();
    let x = file(&dir, "x.json", WORKED);
    let bad = file(
        &dir,
        "bad.json",
        r#"{"ring": "int", "rows": [["1", "2"], ["3"]]}"#,
    );
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec!["verify", "hdv", "--n", "4", "--d", "2", "--symbolic"],
            "symbolic-cap-exceeded",
        ),
        (
            vec!["verify", "hdv", "--n", "2", "--input", s(&x)],
            "shape-violation",
        ),
        (vec!["eta", "--d", "1", "--input", s(&x)], "shape-violation"),
        (vec!["mu", "--input", s(&bad)], "shape-violation"),
        (
            vec!["mu", "--input", "/definitely/missing.json"],
            "io-error",
        ),
        (
            vec![
                "verify",
                "hdv",
                "--n",
                "1",
                "--d",
                "1",
                "--ring",
                "mod_p",
                "--modulus",
                "9",
            ],
            "invalid-modulus",
        ),
        (
            vec![
                "verify",
                "hdv",
                "--n",
                "1",
                "--d",
                "1",
                "--symbolic",
                "--ring",
                "int",
            ],
            "unsupported",
        ),
        (vec!["genpos", "--n", "3", "--m", "2"], "not-enough-points"),
        (vec!["basis", "--n", "0", "--d", "1"], "unsupported"),
        (vec!["verify", "nonsense"], "usage"),
    ];
    for (args, code) in cases {
        let out = mvvd(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(
            err.starts_with(&format!("error: {code}:")),
            "{args:?}: {err}"
        );
    }
}

#[test]
fn symbolic_cap_is_adjustable() {
    let args = ["verify", "hdv", "--n", "2", "--d", "1", "--symbolic"];
    assert!(mvvd(&args).status.success());
    let lowered = mvvd(&[&args[..], &["--symbolic-cap", "2"]].concat());
    assert_eq!(lowered.status.code(), Some(2));
    assert!(stderr(&lowered).starts_with("error: symbolic-cap-exceeded:"));
}

#[test]
fn selftest_quick_passes() {
    let dir = TempDir::new().unwrap();
    let summary = dir.path().join("summary.json");
    let out = mvvd(&["selftest", "--quick", "--output", s(&summary)]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(
        text.lines().filter(|l| l.starts_with("[PASS]")).count(),
        10,
        "{text}"
    );
    let doc: Value = serde_json::from_str(&fs::read_to_string(summary).unwrap()).unwrap();
    assert_eq!(doc["passed"], true);
}
