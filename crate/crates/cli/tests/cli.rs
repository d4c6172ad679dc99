//! End-to-end binary tests: determinism, file inputs/outputs, exit codes.

use std::process::{Command, Output};

fn fracindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracindex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["index", "--manifold", "cp2", "--bundle", "trivial"],
        vec!["catalog", "list", "--format", "markdown"],
        vec!["lab", "index", "--symbol", "1/4+e^{it}", "--format", "csv"],
        vec!["genus", "--series", "todd", "--order", "6", "--format", "csv"],
    ] {
        let a = fracindex(&args);
        let b = fracindex(&args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?} not deterministic");
    }
}

#[test]
fn genus_csv_exact_bytes() {
    let out = fracindex(&["genus", "--series", "a-hat", "--order", "2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "series,order,coefficients\na-hat,2,1 0 -1/24\n");
}

#[test]
fn winding_json() {
    let out = fracindex(&["lab", "winding", "--symbol", "e^{3it}"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["winding"], serde_json::json!(3));
}

#[test]
fn manifold_from_json_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/cp2.json");
    let out = fracindex(&["index", "--manifold", path, "--format", "csv"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("-1/8"), "{}", stdout(&out));
}

#[test]
fn bundle_from_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("bundle.json");
    std::fs::write(&bundle, r#"{ "rank": 1, "classes": [{ "x": "2" }] }"#).unwrap();
    let out = fracindex(&[
        "index",
        "--manifold",
        "cp2",
        "--bundle",
        bundle.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // integral of (1 - x^2/8)(1 + 2x + 2x^2) = 2 - 1/8
    assert!(stdout(&out).contains("15/8"), "{}", stdout(&out));
}

#[test]
fn line_bundle_grammar_matches_library() {
    let out = fracindex(&[
        "index", "--manifold", "cp1", "--bundle", "line:-2", "--format", "csv",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("dirac,-2,"), "{}", stdout(&out));
}

#[test]
fn out_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fracindex"))
        .args(["catalog", "list", "--format", "csv", "--out", "report.csv"])
        .env("FRACINDEX_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(written.starts_with("name,description\n"));
}

#[test]
fn non_elliptic_symbol_fails_with_diagnostic() {
    // 1 + e^{it} vanishes at theta = pi
    let out = fracindex(&["lab", "index", "--symbol", "1+e^{it}"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("elliptic"), "stderr: {err}");
}

#[test]
fn unknown_manifold_fails() {
    let out = fracindex(&["index", "--manifold", "nonesuch"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonesuch"));
}

#[test]
fn bad_tolerance_rejected() {
    let out = fracindex(&["lab", "index", "--symbol", "e^{it}", "--tolerance-index", "0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("positive"));
}

#[test]
fn window_auto_adjust_warns() {
    let out = fracindex(&["lab", "index", "--symbol", "e^{it}", "--K", "80", "--W", "60"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("window"));
}

#[test]
fn symbol_doc_and_heat_doc_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let sym = dir.path().join("sym.json");
    std::fs::write(
        &sym,
        r#"{ "size": 1, "mode": "exact", "coeffs": { "-2": [["1"]] } }"#,
    )
    .unwrap();
    let out = fracindex(&["lab", "winding", "--symbol", sym.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with(",-2\n"), "{}", stdout(&out));

    let heat = dir.path().join("heat.json");
    std::fs::write(&heat, r#"{ "d_plus": [[1.0, 0.0, 0.0]] }"#).unwrap();
    let out = fracindex(&["lab", "heat", "--input", heat.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        assert!(line.contains(",2.000000000000,2,2,0"), "{line}");
    }
}
