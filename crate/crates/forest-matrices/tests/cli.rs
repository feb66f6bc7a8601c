//! End-to-end tests of the `forestmat` binary: payloads, exit codes, and
//! byte determinism.

use std::path::Path;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn forestmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forestmat"))
        .args(args)
        .output()
        .expect("run forestmat")
}

fn stdout_of(args: &[&str]) -> String {
    let out = forestmat(args);
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn failure_of(args: &[&str]) -> (i32, String) {
    let out = forestmat(args);
    let code = out.status.code().expect("exit code");
    assert_ne!(code, 0, "expected failure for {args:?}");
    (code, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn spectrum_payload_is_exact() {
    let out = stdout_of(&["spectrum", &fixture("g3.edges")]);
    assert_eq!(
        out,
        "{\"command\":\"spectrum\",\"n\":3,\"d\":1,\"sigma\":[1.0000000000000000e0,2.0000000000000000e0,1.0000000000000000e0]}\n"
    );
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["eigen", &fixture("g3.edges")];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    assert!(first.contains("\"eigenvalues\":[[0.0000000000000000e0,0.0000000000000000e0],[1.0000000000000000e0,0.0000000000000000e0],[1.0000000000000000e0,0.0000000000000000e0]]"));
}

#[test]
fn forest_matrix_k0_is_identity() {
    let out = stdout_of(&["forest-matrix", "--k", "0", &fixture("g2.edges")]);
    assert!(out.contains("\"Q\":[[1.0000000000000000e0,0.0000000000000000e0],[0.0000000000000000e0,1.0000000000000000e0]]"));
}

#[test]
fn forest_matrix_normalized() {
    let out = stdout_of(&[
        "forest-matrix",
        "--k",
        "1",
        "--normalized",
        &fixture("g2.edges"),
    ]);
    assert!(out.contains("\"J\":[[5.0000000000000000e-1,5.0000000000000000e-1],[5.0000000000000000e-1,5.0000000000000000e-1]]"));
}

#[test]
fn forest_matrix_rejects_out_of_range_k() {
    let (code, err) = failure_of(&["forest-matrix", "--k", "7", &fixture("g2.edges")]);
    assert_eq!(code, 1);
    assert!(err.contains("index out of range"), "stderr: {err}");

    // normalized J_k is undefined past n - d
    let (code, err) = failure_of(&[
        "forest-matrix",
        "--k",
        "3",
        "--normalized",
        &fixture("g3.edges"),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("index out of range"), "stderr: {err}");
}

#[test]
fn all_forests_parametric() {
    let out = stdout_of(&["all-forests", "--tau", "2", &fixture("g1.edges")]);
    assert!(out.contains("\"sigma\":5.0000000000000000e0"));
    assert!(out.contains("\"J\":[[2.0000000000000001e-1,8.0000000000000004e-1],[0.0000000000000000e0,1.0000000000000000e0]]"));
}

#[test]
fn eigenprojection_rows() {
    let out = stdout_of(&["eigenprojection", &fixture("g3.edges")]);
    assert!(out
        .contains("\"J_tilde\":[[0.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0]"));
}

#[test]
fn group_inverse_methods_agree() {
    // extracts the group_inverse entries as numbers; routes agree to 1e-8,
    // not bit-for-bit
    let entries = |s: &str| -> Vec<f64> {
        let start = s.find("\"group_inverse\":").unwrap() + "\"group_inverse\":".len();
        let end = s[start..].find("]]").unwrap() + start + 2;
        s[start..end]
            .split(['[', ']', ','])
            .filter(|f| !f.is_empty())
            .map(|f| f.parse().unwrap())
            .collect()
    };
    let by_forest = stdout_of(&["group-inverse", &fixture("g2.edges")]);
    let reference = entries(&by_forest);
    assert_eq!(reference, vec![0.25, -0.25, -0.25, 0.25]);
    for method in ["perturb", "projection"] {
        let other = stdout_of(&[
            "group-inverse",
            "--method",
            method,
            &fixture("g2.edges"),
            "--alpha",
            "1",
        ]);
        for (a, b) in reference.iter().zip(entries(&other)) {
            assert!((a - b).abs() <= 1e-8, "method {method}: {a} vs {b}");
        }
    }
    assert!(by_forest.contains("\"method\":\"forest\""));
    assert!(by_forest.contains("\"residuals\":{\"axa\":"));
}

#[test]
fn mp_inverse_payload() {
    let out = stdout_of(&["mp-inverse", &fixture("g1.edges")]);
    assert!(out.contains("\"moore_penrose\":[[2.5000000000000000e-1,0.0000000000000000e0],[-2.5000000000000000e-1,0.0000000000000000e0]]"));
    assert!(out.contains("\"xa_symmetry\":"));
}

#[test]
fn dense_forest_payload() {
    let out = stdout_of(&["dense-forest", "--alpha", "0.5", &fixture("g3.edges")]);
    assert!(out.contains(
        "\"dense_forest\":[[1.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0]"
    ));
}

#[test]
fn stationary_and_long_run() {
    let out = stdout_of(&["stationary", &fixture("chain2.csv")]);
    assert!(out.contains("\"pi\":[3.3333333333333331e-1,6.6666666666666663e-1]"));

    let out = stdout_of(&["long-run", &fixture("chain2.csv")]);
    assert!(out.contains("\"P_inf\":[[3.3333333333333331e-1,6.6666666666666663e-1]"));
}

#[test]
fn multichain_is_an_input_error() {
    let (code, err) = failure_of(&["stationary", &fixture("absorbing2.csv")]);
    assert_eq!(code, 1);
    assert!(err.contains("multichain"), "stderr: {err}");

    // the long-run matrix still exists for multichains
    let out = stdout_of(&["long-run", &fixture("absorbing2.csv")]);
    assert!(out.contains("\"d\":2"));
}

#[test]
fn verify_passes_on_fixtures() {
    for file in ["g0.edges", "g1.edges", "g2.edges", "g3.edges"] {
        let out = forestmat(&["verify", &fixture(file)]);
        assert_eq!(out.status.code(), Some(0), "verify {file}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("\"passed\":true"), "verify {file}");
    }
}

#[test]
fn verify_exit_code_three_iff_a_comparison_fails() {
    // dyadic weights keep the recursion exact, so the spectrum validation
    // passes even at an absurd tolerance; the adjugate comparison at
    // tau = 0.37 then carries a last-ulp residual that exceeds it
    let dir = std::env::temp_dir().join("forestmat-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dyadic.edges");
    std::fs::write(&path, "1 2 0.5\n2 3 0.25\n3 1 0.125\n").unwrap();
    let out = forestmat(&["verify", path.to_str().unwrap(), "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"passed\":false"));

    // the same file passes at the default tolerance
    let out = forestmat(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_rejects_oversized_graphs() {
    let (code, err) = failure_of(&["verify", &fixture("big9.edges")]);
    assert_eq!(code, 1);
    assert!(err.contains("size limit"), "stderr: {err}");
}

#[test]
fn csv_format() {
    let out = stdout_of(&["spectrum", "--format", "csv", &fixture("g3.edges")]);
    assert_eq!(
        out,
        "1.0000000000000000e0,2.0000000000000000e0,1.0000000000000000e0\n"
    );

    let out = stdout_of(&["eigenprojection", "--format", "csv", &fixture("g3.edges")]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in lines {
        assert_eq!(
            line,
            "0.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0"
        );
    }
}

#[test]
fn usage_errors_exit_one() {
    let (code, err) = failure_of(&["frobnicate", "x"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown subcommand"));

    let (code, err) = failure_of(&["forest-matrix", &fixture("g1.edges")]);
    assert_eq!(code, 1);
    assert!(err.contains("--k"));

    let (code, err) = failure_of(&["spectrum", "/nonexistent/path.edges"]);
    assert_eq!(code, 1);
    assert!(err.contains("error:"));

    let (code, _) = failure_of(&["spectrum", &fixture("g1.edges"), "--tau", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = std::env::temp_dir().join("forestmat-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("loop.edges");
    std::fs::write(&path, "1 2 1.0\n2 2 1.0\n").unwrap();
    let (code, err) = failure_of(&["spectrum", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "stderr: {err}");
    assert!(err.contains("loop"), "stderr: {err}");
}

#[test]
fn eigen_reports_empty_extraction_for_defective_eigenvalues() {
    // two disjoint single-arc components share the eigenvalue 2 with
    // geometric multiplicity two; Q(-1/2) vanishes and no vector exists
    let dir = std::env::temp_dir().join("forestmat-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("twin.edges");
    std::fs::write(&path, "n=4\n1 2 2.0\n3 4 2.0\n").unwrap();
    let out = stdout_of(&["eigen", path.to_str().unwrap()]);
    assert!(out.contains("\"vectors\":[],\"residuals\":[]"), "{out}");
}

#[test]
fn help_prints_usage() {
    let out = forestmat(&["help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("usage:"));
}

#[test]
fn errors_are_single_line() {
    for args in [
        vec!["frobnicate", "x"],
        vec!["spectrum", "/nonexistent/file"],
        vec!["verify", &fixture("big9.edges")],
    ] {
        let argv: Vec<&str> = args.iter().map(|s| &**s).collect();
        let (_, err) = failure_of(&argv);
        assert_eq!(err.trim_end().lines().count(), 1, "multi-line: {err}");
    }
}
