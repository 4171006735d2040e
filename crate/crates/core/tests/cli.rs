//! Golden outputs and exit codes of the command-line front end. Set
//! `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

use border_apolarity::cli::{run, EXIT_BUDGET, EXIT_INPUT, EXIT_OK};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn fixture(name: &str) -> String {
    golden_dir().join(name).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("apolarity").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn assert_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

/// Runs a command with `--emit-json`, checks both outputs against golden
/// files and returns the exit code.
fn golden_case(name: &str, args: &[&str]) -> i32 {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("out.json");
    let json_arg = json_path.display().to_string();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--emit-json", &json_arg]);
    let (code, out, err) = invoke(&full);
    assert!(err.is_empty(), "{name}: {err}");
    assert_golden(&format!("{name}.txt"), &out);
    assert_golden(&format!("{name}.json"), &std::fs::read_to_string(&json_path).unwrap());
    code
}

#[test]
fn scan_monomial_x0x1x2sq() {
    let code = golden_case(
        "scan_x0x1x2sq",
        &["scan", "--space", "P2", "--target", "x0 x1 x2^2", "--r-max", "4"],
    );
    assert_eq!(code, EXIT_OK);
}

#[test]
fn certify_candidate_and_nonexistent() {
    let base = ["certify", "--space", "P2", "--target", "x0 x1 x2", "--window-box", "auto"];
    let mut r3 = base.to_vec();
    r3.extend(["--r", "3"]);
    assert_eq!(golden_case("certify_x0x1x2_r3", &r3), EXIT_OK);
    let mut r4 = base.to_vec();
    r4.extend(["--r", "4"]);
    assert_eq!(golden_case("certify_x0x1x2_r4", &r4), EXIT_OK);
}

#[test]
fn certify_grassmann_span() {
    let code = golden_case(
        "certify_p1_span",
        &["certify", "--space", "P1", "--target", "x0^2; x1^2", "--r", "2"],
    );
    assert_eq!(code, EXIT_OK);
}

#[test]
fn defect_bound_two_double_points() {
    for (name, field) in [("defect_p6_q", "Q"), ("defect_p6_fp", "p=2147483647")] {
        let code = golden_case(
            name,
            &[
                "defect-bound", "--space", "P6", "--random-points", "2", "--mult", "2",
                "--full-length", "28", "--degree", "2", "--seed", "7", "--field", field,
            ],
        );
        assert_eq!(code, EXIT_OK);
    }
}

#[test]
fn ann_hilbert_saturate() {
    assert_eq!(
        golden_case("ann_p1", &["ann", "--space", "P1", "--target", "x0^2", "--degree", "1"]),
        EXIT_OK
    );
    let target = fixture("target_p2.txt");
    assert_eq!(
        golden_case(
            "ann_p2_file",
            &["ann", "--space", "P2", "--target-file", &target, "--degree", "3", "--field", "Q"]
        ),
        EXIT_OK
    );
    let points = fixture("points_p2.json");
    assert_eq!(
        golden_case(
            "hilbert_points_p2",
            &["hilbert", "--space", "P2", "--points", &points, "--window-box", "4"]
        ),
        EXIT_OK
    );
    let ideal = fixture("ideal_p1xp1.txt");
    assert_eq!(
        golden_case(
            "hilbert_ideal_p1xp1",
            &["hilbert", "--space", "P1xP1", "--ideal", &ideal, "--window-box", "2,2"]
        ),
        EXIT_OK
    );
    assert_eq!(
        golden_case("saturate_p1xp1", &["saturate", "--space", "P1xP1", "--ideal", &ideal]),
        EXIT_OK
    );
}

#[test]
fn randomized_commands() {
    assert_eq!(
        golden_case(
            "generic_hf_p2",
            &["generic-hf", "--space", "P2", "--r", "4", "--window-total", "4", "--trials", "20", "--seed", "11"]
        ),
        EXIT_OK
    );
    assert_eq!(
        golden_case(
            "add_point_p1xp1",
            &["add-point", "--space", "P1xP1", "--window-box", "2,2", "--trials", "20", "--seed", "5"]
        ),
        EXIT_OK
    );
}

#[test]
fn outputs_do_not_depend_on_threads() {
    let args = ["generic-hf", "--space", "P1xP2", "--r", "6", "--window-total", "3", "--trials", "30", "--seed", "2"];
    let mut one = args.to_vec();
    one.extend(["--threads", "1"]);
    let mut eight = args.to_vec();
    eight.extend(["--threads", "8"]);
    assert_eq!(invoke(&one), invoke(&eight));

    let scan = ["scan", "--space", "P2", "--target", "x0 x1 x2^3", "--r-max", "5"];
    let mut one = scan.to_vec();
    one.extend(["--threads", "1"]);
    let mut eight = scan.to_vec();
    eight.extend(["--threads", "8"]);
    assert_eq!(invoke(&one), invoke(&eight));
}

#[test]
fn budget_exhaustion_exits_3_and_never_reports_nonexistent() {
    let (code, out, _) = invoke(&[
        "certify", "--space", "P2", "--target", "x0 x1 x2^2", "--r", "3", "--max-nodes", "1",
    ]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(out.contains("undecided"));
    assert!(!out.contains("fails"));

    let (code, out, _) = invoke(&[
        "scan", "--space", "P2", "--target", "x0 x1 x2^2", "--r-max", "4", "--max-nodes", "1",
    ]);
    assert_eq!(code, EXIT_BUDGET);
    // r = 1 finishes within one node; r = 3 needs two
    let row3 = out.lines().find(|l| l.starts_with("3\t")).unwrap();
    assert!(row3.contains("UNDECIDED"), "{row3}");
    assert!(!out.contains("CANDIDATE"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_apolarity");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(
        status(&["certify", "--space", "P2", "--target", "x0 x1 x2^2", "--r", "3", "--max-nodes", "1"]),
        Some(EXIT_BUDGET)
    );
    assert_eq!(
        status(&["certify", "--space", "P2", "--target", "x0 x1 x2^2", "--r", "3"]),
        Some(EXIT_OK)
    );
    assert_eq!(status(&["certify", "--space", "P9x", "--target", "x0", "--r", "1"]), Some(EXIT_INPUT));
    assert_eq!(status(&["--help"]), Some(EXIT_OK));
}

#[test]
fn input_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["certify", "--space", "P2", "--target", "x0^2 + x1^2", "--r", "2"],
        &["certify", "--space", "P2", "--target", "x0^2", "--r", "2", "--window-box", "1"],
        &["certify", "--space", "P2", "--target", "x5", "--r", "1"],
        &["generic-hf", "--space", "P2", "--r", "3", "--window-total", "2"],
        &["ann", "--space", "P1", "--target", "x0^2", "--degree", "1", "--field", "p=12"],
        &["hilbert", "--space", "P2", "--window-box", "2"],
        &["saturate", "--space", "P2", "--ideal", "/nonexistent/file"],
        &["defect-bound", "--space", "P3", "--random-points", "2", "--mult", "2", "--full-length", "8",
          "--degree", "3", "--seed", "1", "--field", "p=3"],
        &["bogus"],
    ];
    for args in cases {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_INPUT, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn certificate_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.display().to_string();
    let (code, _, _) = invoke(&[
        "certify", "--space", "P2", "--target", "x0 x1 x2^2", "--r", "4", "--window-box", "auto",
        "--max-nodes", "1000", "--emit-json", &p,
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let c = &v["certificate"];
    assert_eq!(v["schema"], 1);
    assert_eq!(c["verdict"], "CANDIDATE");
    assert_eq!(c["window"]["degrees"].as_array().unwrap().len(), 5);
    let sizes: Vec<u64> = c["requirements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["required"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, vec![0, 0, 2, 6, 11]);
    let flag = c["flag"].as_array().unwrap();
    assert_eq!(flag.len(), 5);
    assert_eq!(flag[4]["size"], 11);
    assert_eq!(c["revalidated"], true);
}
