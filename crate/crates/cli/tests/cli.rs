use std::io::Write;
use std::process::Command;

use eo_toolkit::error::{CliError, EXIT_INTERNAL, EXIT_USAGE, EXIT_VERDICT};
use eo_toolkit::report::Report;
use eo_toolkit::run;
use serde_json::Value;

fn invoke(args: &[&str]) -> eo_toolkit::Invocation {
    run(std::iter::once("eo-tool").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = invoke(&full);
    let report: Report = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stderr));
    (out.code, report)
}

fn grid_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn decompose_small_window() {
    let (code, r) = json(&["decompose", "--p", "2", "--k", "1", "--c", "0", "--top", "8"]);
    assert_eq!(code, 0);
    assert_eq!(r.command, "decompose");
    assert_eq!(r.results["jordan_blocks"], serde_json::json!([1, 2, 2, 2, 2]));
    assert!(r.verdicts.iter().all(|v| v.pass && !v.paper_ref.is_empty()));
}

#[test]
fn bound_at_p3() {
    let (code, r) = json(&["bound", "--p", "3", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["sphere_valuation"], 2);
    assert_eq!(r.results["bound_valuation"], 2);
    assert_eq!(r.results["bound_order"], "9");
}

#[test]
fn big_orders_are_printed_exactly() {
    let (_, r) = json(&["bound", "--p", "2", "--k", "7"]);
    assert_eq!(r.results["bound_valuation"], 127);
    assert_eq!(r.results["bound_order"], "170141183460469231731687303715884105728");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bound", "--p", "4", "--k", "1"][..],
        &["bound", "--p", "3", "--k", "0"],
        &["frobnicate"],
        &["decompose", "--p", "3"],
        &["decompose", "--p", "3", "--c", "5", "--top", "2"],
        &["finite-support", "--p", "3", "--c", "1", "--top", "30"],
        &["verify-tk", "--p", "2", "--k", "3", "--precision", "2"],
    ] {
        let out = invoke(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let out = invoke(&["--help"]);
    assert_eq!(out.code, 0);
    for sub in ["decompose", "free-gens", "finite-support", "thom-linear", "tate-check", "ko-pattern",
        "orient-order", "bound", "known-orders", "order-p-element", "verify-tk", "sweep"]
    {
        assert!(out.stdout.contains(sub), "{sub}");
    }
}

#[test]
fn internal_errors_map_to_exit_3() {
    let e = CliError::from(eo_algebra::Error::Inconsistent("x"));
    assert_eq!(e.exit_code(), EXIT_INTERNAL);
    let e = CliError::from(eo_algebra::Error::NotPrime(4));
    assert_eq!(e.exit_code(), EXIT_USAGE);
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let cases: &[&[&str]] = &[
        &["decompose", "--p", "3", "--k", "1", "--c", "-3", "--top", "20"],
        &["free-gens", "--p", "2", "--k", "2", "--c", "2", "--top", "30"],
        &["finite-support", "--p", "3", "--top", "36"],
        &["thom-linear", "--p", "3", "--c", "1", "--top", "12"],
        &["tate-check", "--p", "2", "--k", "2"],
        &["ko-pattern", "--top", "12"],
        &["orient-order", "--p", "5", "--n", "100"],
        &["known-orders", "--p", "2", "--k", "3", "--n", "10"],
        &["order-p-element", "--p", "3", "--k", "1"],
        &["verify-tk", "--p", "2", "--k", "2", "--precision", "8"],
    ];
    for args in cases {
        let (_, mut a) = json(args);
        let text = serde_json::to_string_pretty(&a).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        let (_, mut b) = json(args);
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a.to_json(), b.to_json(), "{args:?}");
    }
}

#[test]
fn text_output_lists_verdicts() {
    let out = invoke(&["verify-tk", "--p", "3", "--k", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("verify-tk\n"));
    assert_eq!(out.stdout.matches("  PASS  ").count(), 5);
}

#[test]
fn thom_shift_off_residue_is_reported_not_failed() {
    let (code, r) = json(&["thom-linear", "--p", "3", "--c", "1", "--top", "12"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["linear"], false);
}

#[test]
fn sweep_over_union_grid_passes() {
    let f = grid_file(
        r#"[{"p":2,"k":1,"c":0,"top":24},{"p":2,"k":2,"c":4,"top":40},{"p":3,"k":1,"c":-3,"top":30}]"#,
    );
    let (code, r) = json(&["sweep", "--grid", f.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{:?}", r.results);
    assert_eq!(r.verdicts.len(), 3);
    assert_eq!(r.results["failed"], 0);
}

#[test]
fn empty_sweep_exits_zero() {
    let f = grid_file("[]");
    let (code, r) = json(&["sweep", "--grid", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(r.verdicts.is_empty());
    assert_eq!(r.results["points"], Value::Array(vec![]));
}

#[test]
fn sweep_isolates_failing_points() {
    let f = grid_file(r#"[{"p":3,"k":1,"c":1,"top":30},{"p":3,"k":1,"c":0,"top":30},{"p":6,"k":1,"c":0,"top":9}]"#);
    let (code, r) = json(&["sweep", "--grid", f.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_VERDICT);
    let points = r.results["points"].as_array().unwrap();
    assert!(points[0]["error"].as_str().unwrap().contains("not divisible"));
    assert!(points[1]["error"].is_null());
    assert!(points[2]["error"].as_str().unwrap().contains("not prime"));
    assert_eq!(r.verdicts.iter().map(|v| v.pass).collect::<Vec<_>>(), [false, true, false]);
}

#[test]
fn malformed_grid_is_a_usage_error() {
    let f = grid_file(r#"{"p":2}"#);
    let out = invoke(&["sweep", "--grid", f.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_eo-tool");
    let ok = Command::new(bin).args(["bound", "--p", "3", "--k", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["bound", "--p", "4", "--k", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not prime"));
}
