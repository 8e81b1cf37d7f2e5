//! End-to-end checks of the command line interface: exit codes, diagnostic
//! positions, and machine-format reports parsing back into library types.

use std::fs;
use std::path::PathBuf;

use serde_json::Value;
use twocat::category::CategoryData;
use twocat::cli::run_with;
use twocat::finality::{Certificate, FinalityReport, Overall};
use twocat::homotopy::{Pi1Report, Verdict};
use twocat::{validate_two_category, TwoCategory, ValidationReport};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["twocat".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Writes `contents` under the test-scoped temp dir and returns the path.
fn scratch(name: &str, contents: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    p.push(name);
    fs::write(&p, contents).expect("scratch file writes");
    p.to_string_lossy().into_owned()
}

#[test]
fn verdict_commands_exit_zero_even_for_negative_verdicts() {
    let (code, out, err) = run(&["validate", &fixture("terminal.cat")]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(out.contains("ok"));

    let (code, out, _) = run(&["pi1", &fixture("walking_pair.cat")]);
    assert_eq!(code, 0);
    assert!(out.contains("Nontrivial"));

    // A failed finality check is still a successful computation.
    let (code, out, _) = run(&["check-final", &fixture("collapse.fun")]);
    assert_eq!(code, 0);
    assert!(out.contains("overall: NotFinal"));

    let (code, out, _) = run(&["check-initial", &fixture("include_by.fun")]);
    assert_eq!(code, 0);
    assert!(out.contains("overall: Final"));

    // An exhausted search bound is an answer, not an error.
    let (code, out, _) = run(&[
        "oracle",
        &fixture("walking_pair.cat"),
        "x +f",
        "x +g",
        "--bound",
        "8",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("not certified within bound 8"));
}

#[test]
fn oracle_certifies_parallel_arrows_joined_by_a_two_cell() {
    let (code, out, _) = run(&[
        "oracle",
        &fixture("sphere.cat"),
        "x +f",
        "x +g",
        "--bound",
        "6",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("certified: the paths are homotopic"));

    let (code, out, _) = run(&[
        "oracle",
        &fixture("sphere.cat"),
        "x +f -g +f",
        "x +f",
        "--bound",
        "6",
        "--format",
        "machine",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).expect("machine output is JSON");
    assert_eq!(v["certified"], Value::Bool(true));
    assert_eq!(v["bound"], serde_json::json!(6));
}

#[test]
fn parse_failures_list_every_error_with_positions() {
    let path = scratch(
        "two_errors.cat",
        "object a\nwidget b\nmor u : a -> a\nmor v a -> a\n",
    );
    let (code, out, err) = run(&["pi1", &path]);
    assert_eq!(code, 2);
    assert!(out.is_empty(), "no report on stdout, got: {out}");
    // Both diagnostics, each with file:line:col, not just the first.
    assert!(
        err.contains(&format!("{path}:2:1: unknown directive `widget`")),
        "got: {err}"
    );
    assert!(
        err.contains(&format!("{path}:4:7: expected `:`, found `a`")),
        "got: {err}"
    );
}

#[test]
fn unresolved_names_point_at_the_offending_token() {
    let path = scratch("bad_ref.cat", "object a\nmor u : a -> missing\n");
    let (code, _, err) = run(&["validate", &path]);
    assert_eq!(code, 2);
    assert!(
        err.contains(&format!(
            "{path}:2:14: unknown object id `missing` in mor u"
        )),
        "got: {err}"
    );
}

#[test]
fn law_failures_print_the_validation_report_and_exit_two() {
    // Well-formed tables, but `s` has no vertical inverse and the whisker
    // tables skip it, so four separate laws fail.
    let path = scratch(
        "broken_laws.cat",
        concat!(
            "object a\n",
            "mor i_a : a -> a\nmor e : a -> a\n",
            "id1 a = i_a\n",
            "cell ii_a : i_a => i_a\ncell t : e => e\ncell s : e => e\n",
            "id2 i_a = ii_a\nid2 e = t\n",
            "comp e . e = i_a\ncomp e . i_a = e\ncomp i_a . e = e\ncomp i_a . i_a = i_a\n",
            "vcomp t * t = t\nvcomp t * s = s\nvcomp s * t = s\nvcomp s * s = s\n",
            "inv t = t\ninv s = s\n",
        ),
    );
    let (code, out, _) = run(&["validate", &path]);
    assert_eq!(code, 2);
    assert!(out.contains("inv2-left"), "got: {out}");
    assert!(out.contains("lwhisker-totality"), "got: {out}");

    let (code, out, _) = run(&["validate", &path, "--format", "machine"]);
    assert_eq!(code, 2);
    let report: ValidationReport = serde_json::from_str(&out).expect("report parses");
    assert!(!report.ok);
    assert_eq!(report.violations.len(), 4);
}

#[test]
fn functor_files_resolve_references_relative_to_their_own_directory() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for cat in ["codiscrete_by.cat", "codiscrete_aby.cat"] {
        fs::copy(fixture(cat), dir.join(cat)).expect("fixture copies");
    }
    let path = scratch(
        "local_include.fun",
        "dom codiscrete_by.cat\ncod codiscrete_aby.cat\nob b -> b\nob y -> y\nm1 c_b_y -> c_b_y\nm1 c_y_b -> c_y_b\n",
    );
    let (code, out, err) = run(&["check-final", &path]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(out.contains("overall: Final"));
}

#[test]
fn functor_image_errors_carry_positions() {
    let path = scratch(
        "bad_image.fun",
        &format!(
            "dom {}\ncod {}\nob b -> nowhere\nm1 c_b_y -> c_b_y\n",
            fixture("codiscrete_by.cat"),
            fixture("codiscrete_aby.cat")
        ),
    );
    let (code, _, err) = run(&["check-final", &path]);
    assert_eq!(code, 2);
    assert!(
        err.contains(&format!("{path}:3:9: unknown object id `nowhere` in ob b")),
        "got: {err}"
    );
}

#[test]
fn out_of_range_requests_are_refused_with_exit_three() {
    let (code, out, err) = run(&[
        "oracle",
        &fixture("sphere.cat"),
        "x +f",
        "x +g",
        "--bound",
        "99",
    ]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(
        err.starts_with("refused: bound 99 exceeds the supported maximum of 16"),
        "got: {err}"
    );

    // Transport demands certified simply connected slices.
    let (code, _, err) = run(&[
        "transport",
        &fixture("collapse.fun"),
        &fixture("terminal_chain.dia"),
        &fixture("cone_collapse.cone"),
    ]);
    assert_eq!(code, 3);
    assert!(
        err.contains("refused: slice at `pt` is not certified simply connected"),
        "got: {err}"
    );
}

#[test]
fn oracle_rejects_paths_with_different_endpoints() {
    let (code, _, err) = run(&[
        "oracle",
        &fixture("sphere.cat"),
        "x +f",
        "y +g",
        "--bound",
        "4",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("different endpoints"), "got: {err}");

    let (code, _, err) = run(&[
        "oracle",
        &fixture("sphere.cat"),
        "x +nope",
        "x +f",
        "--bound",
        "4",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown 1-cell `nope`"), "got: {err}");
}

#[test]
fn missing_files_are_reported_with_exit_two() {
    let (code, _, err) = run(&["validate", "/no/such/file.cat"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read file"), "got: {err}");
}

#[test]
fn machine_reports_parse_back_into_library_types() {
    let (code, out, _) = run(&["pi1", &fixture("sphere.cat"), "--format", "machine"]);
    assert_eq!(code, 0);
    let report: Pi1Report = serde_json::from_str(&out).expect("pi1 report parses");
    assert!(report.nonempty);
    assert!(report.connected);
    assert_eq!(report.simply_connected, Verdict::Trivial);
    assert_eq!(report.components.len(), 1);

    let (code, out, _) = run(&[
        "check-final",
        &fixture("collapse.fun"),
        "--format",
        "machine",
    ]);
    assert_eq!(code, 0);
    let report: FinalityReport = serde_json::from_str(&out).expect("finality report parses");
    assert_eq!(report.overall, Overall::NotFinal);
    assert_eq!(
        report.certificate,
        Some(Certificate::NontrivialPi1 {
            base: "pt".into(),
            invariant_factors: vec![],
            free_rank: 1,
        })
    );

    let (code, out, _) = run(&["validate", &fixture("sphere.cat"), "--format", "machine"]);
    assert_eq!(code, 0);
    let report: ValidationReport = serde_json::from_str(&out).expect("validation report parses");
    assert!(report.ok);
    assert!(report.violations.is_empty());
}

#[test]
fn generated_categories_pass_their_own_validation() {
    let (code, out, _) = run(&[
        "gen-random",
        "--objects",
        "4",
        "--mor",
        "7",
        "--cells",
        "6",
        "--seed",
        "11",
    ]);
    assert_eq!(code, 0);
    let path = scratch("generated.cat", &out);
    let (code, report, err) = run(&["validate", &path]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(report.contains("ok"));
    let (code, _, _) = run(&["pi1", &path]);
    assert_eq!(code, 0);

    // The machine format carries the same category as structured data.
    let (code, out, _) = run(&[
        "gen-random",
        "--objects",
        "4",
        "--mor",
        "7",
        "--cells",
        "6",
        "--seed",
        "11",
        "--format",
        "machine",
    ]);
    assert_eq!(code, 0);
    let data: CategoryData = serde_json::from_str(&out).expect("category data parses");
    let cat = TwoCategory::from_data(&data, true).expect("generated data builds");
    assert!(validate_two_category(&cat).ok);

    // Same seed, same category; new seed, new category.
    let again = run(&[
        "gen-random",
        "--objects",
        "4",
        "--mor",
        "7",
        "--cells",
        "6",
        "--seed",
        "11",
    ]);
    assert_eq!(again.1, fs::read_to_string(&path).unwrap());
    let other = run(&[
        "gen-random",
        "--objects",
        "4",
        "--mor",
        "7",
        "--cells",
        "6",
        "--seed",
        "12",
    ]);
    assert_eq!(other.0, 0);
    assert_ne!(other.1, again.1);
}

#[test]
fn transport_reports_the_cone_and_unit_status() {
    let fun = fixture("include_by.fun");
    let dia = fixture("arrow_aby.dia");
    let cone = fixture("cone_by.cone");

    let (code, out, err) = run(&["transport", &fun, &dia, &cone]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(out.contains("vertex"));
    assert!(out.contains("eta invertible: true"));

    let (code, out, _) = run(&["transport", &fun, &dia, &cone, "--format", "machine"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).expect("machine output is JSON");
    for key in ["choices", "eta_invertible", "legs", "squares", "vertex"] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(v["eta_invertible"], Value::Bool(true));

    // An explicit choice file steers the chosen slice objects.
    let (code, out, _) = run(&[
        "transport",
        &fun,
        &dia,
        &cone,
        "--choices",
        &fixture("choices_y.choice"),
        "--format",
        "machine",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).expect("machine output is JSON");
    assert_eq!(v["choices"]["y"]["object"], Value::String("y".into()));
    assert_eq!(v["eta_invertible"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    let (code, _, err) = run(&["frobnicate", "x"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let (code, _, err) = run(&["pi1"]);
    assert_eq!(code, 2, "missing argument is a usage error");
    assert!(err.contains("required"));

    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Tools for finite strict (2,1)-categories"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let circle = fixture("pseudo_circle.cat");
    let fun = fixture("include_by.fun");
    let dia = fixture("arrow_aby.dia");
    let cone = fixture("cone_by.cone");
    let cases: [&[&str]; 3] = [
        &["pi1", &circle, "--format", "machine"],
        &["check-final", &fun],
        &["transport", &fun, &dia, &cone, "--format", "machine"],
    ];
    for args in cases {
        let first = run(args);
        let second = run(args);
        assert_eq!(first, second, "unstable output for {args:?}");
    }
}
