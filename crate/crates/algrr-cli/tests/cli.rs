//! End-to-end tests of the `algrr` binary: exit codes, the one-record
//! JSON contract, stdout/stderr separation, environment-variable
//! precedence, and exact rendered values.

use std::ffi::OsStr;
use std::process::{Command, Output};

use serde_json::json;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Run the binary hermetically (the cutoff variable is cleared so the
/// ambient environment cannot change behavior).
fn algrr<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_algrr"))
        .args(args)
        .env_remove("ALGRR_CUTOFF_DEFAULT")
        .output()
        .expect("binary must run")
}

fn algrr_with_env<I, S>(args: I, cutoff: &str) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_algrr"))
        .args(args)
        .env("ALGRR_CUTOFF_DEFAULT", cutoff)
        .output()
        .expect("binary must run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Parse the single line a `--json` run must produce.
fn json_record(out: &Output) -> serde_json::Value {
    let text = stdout(out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1, "expected exactly one record, got: {text}");
    serde_json::from_str(lines[0]).expect("record must be valid JSON")
}

// ----------------------------------------------------------------------
// Exit-code contract: 0 = computed/holds, 1 = checked and false,
// 2 = usage, I/O, or malformed input.
// ----------------------------------------------------------------------

#[test]
fn identity_rank_two_exits_zero() {
    let out = algrr(["verify-identity", "--rank", "2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("identity holds"));
}

#[test]
fn identity_descriptor_file_exits_zero() {
    let out = algrr(["verify-identity", &fixture("identity_rank2.json")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
}

#[test]
fn perturbed_identity_is_falsified_with_exit_one() {
    let out = algrr(["verify-identity", &fixture("identity_perturbed.json")]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.contains("identity fails at"),
        "must locate the first discrepancy, got: {text}"
    );
}

#[test]
fn negative_positivity_verdict_exits_one() {
    let out = algrr(["positivity", &fixture("positivity_negative.json")]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("NotPositive"), "got: {text}");
    assert!(text.contains("-4"), "witness must be rendered, got: {text}");
}

#[test]
fn invalid_presentation_fails_check_with_exit_one() {
    let out = algrr(["check", &fixture("invalid_presentation.json")]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("Jacobi identity fails"));
}

#[test]
fn missing_file_exits_two_with_empty_stdout() {
    let out = algrr(["index", &fixture("does_not_exist.json")]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty(), "stdout must stay empty on errors");
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn wrong_descriptor_kind_exits_two() {
    let out = algrr(["index", &fixture("heisenberg.json")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cohomology"));

    let out = algrr(["euler", &fixture("classical_index.json")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn odd_leaf_dimension_exits_two() {
    let out = algrr(["compare-connes", "--k", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
    assert!(!stderr(&out).is_empty());
}

#[test]
fn malformed_expression_exits_two() {
    let out = algrr([
        "expand",
        "td(T)*",
        "--bundles",
        &fixture("bundles.json"),
        "--cutoff",
        "2",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    // Unknown subcommand and missing required argument both go through
    // the argument parser.
    let out = algrr(["no-such-command"]);
    assert_eq!(code(&out), 2);
    let out = algrr(["verify-identity"]);
    assert_eq!(code(&out), 2);
}

// ----------------------------------------------------------------------
// JSON mode: exactly one canonical record on stdout.
// ----------------------------------------------------------------------

#[test]
fn json_mode_emits_exactly_one_record() {
    let bundles = fixture("bundles.json");
    let cases: Vec<(Vec<String>, &str)> = vec![
        (
            vec!["verify-identity", "--rank", "1", "--json"]
                .into_iter()
                .map(String::from)
                .collect(),
            "identity-report",
        ),
        (
            [
                "expand",
                "td(T)",
                "--bundles",
                &bundles,
                "--cutoff",
                "3",
                "--json",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            "series",
        ),
        (
            vec![
                "cohomology".into(),
                fixture("heisenberg.json"),
                "--json".into(),
            ],
            "cohomology",
        ),
        (
            vec![
                "index".into(),
                fixture("classical_index.json"),
                "--json".into(),
            ],
            "index",
        ),
        (
            vec![
                "euler".into(),
                fixture("genus2_euler.json"),
                "--json".into(),
            ],
            "average-euler",
        ),
        (
            vec!["check".into(), fixture("heisenberg.json"), "--json".into()],
            "check-report",
        ),
        (
            vec!["compare-connes", "--k", "2", "--json"]
                .into_iter()
                .map(String::from)
                .collect(),
            "connes-comparison",
        ),
    ];
    for (args, kind) in cases {
        let out = algrr(&args);
        assert_eq!(code(&out), 0, "args {args:?}, stderr: {}", stderr(&out));
        let rec = json_record(&out);
        assert_eq!(rec["kind"], *kind, "args {args:?}");
    }
}

#[test]
fn json_record_is_emitted_even_for_negative_verdicts() {
    let out = algrr(["positivity", &fixture("positivity_negative.json"), "--json"]);
    assert_eq!(code(&out), 1);
    let rec = json_record(&out);
    assert_eq!(rec["kind"], "positivity");
    assert_eq!(rec["verdict"], "NotPositive");
    assert_eq!(rec["witness"], json!({"num": -4, "den": 1}));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let cases: Vec<Vec<String>> = vec![
        vec![
            "cohomology".into(),
            fixture("heisenberg.json"),
            "--json".into(),
        ],
        vec![
            "verify-identity".into(),
            "--rank".into(),
            "2".into(),
            "--json".into(),
        ],
        vec![
            "index".into(),
            fixture("foliated_index.json"),
            "--json".into(),
        ],
    ];
    for args in cases {
        let first = algrr(&args);
        let second = algrr(&args);
        assert_eq!(first.stdout, second.stdout, "args {args:?}");
    }
}

// ----------------------------------------------------------------------
// Environment-variable precedence for the truncation degree.
// ----------------------------------------------------------------------

#[test]
fn expand_requires_a_cutoff_from_flag_or_environment() {
    let bundles = fixture("bundles.json");
    let args = ["expand", "td(T)", "--bundles", &bundles];

    let none = algrr(args);
    assert_eq!(code(&none), 2, "no cutoff anywhere must be a usage error");

    let from_env = algrr_with_env(args, "2");
    assert_eq!(code(&from_env), 0);
    assert_eq!(
        stdout(&from_env).trim(),
        "1 + 1/2*c1(T) + 1/12*c1(T)^2",
        "rank-1 Todd through degree 2"
    );
}

#[test]
fn cutoff_flag_beats_the_environment() {
    let out = algrr_with_env(
        [
            "expand",
            "td(T)",
            "--bundles",
            &fixture("bundles.json"),
            "--cutoff",
            "1",
            "--json",
        ],
        "7",
    );
    assert_eq!(code(&out), 0);
    assert_eq!(json_record(&out)["cutoff"], 1);
}

#[test]
fn identity_check_reads_cutoff_from_environment() {
    let out = algrr_with_env(["verify-identity", "--rank", "1", "--json"], "3");
    assert_eq!(code(&out), 0);
    let rec = json_record(&out);
    assert_eq!(rec["cutoff"], 3);
    assert_eq!(rec["holds"], true);
}

#[test]
fn invalid_environment_cutoff_exits_two() {
    let out = algrr_with_env(
        ["expand", "td(T)", "--bundles", &fixture("bundles.json")],
        "zero",
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("ALGRR_CUTOFF_DEFAULT"));
}

// ----------------------------------------------------------------------
// Rendered values.
// ----------------------------------------------------------------------

#[test]
fn euler_reports_the_genus_two_value() {
    let out = algrr(["euler", &fixture("genus2_euler.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "average euler characteristic = -2");
}

#[test]
fn classical_index_value_and_prefactor() {
    let out = algrr([
        "index",
        &fixture("classical_index.json"),
        "--json",
        "--raw-prefactor",
    ]);
    assert_eq!(code(&out), 0);
    let rec = json_record(&out);
    // Degree 3 line bundle on a genus-2 curve: 3 + 1 - 2.
    assert_eq!(rec["value"], json!({"num": 2, "den": 1}));
    assert_eq!(rec["raw_prefactor"], "(-1)^1*(2*pi*i)^(-1)");
}

#[test]
fn foliated_index_value() {
    let out = algrr(["index", &fixture("foliated_index.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "index = -3");
}

#[test]
fn cohomology_prints_heisenberg_betti_numbers() {
    let out = algrr(["cohomology", &fixture("heisenberg.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "cohomology dimensions: 1 2 2 1");
}

#[test]
fn integrable_complex_structure_passes_check() {
    let out = algrr(["check", &fixture("complex_ok.json")]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("integrable"), "got: {text}");
    assert!(
        text.contains("(2, 2)"),
        "bigrading must be reported: {text}"
    );
}

#[test]
fn torsion_obstruction_fails_check() {
    let out = algrr(["check", &fixture("nijenhuis_fail.json"), "--json"]);
    assert_eq!(code(&out), 1);
    let rec = json_record(&out);
    assert_eq!(rec["valid"], false);
    assert_eq!(rec["complex_structure"]["almost_complex"], true);
    assert_eq!(rec["complex_structure"]["integrable"], false);
    assert_eq!(rec["complex_structure"]["violation"]["pair"], json!([1, 2]));
}

#[test]
fn connes_comparison_renders_both_sides() {
    let out = algrr(["compare-connes", "--k", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let rec = json_record(&out);
    assert_eq!(rec["holds"], true);
    assert_eq!(rec["algebroid_side"], "-(2*pi)^(-2)");
    assert_eq!(rec["connes_side"], "-(2*pi)^(-2)");
    assert_eq!(rec["ratio"], "(2*pi)^(-2)");
}
