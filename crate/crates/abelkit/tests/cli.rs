//! End-to-end checks of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abelkit"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("spawn abelkit");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn eval_prints_reference_prefix() {
    let (stdout, _, code) = run(&["eval", "xexp-neg", "--x", "1/2", "--digits", "50"]);
    assert_eq!(code, 0);
    let first = stdout.lines().next().unwrap();
    assert_eq!(
        first,
        "1.75834255858972372062643806210115977597027119625090"
    );
}

#[test]
fn expand_prints_readable_layout() {
    let (stdout, _, code) = run(&["expand", "sin", "--terms", "10"]);
    assert_eq!(code, 0);
    let g_line = stdout.lines().find(|l| l.starts_with("g(x)")).unwrap();
    assert!(g_line.contains("79/1050 x^2"), "{}", g_line);
    assert!(g_line.contains("6/5 ln(x)"), "{}", g_line);
}

#[test]
fn expand_negated_presentation_for_w() {
    let (stdout, _, code) = run(&["expand", "lambert-w", "--terms", "8"]);
    assert_eq!(code, 0);
    assert!(stdout.lines().any(|l| l.starts_with("-g(x)")), "{}", stdout);
}

#[test]
fn half_iterate_reference() {
    let (stdout, _, code) = run(&["half", "arcsinh", "--x", "1", "--digits", "40"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout.trim(),
        "0.9355612833589182616399920249225053056758"
    );
}

#[test]
fn iterate_zero_is_identity() {
    let (stdout, _, code) = run(&["iterate", "xexp-neg", "--t", "0", "--x", "3/4", "--digits", "20"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "0.75000000000000000000");
}

#[test]
fn deterministic_output() {
    let a = run(&["eval", "arcsinh", "--x", "1", "--digits", "35"]);
    let b = run(&["eval", "arcsinh", "--x", "1", "--digits", "35"]);
    assert_eq!(a, b);
}

#[test]
fn pi_argument_parses() {
    let (stdout, _, code) = run(&["eval", "sin", "--x", "pi/2", "--digits", "30"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("2.089622719729543059537847276417"), "{}", stdout);
}

#[test]
fn usage_errors_exit_one() {
    let (_, stderr, code) = run(&["eval", "no-such-map", "--x", "1"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown function"), "{}", stderr);
    let (_, _, code) = run(&["eval", "xexp-neg", "--x", "zebra"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["nonsense-subcommand"]);
    assert_eq!(code, 1);
}

#[test]
fn numeric_failures_exit_two() {
    // 4 lies outside the basin (0, pi) image handling for sin: out of basin.
    let (_, stderr, code) = run(&["eval", "sin", "--x", "4", "--digits", "20"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("basin"), "{}", stderr);
    // Extrapolation without enough samples.
    let (_, _, code) = run(&["ml", "logistic", "1/2", "--nmax", "256"]);
    assert_eq!(code, 2);
}

#[test]
fn expand_csv_round_trips_lambda() {
    let (stdout, _, code) = run(&["expand", "xexp-neg", "--terms", "10", "--csv"]);
    assert_eq!(code, 0);
    // Rebuild the lambda rows and compare against a direct solver run.
    let base = abelkit::catalog::Catalog::xexp_neg();
    let ej = abelkit::solver::julia_series(&base, 10).unwrap();
    let mut seen = 0;
    for line in stdout.lines().filter(|l| l.starts_with("lambda,")) {
        let mut parts = line.split(',').skip(1);
        let e: i64 = parts.next().unwrap().parse().unwrap();
        let n: i64 = parts.next().unwrap().parse().unwrap();
        let d: i64 = parts.next().unwrap().parse().unwrap();
        assert_eq!(
            ej.lambda.coefficient_at(e).unwrap(),
            abelkit::rational::rat(n, d),
            "lambda x^{}",
            e
        );
        seen += 1;
    }
    assert_eq!(seen, ej.lambda.iter().count());
}

#[test]
fn list_names_cover_catalog() {
    let (stdout, _, code) = run(&["list"]);
    assert_eq!(code, 0);
    for name in [
        "logistic",
        "sin",
        "log1p",
        "one-minus-exp",
        "xexp-neg",
        "lambert-w",
        "x-over-1px2",
        "arcsinh",
        "tanh",
        "arctan",
        "x-over-sqrt1px",
        "pow-p",
    ] {
        assert!(stdout.contains(name), "missing {}", name);
    }
}

#[test]
fn plot_emits_expected_headers() {
    let (stdout, _, code) = run(&[
        "plot", "arcsinh", "--samples", "3", "--digits", "10", "--min", "1/2", "--max", "1",
    ]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next().unwrap(), "x,theta,half_iterate");
    assert_eq!(lines.count(), 3);
    let (stdout, _, code) = run(&[
        "plot", "f67", "--samples", "4", "--digits", "10", "--min", "1/2", "--max", "2",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("x,f67\n"));
}

#[test]
fn composite_eval_targets() {
    // Abel solution for x·e^x at 1 is the negated W-side value.
    let (stdout, _, code) = run(&["eval", "xexp", "--x", "1", "--digits", "30"]);
    assert_eq!(code, 0);
    assert!(
        stdout.starts_with("-1.125981776574495578385255878976"),
        "{}",
        stdout
    );
    let (stdout, _, code) = run(&["half", "x-plus-inv", "--x", "2", "--digits", "30"]);
    assert_eq!(code, 0);
    assert!(
        stdout.starts_with("2.267694160814621955698667566326"),
        "{}",
        stdout
    );
}
