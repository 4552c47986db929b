//! End-to-end tests against the built binary: output schema, determinism,
//! exit codes, and agreement between evaluation routes.

use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

/// Mirror of the binary's output record, in the same field order, so JSON
/// round-trip checks exercise the exact schema.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
struct Record {
    command: String,
    inputs: BTreeMap<String, Json>,
    value: Json,
    decomposition: Option<Vec<(String, String)>>,
    error_estimate: Option<f64>,
    method: String,
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonic-sums"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn code_of(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn json_record(args: &[&str]) -> (Record, String) {
    let mut full: Vec<&str> = args.to_vec();
    full.extend_from_slice(&["--format", "json"]);
    let output = run(&full);
    assert_eq!(code_of(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let line = stdout_of(&output);
    let record: Record = serde_json::from_str(line.trim_end()).expect("valid record JSON");
    (record, line)
}

fn value_f64(record: &Record) -> f64 {
    record.value.as_f64().expect("numeric value")
}

#[test]
fn closed_sum_golden_record() {
    let (record, line) = json_record(&["sum", "S", "2", "closed"]);
    assert_eq!(record.command, "sum");
    assert_eq!(record.method, "closed");
    assert_eq!(record.inputs["family"], Json::from("S"));
    assert_eq!(record.inputs["k"], Json::from(2));
    let expected = 0.75 * 2f64.ln() - std::f64::consts::PI / 8.0;
    assert!((value_f64(&record) - expected).abs() < 1e-13);
    assert_eq!(record.error_estimate, None);
    let decomposition = record.decomposition.as_ref().expect("closed form decomposes");
    assert!(decomposition.iter().any(|(c, a)| c == "3/4" && a == "log(2)"));

    // Keys appear in the documented order on the wire. Scan forward so a
    // same-named key nested inside `inputs` cannot satisfy a later needle.
    let mut offset = 0;
    for key in [
        "\"command\"",
        "\"inputs\"",
        "\"value\"",
        "\"decomposition\"",
        "\"error_estimate\"",
        "\"method\"",
    ] {
        match line[offset..].find(key) {
            Some(at) => offset += at + key.len(),
            None => panic!("{key} missing or out of order: {line}"),
        }
    }
}

#[test]
fn json_round_trips_for_every_command_shape() {
    for args in [
        &["sum", "S", "2", "closed"][..],
        &["sum", "T", "5", "accel", "--tol", "1e-9"][..],
        &["sum", "derived", "integral"][..],
        &["verify", "gap-integral"][..],
        &["pi2", "1000", "4"][..],
    ] {
        let (record, line) = json_record(args);
        let reserialized = serde_json::to_string(&record).expect("serializes");
        assert_eq!(reserialized, line.trim_end(), "round trip changed the record for {args:?}");
        let reparsed: Record = serde_json::from_str(&reserialized).expect("parses again");
        assert_eq!(reparsed, record);
    }
}

#[test]
fn identical_invocations_are_bit_identical() {
    for args in [
        &["sum", "U", "4", "accel", "--tol", "1e-9", "--format", "json"][..],
        &["verify", "root-sets", "--seed", "7", "--cases", "20", "--format", "json"][..],
        &["pi2", "512", "10", "--parallel", "3", "--format", "json"][..],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(code_of(&first), 0);
        assert_eq!(first.stdout, second.stdout, "output for {args:?} not reproducible");
    }
}

#[test]
fn accel_agrees_with_closed_to_the_requested_tolerance() {
    let (accel, _) = json_record(&["sum", "U", "3", "accel", "--tol", "1e-9"]);
    let (closed, _) = json_record(&["sum", "U", "3", "closed"]);
    assert!((value_f64(&accel) - value_f64(&closed)).abs() <= 1e-9);
}

#[test]
fn derived_routes_agree() {
    let (closed, _) = json_record(&["sum", "derived", "closed"]);
    let (accel, _) = json_record(&["sum", "derived", "accel"]);
    let (integral, _) = json_record(&["sum", "derived", "integral"]);
    let reference = value_f64(&closed);
    assert!((value_f64(&accel) - reference).abs() <= 1e-8);
    assert!((value_f64(&integral) - reference).abs() <= 1e-8);
}

#[test]
fn k_equal_one_sums_to_zero() {
    let output = run(&["sum", "T", "1", "closed"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(stdout_of(&output).trim_end(), "T(1) = 0");
    let (record, _) = json_record(&["sum", "T", "1", "closed"]);
    assert_eq!(value_f64(&record), 0.0);
    assert_eq!(record.decomposition, Some(vec![]));
}

#[test]
fn usage_and_domain_errors_exit_two_with_clean_stdout() {
    for args in [
        &["pi2", "0", "0"][..],                      // count below range
        &["pi2", "0", "17"][..],                     // count above range
        &["pi2", "100000001", "1"][..],              // position past the cap
        &["sum", "S", "0", "closed"][..],            // k = 0 is out of domain
        &["sum", "X", "2", "closed"][..],            // unknown family
        &["sum", "S", "two", "closed"][..],          // non-numeric k
        &["sum", "S", "2", "bogus"][..],             // unknown method
        &["sum", "S", "2"][..],                      // missing method
        &["sum", "derived", "2", "accel"][..],       // derived takes no k
        &["sum", "S", "2", "closed", "--tol", "1e-9"][..], // flag on wrong method
        &["sum", "S", "2", "direct", "--tol", "1e-9"][..], // flag on wrong method
        &["verify", "nonesuch"][..],                 // unknown suite
        &["pi2", "0", "4", "--parallel", "0"][..],   // zero workers
        &["sum", "S", "1", "integral"][..],          // integral route needs k >= 2
    ] {
        let output = run(args);
        assert_eq!(code_of(&output), 2, "args {args:?}");
        assert!(output.stdout.is_empty(), "stdout not clean for {args:?}");
        assert!(!output.stderr.is_empty(), "no diagnostic for {args:?}");
    }
    // Flag parse errors from the argument parser share the same code.
    let output = run(&["sum", "S", "2", "closed", "--nope"]);
    assert_eq!(code_of(&output), 2);
}

#[test]
fn convergence_failures_exit_three() {
    let output = run(&["sum", "T", "2", "accel", "--tol", "1e-15"]);
    assert_eq!(code_of(&output), 3);
    assert!(output.stdout.is_empty());
    let diagnostic = String::from_utf8_lossy(&output.stderr).to_string();
    assert!(diagnostic.contains("convergence"), "stderr was: {diagnostic}");
}

#[test]
fn every_suite_passes_end_to_end() {
    for suite in [
        "functional-eq",
        "gap-integral",
        "ratio-integral",
        "alpha-kernel",
        "root-sets",
        "cross",
    ] {
        let args: Vec<&str> = if suite == "root-sets" {
            vec!["verify", suite, "--cases", "20"]
        } else {
            vec!["verify", suite]
        };
        let output = run(&args);
        assert_eq!(
            code_of(&output),
            0,
            "suite {suite} failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        assert!(stdout_of(&output).contains("pass"));
    }
}

#[test]
fn known_digit_windows() {
    let output = run(&["pi2", "0", "8"]);
    assert_eq!(code_of(&output), 0);
    assert_eq!(
        stdout_of(&output).trim_end(),
        "frac(pi^2) hex digits [0, 8) = de9e64df"
    );
    let (record, _) = json_record(&["pi2", "1000", "4"]);
    assert_eq!(record.value, Json::from("29f3"));
    assert_eq!(record.method, "bbp");
}

#[test]
fn parallel_digit_runs_match_serial() {
    for (start, count) in [(64u64, 12u32), (9999, 16), (0, 5)] {
        let (serial, _) = json_record(&["pi2", &start.to_string(), &count.to_string()]);
        for workers in ["2", "3", "99"] {
            let (parallel, _) = json_record(&[
                "pi2",
                &start.to_string(),
                &count.to_string(),
                "--parallel",
                workers,
            ]);
            assert_eq!(
                parallel.value, serial.value,
                "digits diverged at start={start} count={count} workers={workers}"
            );
        }
    }
}

#[test]
fn stdout_is_exactly_one_line() {
    for args in [
        &["sum", "S", "3", "closed", "--format", "json"][..],
        &["verify", "alpha-kernel", "--format", "json"][..],
        &["pi2", "10", "3", "--format", "json"][..],
        &["sum", "S", "3", "closed"][..],
    ] {
        let output = run(args);
        assert_eq!(code_of(&output), 0);
        let text = stdout_of(&output);
        assert!(text.ends_with('\n'));
        assert_eq!(text.matches('\n').count(), 1, "extra lines in {args:?}: {text:?}");
    }
}
