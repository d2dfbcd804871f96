//! End-to-end checks of the command-line interface: exit codes, JSON shape,
//! and the documented golden outputs.

use std::process::{Command, Output};

fn trisum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn prime3_exit_codes_follow_the_verdict() {
    let out = trisum(&["prime3", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("prime congruent to 3 (mod 4)"));

    let out = trisum(&["prime3", "15"]);
    assert_eq!(out.status.code(), Some(1));

    // even input is a usage error
    let out = trisum(&["prime3", "8"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn divisors1mod4_verdicts() {
    assert_eq!(trisum(&["divisors1mod4", "5"]).status.code(), Some(0));
    assert_eq!(trisum(&["divisors1mod4", "21"]).status.code(), Some(1));
    assert_eq!(trisum(&["divisors1mod4", "1"]).status.code(), Some(64));
}

#[test]
fn decompose_reports_non_representable_with_exit_2() {
    let out = trisum(&["decompose", "two-odd-sq-tri", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("prime congruent to 3 mod 4"));

    let out = trisum(&["decompose", "two-odd-sq-tri", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out), vec!["3 = 1² + 1² + T_1"]);

    let out = trisum(&["decompose", "odd-sq-two-tri", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = trisum(&["decompose", "sq-odd-sq-tri", "216"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn decompose_json_carries_the_certificate_fields() {
    let out = trisum(&["decompose", "two-odd-sq-tri", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    let v: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(v["form"], "two-odd-sq-tri");
    assert_eq!(v["status"], "representable");
    assert_eq!(v["n"], 10);
    assert!(v["a"].is_i64() && v["b"].is_i64() && v["v"].is_i64());
    assert!(
        v.get("provenance").is_none(),
        "provenance only with --verbose"
    );

    let out = trisum(&["decompose", "two-odd-sq-tri", "4", "--json", "--verbose"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_lines(&out)[0]).unwrap();
    assert_eq!(v["provenance"]["divisor"], 9);
    assert_eq!(v["provenance"]["cofactor"], 1);
}

#[test]
fn exceptions_golden_json_lines() {
    let out = trisum(&["exceptions", "--max", "1029", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 25, "one JSON line per exception");
    let ns: Vec<u64> = lines
        .iter()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["n"]
                .as_u64()
                .unwrap()
        })
        .collect();
    assert_eq!(ns, trisum::KNOWN_TWO_ODD_SQ_TRI_EXCEPTIONS.to_vec());
}

#[test]
fn exceptions_small_range() {
    let out = trisum(&["exceptions", "--max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out), vec!["4", "7", "9"]);
}

#[test]
fn verify_emits_the_stable_json_schema() {
    let out = trisum(&["verify", "T1.1i", "--max", "300", "--jobs", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    let v: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(v["theorem_id"], "T1.1i");
    assert_eq!(v["range_checked"], serde_json::json!([1, 300]));
    assert_eq!(v["status"], "pass");
    assert_eq!(v["counterexamples"], serde_json::json!([]));
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn verify_rejects_unknown_ids() {
    let out = trisum(&["verify", "T9.9", "--max", "10"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("valid ids"));
}

#[test]
fn count_and_enum_match_the_documented_examples() {
    let out = trisum(&["count", "sq-tri-tri", "2", "--parity-x", "odd"]);
    assert_eq!(stdout_lines(&out), vec!["4"]);

    let out = trisum(&["enum", "sq-sq-tri", "1", "--same-parity", "true", "--json"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    let v: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(
        (v["x"].as_i64(), v["y"].as_i64(), v["z"].as_i64()),
        (Some(0), Some(0), Some(1))
    );

    let out = trisum(&[
        "enum",
        "three-squares",
        "5",
        "--structure",
        "one-odd-two-even",
    ]);
    assert_eq!(stdout_lines(&out), vec!["(1, 0, 2)"]);

    // flag validation
    let out = trisum(&["count", "sq-tri-tri", "2", "--same-parity", "true"]);
    assert_eq!(out.status.code(), Some(64));
    let out = trisum(&["count", "three-squares", "9", "--all-odd"]);
    assert_eq!(out.status.code(), Some(64));
    let out = trisum(&["count", "three-squares", "9", "--parity-x", "odd"]);
    assert_eq!(out.status.code(), Some(64));
    let out = trisum(&["enum", "sq-sq-tri", "5", "--structure", "all-odd"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn hurwitz_check_cross_validates() {
    let out = trisum(&["hurwitz", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out), vec!["102"]);

    let out = trisum(&["hurwitz", "9", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_lines(&out)[0].contains("102"));

    let out = trisum(&["hurwitz", "9", "--check", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_lines(&out)[0]).unwrap();
    assert_eq!(v["count"], 102);
    assert_eq!(v["brute_force"], 102);
    assert_eq!(v["status"], "pass");

    // even input is a usage error
    assert_eq!(trisum(&["hurwitz", "2"]).status.code(), Some(64));
}

#[test]
fn guard_env_variable_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_trisum"))
        .args(["verify", "T1.1i", "--max", "1000"])
        .env("TRISUM_MAX_GUARD", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));

    let out = Command::new(env!("CARGO_BIN_EXE_trisum"))
        .args(["verify", "T1.1i", "--max", "1000"])
        .env("TRISUM_MAX_GUARD", "2000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_64_and_help_exits_0() {
    assert_eq!(trisum(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(trisum(&[]).status.code(), Some(64));
    assert_eq!(trisum(&["--help"]).status.code(), Some(0));
    assert_eq!(
        trisum(&["decompose", "two-odd-sq-tri", "0"]).status.code(),
        Some(64)
    );
}
