//! End-to-end tests of the `hamtorus` binary: exit-code contract, output
//! shapes, machine-record round-trips, and the verification sweep.

use std::process::{Command, Output};
use std::time::Instant;

use hamtorus_cli::records::{BuildRecord, ScanRecord, VerdictRecord, VerifyRecord};

fn hamtorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamtorus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn test_hamiltonian_pair_exits_zero() {
    let out = hamtorus(&["test", "3", "5"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("hamiltonian: true"));
}

#[test]
fn test_non_hamiltonian_pair_reports_condition() {
    let out = hamtorus(&["test", "4", "6"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout_of(&out).contains("hamiltonian: false (coprimality)"));
}

#[test]
fn test_json_record_round_trips() {
    let out = hamtorus(&["test", "3", "5", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let line = stdout_of(&out);
    let line = line.trim();
    let record: VerdictRecord = serde_json::from_str(line).expect("valid record");
    assert_eq!(record.schema_version, 1);
    assert_eq!(record.command, "test");
    assert!(record.hamiltonian);
    assert_eq!(record.witnesses["⟨0|-2⟩"], "3");
    assert_eq!(serde_json::to_string(&record).unwrap(), line);
}

#[test]
fn test_usage_errors_exit_two() {
    for args in [
        &["test", "1", "5"] as &[&str],
        &["test", "abc", "5"],
        &["test", "+3", "5"],
        &["test", "3"],
        &["test-deleted", "3", "5", "0", "2"],
        &["test-deleted", "3", "5", "3", "2"],
    ] {
        let out = hamtorus(args);
        assert_eq!(exit_code(&out), 2, "args {args:?}");
    }
}

#[test]
fn test_thousand_digit_inputs_are_fast() {
    // Consecutive integers are coprime.
    let mut m = String::from("9");
    for k in 0..999u32 {
        m.push(char::from(b'0' + ((k * 7 + 3) % 10) as u8));
    }
    let mut n = m.clone();
    m.pop();
    n.pop();
    m.push('0');
    n.push('1');
    let start = Instant::now();
    let out = hamtorus(&["test", &m, &n]);
    let elapsed = start.elapsed();
    assert!(matches!(exit_code(&out), 0 | 1));
    assert!(
        elapsed < std::time::Duration::from_secs(1),
        "1000-digit verdict took {elapsed:?}"
    );
}

#[test]
fn test_deleted_examples() {
    let out = hamtorus(&["test-deleted", "3", "5", "2", "2"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("swapped"));

    let out = hamtorus(&["test-deleted", "3", "5", "1", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("orientation: original"));

    let out = hamtorus(&["test-deleted", "4", "6", "2", "2"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn test_deleted_json_round_trips() {
    let out = hamtorus(&["test-deleted", "3", "5", "2", "2", "--json"]);
    let line = stdout_of(&out);
    let line = line.trim();
    let record: VerdictRecord = serde_json::from_str(line).expect("valid record");
    assert_eq!(record.command, "test-deleted");
    assert_eq!(record.a.as_deref(), Some("2"));
    assert!(record.swapped_orientation);
    assert_eq!(serde_json::to_string(&record).unwrap(), line);
}

#[test]
fn build_deleted_edge_list_shape() {
    let out = hamtorus(&["build", "3", "5", "--target", "deleted"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    // 11 vertices plus the first vertex repeated.
    assert_eq!(lines.len(), 12);
    assert_eq!(lines.first(), lines.last());
    for line in &lines {
        let parts: Vec<&str> = line.split(' ').collect();
        assert_eq!(parts.len(), 2, "edge-list line {line:?}");
        parts.iter().for_each(|p| {
            p.parse::<u64>().expect("coordinate");
        });
    }
}

#[test]
fn build_pushed_emits_two_cycles() {
    let out = hamtorus(&["build", "3", "5", "--target", "pushed"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    let blocks: Vec<&str> = text.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    for block in blocks {
        // 15 vertices plus the repeated first one.
        assert_eq!(block.lines().count(), 16);
    }
}

#[test]
fn build_machine_record_round_trips() {
    let out = hamtorus(&["build", "3", "5", "--target", "pushed", "--format", "machine"]);
    assert_eq!(exit_code(&out), 0);
    let line = stdout_of(&out);
    let line = line.trim();
    let record: BuildRecord = serde_json::from_str(line).expect("valid record");
    assert_eq!(record.cycles.len(), 2);
    assert!(record.cycles.iter().all(|c| c.len() == 15));
    assert_eq!(serde_json::to_string(&record).unwrap(), line);
}

#[test]
fn build_failure_exit_codes() {
    // Not hamiltonian.
    assert_eq!(exit_code(&hamtorus(&["build", "3", "4", "--target", "pushed"])), 1);
    // Over the explicit size limit.
    let out = hamtorus(&["build", "101", "103", "--target", "deleted", "--limit", "100"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn verify_small_range_matches() {
    let out = hamtorus(&["verify", "30"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("all match"));
}

#[test]
fn verify_json_summary() {
    let out = hamtorus(&["verify", "20", "--json"]);
    let line = stdout_of(&out);
    let record: VerifyRecord = serde_json::from_str(line.trim()).expect("valid record");
    assert!(record.all_match);
    assert!(record.discrepancies.is_empty());
    assert!(record.instances_checked > 0);
}

#[test]
fn verify_negative_control_fails() {
    let out = hamtorus(&["verify", "12", "--corrupt"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout_of(&out).contains("mismatch"));
}

#[test]
fn verify_rejects_limit_above_cap() {
    let out = hamtorus(&["verify", "100", "--cap", "64"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_m3_row_pattern() {
    let out = hamtorus(&["scan", "3", "3..20", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    let hits: Vec<u64> = text
        .lines()
        .map(|l| serde_json::from_str::<ScanRecord>(l).expect("row record"))
        .filter(|r| r.hamiltonian)
        .map(|r| r.n.parse().unwrap())
        .collect();
    assert_eq!(hits, vec![5, 8, 11, 14, 17, 20]);
}

#[test]
fn scan_diagonal_is_false() {
    let out = hamtorus(&["scan", "3..8", "3..8", "--json"]);
    let text = stdout_of(&out);
    for line in text.lines() {
        let r: ScanRecord = serde_json::from_str(line).unwrap();
        if r.m == r.n {
            assert!(!r.hamiltonian, "diagonal ({}, {})", r.m, r.n);
        }
    }
}

#[test]
fn scan_parallel_output_is_deterministic() {
    let strip = |text: String| -> Vec<ScanRecord> {
        text.lines()
            .map(|l| {
                let mut r: ScanRecord = serde_json::from_str(l).unwrap();
                r.elapsed_ms = 0.0;
                r
            })
            .collect()
    };
    let sequential = strip(stdout_of(&hamtorus(&["scan", "3..10", "3..10", "--json"])));
    let parallel = strip(stdout_of(&hamtorus(&[
        "scan", "3..10", "3..10", "--json", "--jobs", "4",
    ])));
    assert_eq!(sequential, parallel);
}

#[test]
fn scan_rejects_bad_ranges() {
    assert_eq!(exit_code(&hamtorus(&["scan", "5..3", "4"])), 2);
    assert_eq!(exit_code(&hamtorus(&["scan", "1..4", "4"])), 2);
    assert_eq!(exit_code(&hamtorus(&["scan", "x", "4"])), 2);
}
