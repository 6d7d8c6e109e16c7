//! End-to-end tests against the compiled binary: exact header bytes, byte
//! determinism, exit codes, and the documented row semantics.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const HEADER: &str = "n,p,discord_closed,discord_numeric,abs_gap,log_negativity,separable";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wernerq"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be utf-8")
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    stdout_of(out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn temp_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("wernerq-cli-{tag}-{}.csv", std::process::id()))
}

#[test]
fn both_mode_emits_matching_routes_for_every_row() {
    let out = run(&["discord-curve", "--n", "2", "--steps", "11", "--mode", "both"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 12);
    for row in rows(&out) {
        assert_eq!(row.len(), 7);
        assert!(!row[3].is_empty(), "numeric column must be filled in both mode");
        let gap: f64 = row[4].parse().expect("gap parses");
        assert!(gap < 1e-6, "closed and dense routes disagree: {row:?}");
    }
}

#[test]
fn analytic_mode_spans_qubit_counts_with_empty_numeric_cells() {
    let out = run(&["discord-curve", "--n", "2,5,11", "--steps", "11"]);
    assert!(out.status.success());
    let rows = rows(&out);
    assert_eq!(rows.len(), 33);
    for row in &rows {
        assert!(row[3].is_empty() && row[4].is_empty());
    }
    // Ordered by (n, p) ascending.
    let ns: Vec<u32> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(ns.iter().filter(|&&n| n == 5).count(), 11);
    for n in [2u32, 5, 11] {
        let ps: Vec<f64> = rows
            .iter()
            .filter(|r| r[0] == n.to_string())
            .map(|r| r[1].parse().unwrap())
            .collect();
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ps[0], 0.0);
        assert_eq!(ps[10], 1.0);
    }
}

#[test]
fn endpoint_rows_are_bit_exact() {
    let out = run(&["discord-curve", "--n", "2", "--steps", "11"]);
    let rows = rows(&out);
    let first = &rows[0];
    assert_eq!(first[1], "0.00000000000");
    assert_eq!(first[2], "0.00000000000");
    assert_eq!(first[5], "0.00000000000");
    assert_eq!(first[6], "true");
    let last = &rows[10];
    assert_eq!(last[1], "1.00000000000");
    assert_eq!(last[2], "1.00000000000", "pure-state discord must be exactly 1");
    assert_eq!(last[5], "1.00000000000", "pure-state negativity must be exactly 1");
    assert_eq!(last[6], "false");
}

#[test]
fn repeated_runs_and_file_output_are_byte_identical() {
    let args = ["discord-curve", "--n", "2,3", "--steps", "7", "--mode", "both"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);

    let path = temp_path("determinism");
    let mut file_args: Vec<&str> = args.to_vec();
    file_args.push("--output");
    let path_str = path.to_str().unwrap().to_string();
    file_args.push(&path_str);
    let file_run = run(&file_args);
    assert!(file_run.status.success());
    assert!(file_run.stdout.is_empty());
    let written = fs::read(&path).expect("output file exists");
    let _ = fs::remove_file(&path);
    assert_eq!(written, first.stdout);
}

#[test]
fn negativity_rows_cross_the_threshold_once() {
    let out = run(&["negativity-curve", "--n", "2", "--steps", "301"]);
    assert!(out.status.success());
    let rows = rows(&out);
    assert_eq!(rows.len(), 301);
    let separable_count = rows.iter().take_while(|r| r[6] == "true").count();
    // Separability is contiguous from p = 0 and flips exactly once.
    assert!(rows[separable_count..].iter().all(|r| r[6] == "false"));
    for r in &rows[..separable_count] {
        assert_eq!(r[5], "0.00000000000", "separable rows must carry zero negativity");
    }
    for r in &rows[separable_count..] {
        assert!(r[5].parse::<f64>().unwrap() > 0.0);
    }
    // The flip happens within one grid step of p = 1/3.
    let last_separable: f64 = rows[separable_count - 1][1].parse().unwrap();
    let first_entangled: f64 = rows[separable_count][1].parse().unwrap();
    assert!(last_separable <= 1.0 / 3.0 + 1e-12);
    assert!(first_entangled > 1.0 / 3.0 - 1.0 / 300.0);
}

#[test]
fn large_n_negativity_approaches_its_limit() {
    let out = run(&["negativity-curve", "--n", "60", "--steps", "21"]);
    assert!(out.status.success());
    for row in rows(&out) {
        let p: f64 = row[1].parse().unwrap();
        let value: f64 = row[5].parse().unwrap();
        assert!((value - (1.0 + p).log2()).abs() < 1e-6);
    }
}

#[test]
fn malformed_requests_exit_2() {
    let cases: [&[&str]; 6] = [
        &["discord-curve", "--n", "2", "--p-min", "0.9", "--p-max", "0.1"],
        &["discord-curve", "--n", "2", "--steps", "1"],
        &["discord-curve", "--n", "1"],
        &["discord-curve", "--n", "2", "--mode", "fast"],
        &["discord-curve"],
        &["negativity-curve", "--n", "60", "--mode", "numeric"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?} should be a usage error");
    }
}

#[test]
fn numeric_mode_beyond_the_dense_cap_exits_3() {
    for args in [
        &["discord-curve", "--n", "13", "--mode", "numeric"][..],
        &["discord-curve", "--n", "2,13", "--mode", "both"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(3));
        assert!(stderr_of(&out).contains("dense cap"));
    }
}

#[test]
fn verify_reports_one_line_per_invariant() {
    let out = run(&["verify", "--n-max", "4"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    let expected = [
        "spectrum_equivalence",
        "discord_gap",
        "measurement_flatness",
        "pt_spectrum_equivalence",
        "threshold_sign_change",
        "discord_convexity",
        "negativity_concavity",
    ];
    for (line, name) in lines[..7].iter().zip(expected) {
        assert!(
            line.starts_with(&format!("PASS {name} ")),
            "unexpected check line: {line}"
        );
    }
    assert_eq!(lines[7], "VERIFY PASS checks=7");
}

#[test]
fn verify_at_default_reach_passes() {
    let out = run(&["verify"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).ends_with("VERIFY PASS checks=7\n"));
}

#[test]
fn fault_injection_fails_naming_the_invariant() {
    let out = run(&["verify", "--n-max", "3", "--inject-spectrum-error", "1e-3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("FAIL spectrum_equivalence"));
    assert!(text.contains("VERIFY FAIL failing=spectrum_equivalence"));
    assert!(stderr_of(&out).contains("spectrum_equivalence"));
}

#[test]
fn bench_rows_cover_both_paths_and_skip_gracefully() {
    let out = run(&["bench", "--n", "4,8,200", "--reps", "2"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,path,reps,best_ns,mean_ns,status");
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[6], "200,dense,2,,,skipped");

    let best_of = |line: &str| -> u128 {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[5], "ok");
        fields[3].parse().expect("best_ns parses")
    };
    let structured_8 = best_of(lines[3]);
    let dense_4 = best_of(lines[2]);
    let dense_8 = best_of(lines[4]);
    assert!(best_of(lines[5]) > 0, "structured timing at n=200 must be populated");
    // Lenient sanity only: the dense route grows steeply with n and dwarfs
    // the structured route long before the cap.
    assert!(dense_8 > dense_4);
    assert!(structured_8 < dense_8);
}

#[test]
#[ignore = "dense n=12 cross-checks take a few minutes single-core; run with --ignored"]
fn verify_reaches_the_dense_cap() {
    let out = run(&["verify", "--n-max", "12"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).ends_with("VERIFY PASS checks=7\n"));
}
