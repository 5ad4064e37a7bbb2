//! Acceptance suite: runs every verification check at its full pinned size
//! and prints one pass/fail line per check. This is the same suite the
//! `fishburn verify` subcommand runs.

use fishburn_cli::report::CheckStatus;
use fishburn_cli::verify::{run, VerifySettings};

#[test]
fn acceptance_criteria() {
    let report = run(&VerifySettings::default());
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
        };
        println!("{status}  {}  ({} ms)", check.id, check.duration_ms);
        if check.status == CheckStatus::Fail {
            println!("      expected: {}", check.expected);
            println!("      actual:   {}", check.actual);
        }
    }
    assert!(
        report.all_pass,
        "acceptance checks failed:\n{}",
        report.to_text()
    );
}

#[test]
fn reduced_sizes_still_pass() {
    let report = run(&VerifySettings {
        n_ascent: Some(3),
        n_poset: Some(3),
        n_matrix: Some(3),
        n_perm: Some(3),
        n_matching: Some(3),
        order: Some(4),
        parallel: false,
    });
    assert!(report.all_pass, "{}", report.to_text());
}
