//! Runs without the libtest harness so the per-criterion lines always show.

use std::process::ExitCode;

use dpcoh::verify::{run_criterion, DEFAULT_SEED};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for n in 1..=10 {
        let report = run_criterion(n, DEFAULT_SEED).unwrap();
        println!("{}", report.line());
        for f in report.failures.iter().take(5) {
            println!("    {f}");
        }
        if !report.passed() {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
