//! Acceptance run: one line per criterion, nonzero exit on any failure.
//!
//! Criteria 1 to 10 are the checks of the full suite at seed 0, each with its
//! own time limit; criterion 11 reruns the suite and compares the reports with
//! timings stripped.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clusterpoisson_cli::{full_paper_suite, Report, SuiteConfig, SUITE_CHECKS};

const LIMITS_MS: [u64; 10] = [1_000, 10_000, 30_000, 30_000, 20_000, 5_000, 60_000, 30_000, 10_000, 5_000];
const TOTAL_LIMIT: Duration = Duration::from_secs(120);

fn line(i: usize, ok: bool, what: &str) -> bool {
    println!("criterion {i:>2}: {} {what}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() -> ExitCode {
    let start = Instant::now();
    let first: Report = full_paper_suite(SuiteConfig::default());
    let mut all = true;
    for (i, (name, limit)) in SUITE_CHECKS.iter().zip(LIMITS_MS).enumerate() {
        let ok = match first.check(name) {
            Some(c) => {
                let ms = c.elapsed_ms.unwrap_or(u64::MAX);
                let within = ms < limit;
                let mut what = format!("{name} ({ms} ms, limit {limit} ms)");
                if let Some(f) = &c.failure {
                    what.push_str(&format!(": {f}"));
                } else if !within {
                    what.push_str(": over time limit");
                }
                line(i + 1, c.passed() && within, &what)
            }
            None => line(i + 1, false, &format!("{name}: missing from the report")),
        };
        all &= ok;
    }
    let second = full_paper_suite(SuiteConfig::default());
    let elapsed = start.elapsed();
    let same = first.canonical_json() == second.canonical_json();
    let what = format!(
        "reproducibility (two seed-0 runs {}, {} ms total, limit {} ms)",
        if same { "byte-identical" } else { "differ" },
        elapsed.as_millis(),
        TOTAL_LIMIT.as_millis()
    );
    all &= line(11, same && elapsed < TOTAL_LIMIT, &what);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
