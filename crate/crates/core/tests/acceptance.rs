//! One line per acceptance criterion: `criterion N: PASS|FAIL`, followed by
//! any failing checks. Exits nonzero if a criterion fails.
//!
//! `cargo test -p op7-core --test acceptance`; pass `-- --ignored` to add the
//! `q = 17` census.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use op7_core::verify::{self, Check};

// Wall-clock limits per criterion.
const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(30);
const LIMIT_3: Duration = Duration::from_secs(120);
const LIMIT_4: Duration = Duration::from_secs(180);
const LIMIT_5: Duration = Duration::from_secs(300);
const LIMIT_6: Duration = Duration::from_secs(120);
const LIMIT_7_Q8: Duration = Duration::from_secs(5);
const LIMIT_7_Q11: Duration = Duration::from_secs(60);
const LIMIT_7_Q13: Duration = Duration::from_secs(300);
const LIMIT_7_Q17: Duration = Duration::from_secs(1800);
const LIMIT_8: Duration = Duration::from_secs(120);
const LIMIT_9: Duration = Duration::from_secs(120);

const AUDIT_RANDOM_SAMPLES: usize = 100_000;

fn run(n: u8, label: &str, limit: Duration, f: impl FnOnce() -> Vec<Check>) -> bool {
    let start = Instant::now();
    let checks = f();
    let elapsed = start.elapsed();
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let in_time = elapsed <= limit;
    let pass = failed.is_empty() && in_time && !checks.is_empty();
    println!(
        "criterion {}: {} ({}; {}/{} checks; {:.2?} of {:?})",
        n,
        if pass { "PASS" } else { "FAIL" },
        label,
        checks.len() - failed.len(),
        checks.len(),
        elapsed,
        limit
    );
    for c in &failed {
        println!("    failed: {}: {}", c.name, c.detail);
    }
    if !in_time {
        println!("    over the time limit");
    }
    pass
}

fn main() -> ExitCode {
    let deeper = std::env::args().any(|a| a == "--ignored" || a == "--include-ignored");
    let results = [
        run(1, "family tables", LIMIT_1, verify::criterion_1),
        run(2, "non-redundancy", LIMIT_2, verify::criterion_2),
        run(3, "pair sets", LIMIT_3, verify::criterion_3),
        run(4, "totals", LIMIT_4, verify::criterion_4),
        run(5, "method agreement", LIMIT_5, verify::criterion_5),
        run(6, "shift-expansion distinctness", LIMIT_6, verify::criterion_6),
        run(7, "census q=8", LIMIT_7_Q8, || verify::criterion_7_orders(&[8]))
            & run(7, "census q=11", LIMIT_7_Q11, || verify::criterion_7_orders(&[11]))
            & run(7, "census q=13", LIMIT_7_Q13, || verify::criterion_7_orders(&[13]))
            & (!deeper || run(7, "census q=17", LIMIT_7_Q17, || verify::criterion_7_orders(&[17]))),
        run(8, "table vs direct audit", LIMIT_8, || verify::criterion_8(AUDIT_RANDOM_SAMPLES)),
        run(9, "property suite", LIMIT_9, verify::criterion_9),
    ];
    let failed = results.iter().filter(|&&r| !r).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
