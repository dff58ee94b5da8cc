use std::time::Instant;

use transring::suite::{run_criterion, SuiteConfig, CRITERIA};

#[test]
fn acceptance_criteria() {
    let cfg = SuiteConfig::default();
    let mut failed = vec![];
    for i in 1..=CRITERIA.len() {
        let t = Instant::now();
        let sec = run_criterion(i, &cfg);
        let verdict = if sec.passed() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict}  {} ({:.2?})", i, sec.name, t.elapsed());
        for c in sec.checks.iter().filter(|c| !c.passed) {
            println!("    failed {}: {}", c.name, c.detail);
        }
        if !sec.passed() {
            failed.push(i);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
