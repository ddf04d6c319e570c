//! Acceptance suite: one pass/fail line per criterion. The slow parts run
//! with --ignored (or APOLY_SLOW=1).

use apoly_core::verify::run_suite;

fn run(slow: bool) {
    let outcomes = run_suite(slow);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
        if !o.passed {
            failed.push(o.name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn acceptance_criteria() {
    run(std::env::var("APOLY_SLOW").is_ok());
}

#[test]
#[ignore]
fn acceptance_criteria_slow() {
    run(true);
}
