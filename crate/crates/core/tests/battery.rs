use std::time::Instant;

use extcalc::properties::{run_suite, Suite};

fn run(suite: Suite, trials: usize) {
    let start = Instant::now();
    let results = run_suite(suite, 42, trials);
    let mut failed = Vec::new();
    for r in &results {
        println!("{:<45} cases {:>6} failures {}", r.name, r.cases, r.failures);
        if !r.passed() {
            failed.push(format!("{}: {}", r.name, r.counterexample.clone().unwrap_or_default()));
        }
    }
    println!("{} suite: {:.2?}", suite.name(), start.elapsed());
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn algebra_suite() {
    run(Suite::Algebra, 20);
}

#[test]
fn calculus_suite() {
    run(Suite::Calculus, 20);
}

#[test]
fn variational_suite() {
    run(Suite::Variational, 20);
}

#[test]
fn em_suite() {
    run(Suite::Em, 20);
}
