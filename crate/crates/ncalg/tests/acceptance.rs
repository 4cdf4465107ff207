//! Runs the full verification suite, printing one line per scenario.
//! Each scenario also has its own wall-clock budget.

use std::time::Instant;

#[test]
fn acceptance_suite() {
    let mut failures = Vec::new();
    for c in ncalg::acceptance::criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => {
                if elapsed.as_secs() >= c.budget_secs {
                    println!(
                        "FAIL {:<22} over budget: {:.1}s > {}s",
                        c.name,
                        elapsed.as_secs_f64(),
                        c.budget_secs
                    );
                    failures.push(format!("{} exceeded its {}s budget", c.name, c.budget_secs));
                } else {
                    println!("PASS {:<22} {:>6.1}s  {detail}", c.name, elapsed.as_secs_f64());
                }
            }
            Err(reason) => {
                println!("FAIL {:<22} {:>6.1}s  {reason}", c.name, elapsed.as_secs_f64());
                failures.push(format!("{}: {reason}", c.name));
            }
        }
    }
    assert!(failures.is_empty(), "{} criteria failed:\n{}", failures.len(), failures.join("\n"));
}
