//! Acceptance criteria AC1 to AC10 at their stated tolerances.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use paramosc::acceptance::{run_all, AcceptanceSettings};

fn main() -> ExitCode {
    let start = Instant::now();
    let outcomes = run_all(&AcceptanceSettings::default());
    println!();
    println!("acceptance criteria");
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "{} passed, {failed} failed in {:.1}s",
        outcomes.len() - failed,
        start.elapsed().as_secs_f64()
    );
    println!();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
