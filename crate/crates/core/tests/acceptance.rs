//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use clebsch::verify::{criterion, su2_groups, Level, TITLES};

fn main() -> ExitCode {
    let start = Instant::now();
    let groups = su2_groups(Level::Full).expect("built-in groups");
    let mut failed = 0;
    for n in 1..=TITLES.len() {
        let t = Instant::now();
        let out = criterion(n, Level::Full, &groups);
        println!("{out} ({:.1}s)", t.elapsed().as_secs_f64());
        failed += usize::from(!out.pass);
    }
    println!(
        "acceptance: {} of {} criteria pass ({:.1}s)",
        TITLES.len() - failed,
        TITLES.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
