//! One PASS/FAIL line per acceptance criterion, seeded with the default seed.

use std::process::ExitCode;

use hecke_core::enumerate::DEFAULT_SEED;
use hecke_verify::verify_all;

fn main() -> ExitCode {
    println!("acceptance suite, seed {DEFAULT_SEED}");
    let criteria = verify_all(DEFAULT_SEED, |c| {
        println!("{}", c.line());
        if !c.passed {
            println!("    detail: {}", c.detail);
        }
    });
    let passed = criteria.iter().filter(|c| c.passed).count();
    println!("acceptance: {passed} of {} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
