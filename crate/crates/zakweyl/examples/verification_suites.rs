//! Runs every named verification suite on one grid and prints the check
//! lines, the same output the `verify` subcommand produces. Each suite
//! packages the property tests for one layer of the construction; all the
//! randomized ones take an explicit seed so a report can be reproduced
//! bit for bit.
//!
//! Run with: cargo run --example verification_suites

use zakweyl::verify::{run_suite, suite_needs_seed, SUITES};
use zakweyl::GridSpec;

fn main() {
    let grid = GridSpec::new(8, 4, 2).unwrap();
    let mut all_pass = true;
    for &name in SUITES {
        let seed = if suite_needs_seed(name) { Some(5) } else { None };
        let report = run_suite(name, grid, seed, None).unwrap();
        println!("suite {name} on {grid}:");
        for check in &report.checks {
            println!(
                "  {}: {} (max error {:.3e}, tolerance {:.0e})",
                check.name,
                if check.pass { "PASS" } else { "FAIL" },
                check.max_error,
                check.tolerance
            );
        }
        all_pass &= report.pass;
    }
    println!("all suites pass: {all_pass}");

    // unknown names are rejected with the full menu
    match run_suite("everything", grid, Some(5), None) {
        Err(e) => println!("asking for a suite that does not exist: {e}"),
        Ok(_) => unreachable!(),
    }
}
