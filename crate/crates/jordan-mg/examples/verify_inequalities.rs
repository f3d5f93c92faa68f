//! Audit the standalone inequalities behind the method on randomized inputs:
//! Golden-Thompson, operator monotonicity of ln, the Cauchy-Schwarz-type
//! cone inequality, the growth bound, and gradient log-convexity.
//!
//! The same suites back the CLI `verify` subcommand; the margins are signed
//! distances to violation, so positive slack is healthy.
//!
//! Run with `cargo run --example verify_inequalities`.

use jordan_mg::{run_suite, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for suite in [Suite::Eja, Suite::Cone, Suite::Objectives, Suite::Inequalities] {
        let report = run_suite(suite, 50)?;
        for line in &report.lines {
            println!(
                "{:<36} {:>4}/{:<4} worst margin {:+.3e}",
                line.name,
                line.runs - line.failures,
                line.runs,
                line.worst_margin
            );
        }
    }
    Ok(())
}
