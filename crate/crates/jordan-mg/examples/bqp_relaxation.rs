//! Box-constrained quadratic programming relaxation via the p-pseudo-norm
//! objective: maximize `p⁻¹ ln Σⱼ (aⱼᵀ M aⱼ)ᵖ` with p = ½ over the simplex
//! of diagonal scalings, a concave surrogate for the combinatorial problem.
//!
//! Run with `cargo run --example bqp_relaxation`.

use jordan_mg::{
    certified_gap,
    problem::{random_instance, Dims, InstanceKind},
    solve, SolverConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instance = random_instance(InstanceKind::Bqp, Dims { m: 0, n: 6 }, 13)?;

    let report = solve(
        &instance,
        &SolverConfig {
            max_iters: 30_000,
            gap_tol: 1e-9,
            log_every: 3_000,
            ..SolverConfig::default()
        },
    )?;
    println!(
        "terminated: {:?} after {} iterations",
        report.termination, report.iterations
    );
    println!("relaxation value: {:.10}", report.best_value);
    // The decision variable is a trace-one positive semidefinite matrix; its
    // spectrum shows how concentrated the relaxation's answer is.
    let dec = jordan_mg::spectral_decomposition(&report.best_iterate)?;
    println!("solution eigenvalues: {:?}", dec.eigenvalues);

    // Both reported iterates carry their own a-posteriori bound.
    println!(
        "certified gaps: best {:.3e}, averaged {:.3e}",
        certified_gap(&instance, &report.best_iterate)?,
        report.averaged_cert_gap
    );
    Ok(())
}
