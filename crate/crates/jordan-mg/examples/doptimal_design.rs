//! D-optimal experiment design: maximize `n⁻¹ ln det(Σᵢ xᵢ aᵢaᵢᵀ)` over
//! design weights on the simplex. At the optimum the Kiefer-Wolfowitz
//! condition holds: max_i aᵢᵀM(x)⁻¹aᵢ = n.
//!
//! Run with `cargo run --example doptimal_design`.

use jordan_mg::{
    problem::{random_instance, Dims, InstanceKind},
    solve, spectral_decomposition, SolverConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (m, n) = (30, 4);
    let instance = random_instance(InstanceKind::Doptimal, Dims { m, n }, 3)?;

    let report = solve(
        &instance,
        &SolverConfig {
            max_iters: 50_000,
            gap_tol: 1e-9,
            log_every: 1_000,
            ..SolverConfig::default()
        },
    )?;
    println!(
        "terminated: {:?} after {} iterations",
        report.termination, report.iterations
    );
    println!("log det criterion (normalized): {:.10}", report.best_value);

    // Kiefer-Wolfowitz residual: λ_max(∇F) − 1 at the solution. The gradient
    // coordinates are aᵢᵀM⁻¹aᵢ/n, so this measures how far the worst design
    // point is from the optimality threshold.
    let grad = instance.grad(&report.best_iterate)?;
    let residual = spectral_decomposition(&grad)?.lambda_max() - 1.0;
    println!("Kiefer-Wolfowitz residual: {residual:.3e}");

    let support: Vec<usize> = report
        .best_iterate
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > 1e-6)
        .map(|(i, _)| i)
        .collect();
    println!(
        "support: {} of {m} candidate points -> {:?}",
        support.len(),
        support
    );
    Ok(())
}
