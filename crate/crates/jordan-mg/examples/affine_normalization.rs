//! Solving over a general affine slice `⟨a, x⟩ = 1` by changing variables:
//! with w = a^{−1/2} the quadratic representation sends the slice onto the
//! trace-one simplex (P(w)a = e), the solver runs there, and solutions map
//! back through x = P(w)z.
//!
//! Run with `cargo run --example affine_normalization`.

use jordan_mg::{
    inner,
    problem::{random_instance, standardize_affine, Dims, InstanceKind},
    quad_rep_apply, sample, solve, SolverConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instance = random_instance(InstanceKind::QstReal, Dims { m: 9, n: 3 }, 21)?;
    let algebra = instance.cone_algebra().clone();

    // A random interior normalization element: think of it as a weighting
    // operator defining the budget constraint ⟨a, x⟩ = 1.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = sample::random_interior(&mut rng, &algebra);

    let standardized = standardize_affine(&instance, &a)?;
    let w = standardized.scaling();
    let e_err = quad_rep_apply(w, &a)?
        .sub(&algebra.identity())?
        .norm();
    println!("‖P(w)a − e‖ = {e_err:.2e}");

    let report = solve(
        &standardized.instance,
        &SolverConfig {
            max_iters: 10_000,
            gap_tol: 1e-10,
            log_every: 1_000,
            ..SolverConfig::default()
        },
    )?;
    println!(
        "standardized solve: {:?}, value {:.10}",
        report.termination, report.best_value
    );

    // Pull the solution back to the original slice.
    let x = standardized.map_back(&report.averaged_iterate)?;
    println!(
        "mapped back: ⟨a, x⟩ = {:.12} (should be 1), objective {:.10}",
        inner(&a, &x)?,
        instance.value(&x)?
    );
    Ok(())
}
