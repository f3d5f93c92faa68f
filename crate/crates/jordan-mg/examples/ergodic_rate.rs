//! The ergodic O(1/T) guarantee made visible: with x⁰ = e/r the averaged
//! iterate satisfies F* − F(x̄^T) ≤ ln(r)/T, and the measured gap sits under
//! that bound at every checkpoint.
//!
//! Run with `cargo run --example ergodic_rate --release`.

use jordan_mg::{
    problem::{random_instance, Dims, InstanceKind},
    rate_curve,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instance = random_instance(InstanceKind::Doptimal, Dims { m: 25, n: 4 }, 1)?;
    let r = instance.cone_algebra().rank() as f64;

    let checkpoints = [1, 3, 10, 30, 100, 300, 1_000, 3_000, 10_000];
    let curve = rate_curve(&instance, &checkpoints, 200_000)?;
    println!(
        "reference value {:.12} (certified to {:.1e})",
        curve.reference_value, curve.reference_gap
    );
    println!("  T       measured gap   ln(r)/T bound");
    for point in &curve.points {
        let gap = curve.reference_value - point.averaged_value;
        let bound = r.ln() / point.t as f64;
        println!("  {:<7} {:<14.6e} {:<14.6e}", point.t, gap, bound);
    }
    Ok(())
}
