//! Round-tripping instances through the TOML file format the CLI consumes:
//! generate deterministically from a seed, save, reload, and solve.
//!
//! Run with `cargo run --example instance_files`.

use jordan_mg::{
    load_instance,
    problem::{random_instance, Dims, InstanceKind},
    save_instance, solve, SolverConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("jordan-mg-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("pet-instance.toml");

    let instance = random_instance(InstanceKind::Pet, Dims { m: 5, n: 8 }, 2024)?;
    save_instance(&instance, &path)?;
    println!("wrote {}", path.display());
    let text = std::fs::read_to_string(&path)?;
    println!(
        "--- first lines ---\n{}",
        text.lines().take(6).collect::<Vec<_>>().join("\n")
    );

    // Generation is seed-deterministic, so files are reproducible artifacts.
    let again = random_instance(InstanceKind::Pet, Dims { m: 5, n: 8 }, 2024)?;
    let path2 = dir.join("pet-instance-again.toml");
    save_instance(&again, &path2)?;
    println!(
        "regenerated file identical: {}",
        std::fs::read_to_string(&path)? == std::fs::read_to_string(&path2)?
    );

    let loaded = load_instance(&path)?;
    let report = solve(
        &loaded,
        &SolverConfig {
            max_iters: 2_000,
            gap_tol: 1e-8,
            log_every: 200,
            ..SolverConfig::default()
        },
    )?;
    println!(
        "loaded and solved: {:?}, best value {:.8}",
        report.termination, report.best_value
    );
    Ok(())
}
