//! Command-line front end: solve instances, generate random instances, run
//! the verification suites, and emit machine-readable convergence traces.
//!
//! Kept as a library module so the thin binary and integration tests share
//! the same entry point. Exit codes: 0 success (for `solve`: certificate
//! threshold reached), 2 iteration budget exhausted, 3 verification
//! failures, 1 any other error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::eja::Element;
use crate::problem::{load_instance, save_instance, random_instance, Dims, InstanceKind};
use crate::solver::{rate_curve, solve, SolverConfig, Termination};
use crate::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "jordan-mg", version, about = "Multiplicative-gradient solver over symmetric cones")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and write a convergence trace and report.
    Solve(SolveArgs),
    /// Generate a random instance file.
    Generate(GenerateArgs),
    /// Run the numerical verification suites.
    Verify(VerifyArgs),
    /// Emit an ergodic-rate table (measured gap vs. the ln(r)/T bound).
    Rate(RateArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (TOML).
    instance: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    gap_tol: f64,
    /// `center` or a file of whitespace-separated coordinates.
    #[arg(long, default_value = "center")]
    x0: String,
    #[arg(long, default_value_t = 1)]
    log_every: usize,
    /// CSV trace output path (stdout if omitted).
    #[arg(long)]
    trace_out: Option<PathBuf>,
    /// Structured-text report output path (stdout if omitted).
    #[arg(long)]
    report_out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Instance family: pet | doptimal | qst_real | bqp.
    kind: String,
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// eja | cone | objectives | inequalities | all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 200)]
    seeds: usize,
}

#[derive(Args)]
struct RateArgs {
    instance: PathBuf,
    /// Comma-separated checkpoint list, e.g. `10,100,1000`.
    #[arg(long, value_delimiter = ',')]
    t_list: Vec<usize>,
    out: PathBuf,
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are not errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Generate(args) => cmd_generate(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Rate(args) => cmd_rate(&args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

fn write_out(path: Option<&PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_x0(spec: &str, instance: &crate::problem::ProblemInstance) -> Result<Option<Element>, String> {
    if spec == "center" {
        return Ok(None);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("reading x0 file {spec}: {e}"))?;
    let coords: Vec<f64> = text
        .split_whitespace()
        .map(|tok| tok.parse::<f64>().map_err(|e| format!("x0 entry `{tok}`: {e}")))
        .collect::<Result<_, _>>()?;
    Element::new(instance.cone_algebra().clone(), coords)
        .map(Some)
        .map_err(|e| format!("x0: {e}"))
}

fn cmd_solve(args: &SolveArgs) -> Result<i32, String> {
    let instance = load_instance(&args.instance).map_err(|e| e.to_string())?;
    let x0 = load_x0(&args.x0, &instance)?;
    let config = SolverConfig {
        max_iters: args.max_iters,
        gap_tol: args.gap_tol,
        x0,
        log_every: args.log_every,
        track_average: true,
    };
    let started = Instant::now();
    let report = solve(&instance, &config).map_err(|e| e.to_string())?;
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut trace = String::from(
        "t,objective_value,cert_gap,avg_objective_value,avg_cert_gap,lambda_min_iterate,trace_pre_normalization,wall_time_ms\n",
    );
    for rec in &report.records {
        // Wall time is attributed to the whole run on the last row; it is
        // informational and excluded from determinism guarantees.
        let row_ms = if rec.t == report.records.last().unwrap().t {
            wall_ms
        } else {
            0.0
        };
        writeln!(
            trace,
            "{},{},{},{},{},{},{},{row_ms}",
            rec.t,
            rec.objective_value,
            rec.cert_gap,
            rec.avg_objective_value,
            rec.avg_cert_gap,
            rec.lambda_min_iterate,
            rec.trace_pre_normalization,
        )
        .unwrap();
    }
    write_out(args.trace_out.as_ref(), &trace)?;

    let mut summary = String::new();
    writeln!(summary, "instance: {}", instance.name).unwrap();
    writeln!(summary, "termination: {:?}", report.termination).unwrap();
    writeln!(summary, "iterations: {}", report.iterations).unwrap();
    writeln!(summary, "best_value: {}", report.best_value).unwrap();
    writeln!(summary, "best_cert_gap: {}", report.best_cert_gap).unwrap();
    writeln!(summary, "averaged_value: {}", report.averaged_value).unwrap();
    writeln!(summary, "averaged_cert_gap: {}", report.averaged_cert_gap).unwrap();
    writeln!(
        summary,
        "final_gap: {}",
        report.best_cert_gap.min(report.averaged_cert_gap)
    )
    .unwrap();
    writeln!(
        summary,
        "best_iterate: [{}]",
        report
            .best_iterate
            .coords()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
    .unwrap();
    write_out(args.report_out.as_ref(), &summary)?;

    Ok(match report.termination {
        Termination::GapTolReached => 0,
        Termination::MaxIters => 2,
        Termination::NumericalFailure(detail) => {
            eprintln!("error: numerical failure: {detail}");
            1
        }
    })
}

fn cmd_generate(args: &GenerateArgs) -> Result<i32, String> {
    let kind: InstanceKind = args.kind.parse().map_err(|e: crate::problem::ProblemError| e.to_string())?;
    let instance = random_instance(kind, Dims { m: args.m, n: args.n }, args.seed)
        .map_err(|e| e.to_string())?;
    save_instance(&instance, &args.out).map_err(|e| e.to_string())?;
    println!("wrote {} ({} instance)", args.out.display(), kind);
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, String> {
    let suite: Suite = args.suite.parse()?;
    if args.seeds == 0 {
        return Err("--seeds must be positive".into());
    }
    let report = run_suite(suite, args.seeds).map_err(|e| e.to_string())?;
    for line in &report.lines {
        println!(
            "{}: {}/{} passed, worst margin {:.3e}",
            line.name,
            line.runs - line.failures,
            line.runs,
            line.worst_margin
        );
    }
    Ok(if report.all_passed() { 0 } else { 3 })
}

fn cmd_rate(args: &RateArgs) -> Result<i32, String> {
    if args.t_list.is_empty() {
        return Err("--t-list must not be empty".into());
    }
    let instance = load_instance(&args.instance).map_err(|e| e.to_string())?;
    let max_t = *args.t_list.iter().max().unwrap();
    // The reference run must out-resolve the largest checkpoint by a wide
    // margin for the gap column to be meaningful.
    let reference_iters = (max_t.saturating_mul(100)).clamp(100_000, 1_000_000);
    let curve =
        rate_curve(&instance, &args.t_list, reference_iters).map_err(|e| e.to_string())?;
    let r = instance.cone_algebra().rank() as f64;
    let mut csv = String::from("t,measured_gap,bound\n");
    for point in &curve.points {
        let gap = curve.reference_value - point.averaged_value;
        let bound = r.ln() / point.t as f64;
        writeln!(csv, "{},{gap},{bound}", point.t).unwrap();
    }
    std::fs::write(&args.out, &csv)
        .map_err(|e| format!("writing {}: {e}", args.out.display()))?;
    println!(
        "wrote {} (reference over {} iterations, certified gap {:.3e})",
        args.out.display(),
        reference_iters,
        curve.reference_gap
    );
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn tmp_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("jordan-mg-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    fn write_tiny_pet(dir: &PathBuf) -> PathBuf {
        let p = DMatrix::from_row_slice(2, 3, &[0.5, 0.25, 0.25, 0.2, 0.4, 0.4]);
        let instance = crate::problem::build_pet(&p, &[3.0, 1.0]).unwrap();
        let path = dir.join("pet.toml");
        // build_pet leaves no payload; round-trip through the generator path.
        let generated = random_instance(InstanceKind::Pet, Dims { m: 2, n: 3 }, 1).unwrap();
        save_instance(&generated, &path).unwrap();
        let _ = instance;
        path
    }

    #[test]
    fn solve_writes_trace_and_report() {
        let dir = tmp_dir("solve");
        let instance = write_tiny_pet(&dir);
        let trace = dir.join("trace.csv");
        let report = dir.join("report.txt");
        let code = run([
            "jordan-mg",
            "solve",
            instance.to_str().unwrap(),
            "--max-iters",
            "500",
            "--gap-tol",
            "1e-6",
            "--trace-out",
            trace.to_str().unwrap(),
            "--report-out",
            report.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let trace_text = std::fs::read_to_string(&trace).unwrap();
        let mut lines = trace_text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,objective_value,cert_gap,avg_objective_value,avg_cert_gap,lambda_min_iterate,trace_pre_normalization,wall_time_ms"
        );
        assert!(lines.next().unwrap().starts_with("0,"));
        let report_text = std::fs::read_to_string(&report).unwrap();
        assert!(report_text.contains("termination: GapTolReached"));
    }

    #[test]
    fn solve_zero_iters_exits_2_with_single_row() {
        let dir = tmp_dir("zero");
        let instance = write_tiny_pet(&dir);
        let trace = dir.join("trace.csv");
        let code = run([
            "jordan-mg",
            "solve",
            instance.to_str().unwrap(),
            "--max-iters",
            "0",
            "--trace-out",
            trace.to_str().unwrap(),
            "--report-out",
            dir.join("r.txt").to_str().unwrap(),
        ]);
        assert_eq!(code, 2);
        let trace_text = std::fs::read_to_string(&trace).unwrap();
        assert_eq!(trace_text.lines().count(), 2);
    }

    #[test]
    fn solve_malformed_file_exits_1() {
        let dir = tmp_dir("bad");
        let path = dir.join("bad.toml");
        std::fs::write(&path, "kind = \"pet\"\nbogus_field = 3\n").unwrap();
        let code = run(["jordan-mg", "solve", path.to_str().unwrap()]);
        assert_eq!(code, 1);
    }

    #[test]
    fn generate_is_deterministic() {
        let dir = tmp_dir("gen");
        let a = dir.join("a.toml");
        let b = dir.join("b.toml");
        for out in [&a, &b] {
            let code = run([
                "jordan-mg",
                "generate",
                "pet",
                "--m",
                "5",
                "--n",
                "8",
                "--seed",
                "7",
                out.to_str().unwrap(),
            ]);
            assert_eq!(code, 0);
        }
        assert_eq!(
            std::fs::read_to_string(&a).unwrap(),
            std::fs::read_to_string(&b).unwrap()
        );
        // Generated files load and solve.
        let code = run([
            "jordan-mg",
            "solve",
            a.to_str().unwrap(),
            "--max-iters",
            "50",
            "--gap-tol",
            "1e-12",
            "--trace-out",
            dir.join("t.csv").to_str().unwrap(),
            "--report-out",
            dir.join("r.txt").to_str().unwrap(),
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn generate_rejects_bad_dims() {
        let dir = tmp_dir("gendim");
        let code = run([
            "jordan-mg",
            "generate",
            "doptimal",
            "--m",
            "2",
            "--n",
            "5",
            "--seed",
            "1",
            dir.join("x.toml").to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn verify_small_suite_passes_and_unknown_fails() {
        assert_eq!(run(["jordan-mg", "verify", "--suite", "cone", "--seeds", "5"]), 0);
        assert_eq!(run(["jordan-mg", "verify", "--suite", "nope"]), 1);
    }

    #[test]
    fn rate_requires_checkpoints() {
        let dir = tmp_dir("rate");
        let instance = write_tiny_pet(&dir);
        let code = run([
            "jordan-mg",
            "rate",
            instance.to_str().unwrap(),
            dir.join("rate.csv").to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
    }
}
