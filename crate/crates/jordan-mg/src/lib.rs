//! Multiplicative-gradient maximization of 1-log-homogeneous concave
//! objectives over trace-one slices of symmetric cones, built on an
//! executable Euclidean Jordan algebra kernel.
//!
//! The crate is organized bottom-up:
//! - [`eja`]: algebras (`ℝⁿ`, spin, real symmetric matrices, direct sums),
//!   spectral decompositions, spectral functions, and the quadratic
//!   representation;
//! - [`cone`]: cone-of-squares predicates, the partial order, scaling
//!   points, and linear maximization over the generalized unit simplex;
//! - [`objective`]: the shipped 1-log-homogeneous objectives and the linear
//!   maps that compose them into problems;
//! - [`problem`]: instance builders (emission tomography, D-optimal design,
//!   state tomography, box-constrained quadratic relaxation), TOML
//!   serialization, and random generators;
//! - [`solver`]: the multiplicative-gradient iteration, certificates, and
//!   rate curves;
//! - [`verify`]: numerical oracles for the underlying inequalities;
//! - [`sample`]: seeded random element generators.
//!
//! See the `examples/` directory for runnable entry points per capability.

pub mod cone;
pub mod eja;
pub mod objective;
pub mod problem;
pub mod sample;
pub mod solver;
pub mod verify;

#[doc(hidden)]
pub mod cli;

pub use cone::{cone_leq, in_cone, in_interior, scaling_point, simplex_lin_max, ConeTolerance};
pub use eja::{
    det, inner, jordan_product, lin_rep_apply, quad_rep_apply, spectral_decomposition,
    spectral_map, trace, Algebra, Element, EjaError, ScalarMap, SpectralDecomposition,
};
pub use objective::{LinearMap, Objective, ObjectiveError};
pub use problem::{
    build_bqp_relax, build_doptimal, build_pet, build_qst_real, load_instance, random_instance,
    save_instance, standardize_affine, Dims, InstanceKind, ProblemError, ProblemInstance,
    StandardizedInstance,
};
pub use solver::{
    certified_gap, gmg_step, rate_curve, solve, IterationRecord, RateCurve, SolveReport,
    SolverConfig, SolverError, Termination,
};
pub use verify::{
    check_cs_inequality, check_golden_thompson, check_grad_fd, check_grad_log_convexity,
    check_growth_bound, check_ln_monotone, run_suite, CheckResult, Suite, SuiteReport, VerifyError,
};
