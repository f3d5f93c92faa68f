//! The generalized multiplicative gradient iteration with trace
//! normalization, averaged-iterate tracking, the self-certifying
//! suboptimality bound, and stopping logic.
//!
//! One step is `x̂ = exp(ln x + ln ∇F(x))`, `x⁺ = x̂ / tr(x̂)`. On `ℝⁿ` this is
//! exactly the classical elementwise multiplicative update. The certificate
//! `ln λ_max(∇F(x))` bounds the suboptimality of any interior feasible point
//! without knowledge of the optimum.

use thiserror::Error;

use crate::eja::{
    spectral_decomposition, spectral_map_decomposed, Element, EjaError, ScalarMap,
};
use crate::problem::{ProblemError, ProblemInstance};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Eja(#[from] EjaError),
    #[error("invalid solver configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Certificate threshold: stop once the smaller of the best-iterate and
    /// averaged-iterate certified gaps drops below this.
    pub gap_tol: f64,
    /// Starting point; defaults to the simplex center `e/r`.
    pub x0: Option<Element>,
    /// Record (and test the stopping rule) every this many iterations.
    pub log_every: usize,
    pub track_average: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: 10_000,
            gap_tol: 1e-8,
            x0: None,
            log_every: 1,
            track_average: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub t: usize,
    pub objective_value: f64,
    /// `ln λ_max(∇F(xᵗ))`, the certified suboptimality bound at the iterate.
    pub cert_gap: f64,
    pub lambda_min_iterate: f64,
    /// `tr(x̂)` of the step that produced this iterate; 1 at `t = 0`.
    pub trace_pre_normalization: f64,
    pub avg_objective_value: f64,
    pub avg_cert_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    GapTolReached,
    MaxIters,
    NumericalFailure(String),
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub records: Vec<IterationRecord>,
    pub best_iterate: Element,
    pub best_value: f64,
    pub best_cert_gap: f64,
    pub averaged_iterate: Element,
    pub averaged_value: f64,
    pub averaged_cert_gap: f64,
    pub termination: Termination,
    pub iterations: usize,
}

/// Everything one iteration learns about the current point.
pub struct StepInfo {
    pub x_next: Element,
    pub trace_pre: f64,
    pub value: f64,
    pub cert_gap: f64,
    pub lambda_min: f64,
}

/// One full evaluation + step at `x ∈ ri 𝒞`, sharing the spectral
/// decompositions between the certificate and the update.
pub fn iterate_once(instance: &ProblemInstance, x: &Element) -> Result<StepInfo, SolverError> {
    let value = instance.value(x)?;
    let x_dec = spectral_decomposition(x)?;
    let grad = instance.grad(x)?;
    let g_dec = spectral_decomposition(&grad)?;
    let cert_gap = g_dec.lambda_max().ln();
    let ln_x = spectral_map_decomposed(&x_dec, ScalarMap::Ln)?;
    let ln_g = spectral_map_decomposed(&g_dec, ScalarMap::Ln)?;
    let x_hat = crate::eja::spectral_map(&ln_x.add(&ln_g)?, ScalarMap::Exp)?;
    let trace_pre = crate::eja::trace(&x_hat);
    if !(trace_pre.is_finite() && trace_pre > 0.0) {
        return Err(SolverError::Eja(EjaError::Domain(format!(
            "pre-normalization trace is {trace_pre}"
        ))));
    }
    Ok(StepInfo {
        x_next: x_hat.scale(1.0 / trace_pre),
        trace_pre,
        value,
        cert_gap,
        lambda_min: x_dec.lambda_min(),
    })
}

/// One multiplicative-gradient step; returns the next iterate and the trace
/// of `x̂` before normalization (at most 1 up to rounding).
pub fn gmg_step(
    instance: &ProblemInstance,
    x: &Element,
) -> Result<(Element, f64), SolverError> {
    let info = iterate_once(instance, x)?;
    Ok((info.x_next, info.trace_pre))
}

/// Certified suboptimality bound `ln λ_max(∇F(x))` at an interior feasible
/// point; `F* − F(x)` never exceeds it.
pub fn certified_gap(instance: &ProblemInstance, x: &Element) -> Result<f64, SolverError> {
    let grad = instance.grad(x)?;
    let dec = spectral_decomposition(&grad)?;
    Ok(dec.lambda_max().ln())
}

/// Solver state kept in log coordinates: `y = ln x` is exact even when
/// eigenvalues of the iterate underflow, so long runs toward a
/// boundary-supported optimum never re-take the logarithm of a
/// near-singular point. `x = exp(y)` is refreshed after every step.
struct LogIterate {
    y: Element,
    x: Element,
    lambda_min: f64,
}

impl LogIterate {
    fn from_interior(x: Element) -> Result<Self, SolverError> {
        let dec = spectral_decomposition(&x)?;
        let y = spectral_map_decomposed(&dec, ScalarMap::Ln)?;
        Ok(LogIterate {
            y,
            lambda_min: dec.lambda_min(),
            x,
        })
    }

    /// Evaluate the current point and advance: `y⁺ = y + ln ∇F(x) − (ln tr x̂)e`.
    fn advance(&self, instance: &ProblemInstance) -> Result<(f64, f64, f64, LogIterate), SolverError> {
        let value = instance.value(&self.x)?;
        let grad = instance.grad(&self.x)?;
        let g_dec = spectral_decomposition(&grad)?;
        let cert_gap = g_dec.lambda_max().ln();
        let ln_g = spectral_map_decomposed(&g_dec, ScalarMap::Ln)?;
        let y_hat = self.y.add(&ln_g)?;
        let hat_dec = spectral_decomposition(&y_hat)?;
        let x_hat = crate::eja::spectral_map_decomposed(&hat_dec, ScalarMap::Exp)?;
        let trace_pre = crate::eja::trace(&x_hat);
        if !(trace_pre.is_finite() && trace_pre > 0.0) {
            return Err(SolverError::Eja(EjaError::Domain(format!(
                "pre-normalization trace is {trace_pre}"
            ))));
        }
        let algebra = self.x.algebra().clone();
        let next = LogIterate {
            y: y_hat.sub(&algebra.identity().scale(trace_pre.ln()))?,
            x: x_hat.scale(1.0 / trace_pre),
            lambda_min: (hat_dec.lambda_min() - trace_pre.ln()).exp(),
        };
        Ok((value, cert_gap, trace_pre, next))
    }
}

fn resolve_x0(instance: &ProblemInstance, config: &SolverConfig) -> Result<Element, SolverError> {
    match &config.x0 {
        None => Ok(instance.center()),
        Some(x0) => {
            if x0.algebra() != instance.cone_algebra() {
                return Err(SolverError::Config(
                    "x0 lives in a different algebra than the instance".into(),
                ));
            }
            let tr = crate::eja::trace(x0);
            if (tr - 1.0).abs() > 1e-10 {
                return Err(SolverError::Config(format!(
                    "x0 must have unit trace, got {tr}"
                )));
            }
            if !crate::cone::in_interior(x0, crate::cone::ConeTolerance::default())? {
                return Err(SolverError::Config(
                    "x0 must lie in the cone interior".into(),
                ));
            }
            Ok(x0.clone())
        }
    }
}

/// Run the iteration until the certificate threshold or the iteration budget
/// is reached. Deterministic for fixed inputs.
pub fn solve(instance: &ProblemInstance, config: &SolverConfig) -> Result<SolveReport, SolverError> {
    if config.log_every == 0 {
        return Err(SolverError::Config("log_every must be positive".into()));
    }
    if !(config.gap_tol > 0.0) {
        return Err(SolverError::Config("gap_tol must be positive".into()));
    }
    let mut state = LogIterate::from_interior(resolve_x0(instance, config)?)?;
    let mut avg = state.x.clone();
    let mut best = state.x.clone();
    let mut best_value = f64::NEG_INFINITY;
    let mut best_gap = f64::INFINITY;
    let mut records = Vec::new();
    let mut trace_pre_last = 1.0;
    let mut t = 0usize;

    let avg_stats = |avg: &Element,
                     instance: &ProblemInstance|
     -> Result<(f64, f64), SolverError> {
        let value = instance.value(avg)?;
        let gap = certified_gap(instance, avg)?;
        Ok((value, gap))
    };

    let termination = loop {
        // Running mean over x^0..x^t, renormalized so drift cannot push the
        // average off the trace-one slice.
        if t > 0 && config.track_average {
            avg = avg.add(&state.x.sub(&avg)?.scale(1.0 / (t + 1) as f64))?;
            avg = avg.scale(1.0 / crate::eja::trace(&avg));
        }

        let (value, cert_gap, trace_pre, next) = match state.advance(instance) {
            Ok(step) => step,
            Err(e) => {
                // Record what we can and stop.
                let (avg_value, avg_gap) = avg_stats(&avg, instance).unwrap_or((f64::NAN, f64::NAN));
                records.push(IterationRecord {
                    t,
                    objective_value: instance.value(&state.x).unwrap_or(f64::NAN),
                    cert_gap: f64::NAN,
                    lambda_min_iterate: state.lambda_min,
                    trace_pre_normalization: trace_pre_last,
                    avg_objective_value: avg_value,
                    avg_cert_gap: avg_gap,
                });
                break Termination::NumericalFailure(format!("iteration {t}: {e}"));
            }
        };

        if value > best_value {
            best_value = value;
            best = state.x.clone();
            best_gap = cert_gap;
        }

        let logging = t % config.log_every == 0;
        let terminal_budget = t >= config.max_iters;

        if logging || terminal_budget {
            let (avg_value, avg_gap) = if config.track_average {
                avg_stats(&avg, instance)?
            } else {
                (value, cert_gap)
            };
            records.push(IterationRecord {
                t,
                objective_value: value,
                cert_gap,
                lambda_min_iterate: state.lambda_min,
                trace_pre_normalization: trace_pre_last,
                avg_objective_value: avg_value,
                avg_cert_gap: avg_gap,
            });
            if best_gap.min(avg_gap) <= config.gap_tol {
                break Termination::GapTolReached;
            }
        }
        if terminal_budget {
            break Termination::MaxIters;
        }

        trace_pre_last = trace_pre;
        state = next;
        t += 1;
    };

    let (averaged_value, averaged_cert_gap) = if config.track_average {
        (instance.value(&avg)?, certified_gap(instance, &avg)?)
    } else {
        (best_value, best_gap)
    };
    Ok(SolveReport {
        records,
        best_iterate: best,
        best_value,
        best_cert_gap: best_gap,
        averaged_iterate: avg,
        averaged_value,
        averaged_cert_gap,
        termination,
        iterations: t,
    })
}

/// A point on the ergodic-rate curve.
#[derive(Debug, Clone)]
pub struct RatePoint {
    pub t: usize,
    pub averaged_value: f64,
}

/// Output of a long reference run with averaged-objective checkpoints.
#[derive(Debug, Clone)]
pub struct RateCurve {
    pub points: Vec<RatePoint>,
    /// Upper bound on the optimum: best objective seen plus its certificate.
    pub reference_value: f64,
    /// Smallest certified gap observed along the run.
    pub reference_gap: f64,
    pub reference_iterate: Element,
}

/// Run `total_iters` steps from the simplex center, capturing the averaged
/// objective at each checkpoint `T` (average over `x^0..x^{T-1}`) and
/// tracking the iterate with the smallest certificate as the reference.
pub fn rate_curve(
    instance: &ProblemInstance,
    checkpoints: &[usize],
    total_iters: usize,
) -> Result<RateCurve, SolverError> {
    if checkpoints.is_empty() {
        return Err(SolverError::Config("no checkpoints given".into()));
    }
    if checkpoints.iter().any(|t| *t == 0) {
        return Err(SolverError::Config("checkpoints must be positive".into()));
    }
    let mut sorted: Vec<usize> = checkpoints.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let total = total_iters.max(*sorted.last().unwrap());

    let mut state = LogIterate::from_interior(instance.center())?;
    let mut avg = state.x.clone();
    let mut points = Vec::with_capacity(sorted.len());
    let mut next_checkpoint = 0usize;
    let mut best_gap = f64::INFINITY;
    let mut best_gap_value = f64::NEG_INFINITY;
    let mut best_gap_iterate = state.x.clone();

    for t in 0..total {
        if t > 0 {
            avg = avg.add(&state.x.sub(&avg)?.scale(1.0 / (t + 1) as f64))?;
            avg = avg.scale(1.0 / crate::eja::trace(&avg));
        }
        // avg now holds x̄^{t+1} (mean of x^0..x^t); emit checkpoints T = t+1.
        let (value, cert_gap, _, next) = state.advance(instance)?;
        if cert_gap < best_gap {
            best_gap = cert_gap;
            best_gap_value = value;
            best_gap_iterate = state.x.clone();
        }
        while next_checkpoint < sorted.len() && sorted[next_checkpoint] == t + 1 {
            points.push(RatePoint {
                t: t + 1,
                averaged_value: instance.value(&avg)?,
            });
            next_checkpoint += 1;
        }
        state = next;
    }

    Ok(RateCurve {
        points,
        reference_value: best_gap_value + best_gap.max(0.0),
        reference_gap: best_gap,
        reference_iterate: best_gap_iterate,
    })
}
