//! Numerical oracles for the standalone inequalities underlying the method,
//! usable from tests and from the CLI `verify` subcommand to audit custom
//! algebras or objectives.
//!
//! Margins are signed distances to violation in λ_min / trace units rather
//! than booleans, so slack can be trended over time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cone::{in_cone, in_interior, ConeTolerance};
use crate::eja::{
    inner, jordan_product, quad_rep_apply, spectral_decomposition, spectral_map, trace, Algebra,
    Element, EjaError, ScalarMap,
};
use crate::problem::{random_instance, Dims, InstanceKind, ProblemError, ProblemInstance};
use crate::sample;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Eja(#[from] EjaError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub passed: bool,
    /// Signed distance to violation; nonnegative iff passed (at tolerance 0).
    pub margin: f64,
    /// Input echo, populated on failure for reproduction.
    pub witness: Option<String>,
}

impl CheckResult {
    fn from_margin(margin: f64, witness: impl FnOnce() -> String) -> Self {
        let passed = margin >= 0.0;
        CheckResult {
            passed,
            margin,
            witness: if passed { None } else { Some(witness()) },
        }
    }

    /// Re-evaluate pass/fail against a (typically slightly negative) floor.
    pub fn passes_at(&self, tol: f64) -> bool {
        self.margin >= -tol
    }
}

/// Golden-Thompson: `tr exp(x+y) ≤ tr(exp x ∘ exp y)`; margin is the slack.
pub fn check_golden_thompson(x: &Element, y: &Element) -> Result<CheckResult, VerifyError> {
    let lhs = trace(&spectral_map(&x.add(y)?, ScalarMap::Exp)?);
    let rhs = trace(&jordan_product(
        &spectral_map(x, ScalarMap::Exp)?,
        &spectral_map(y, ScalarMap::Exp)?,
    )?);
    Ok(CheckResult::from_margin(rhs - lhs, || {
        format!("x = {:?}, y = {:?}", x.coords(), y.coords())
    }))
}

/// Operator monotonicity of ln and antitonicity of inversion:
/// `y ⪰ x ≻ 0` implies `ln y ⪰ ln x` and `y⁻¹ ⪯ x⁻¹`. The margin is the
/// smaller λ_min of the two conclusion differences.
pub fn check_ln_monotone(x: &Element, y: &Element) -> Result<CheckResult, VerifyError> {
    let tol = ConeTolerance::default();
    if !in_interior(x, tol)? {
        return Err(VerifyError::Precondition("x must be interior".into()));
    }
    if !in_cone(&y.sub(x)?, tol)? {
        return Err(VerifyError::Precondition("y - x must lie in the cone".into()));
    }
    let ln_diff = spectral_map(y, ScalarMap::Ln)?.sub(&spectral_map(x, ScalarMap::Ln)?)?;
    let inv_diff = spectral_map(x, ScalarMap::Inv)?.sub(&spectral_map(y, ScalarMap::Inv)?)?;
    let m1 = spectral_decomposition(&ln_diff)?.lambda_min();
    let m2 = spectral_decomposition(&inv_diff)?.lambda_min();
    Ok(CheckResult::from_margin(m1.min(m2), || {
        format!("x = {:?}, y = {:?}", x.coords(), y.coords())
    }))
}

/// Cauchy-Schwarz-type cone inequality:
/// `Σβᵢ²vᵢ ⪰ P(Σαᵢβᵢvᵢ)(Σαᵢ²vᵢ)⁻¹` for cone elements `vᵢ` with the
/// α-weighted sum interior. Margin is λ_min of the difference.
pub fn check_cs_inequality(
    v: &[Element],
    alpha: &[f64],
    beta: &[f64],
) -> Result<CheckResult, VerifyError> {
    if v.is_empty() || v.len() != alpha.len() || v.len() != beta.len() {
        return Err(VerifyError::Precondition(
            "v, alpha, beta must be nonempty and equally long".into(),
        ));
    }
    let algebra = v[0].algebra().clone();
    let mut sum_b2 = algebra.zero();
    let mut sum_ab = algebra.zero();
    let mut sum_a2 = algebra.zero();
    for ((vi, &a), &b) in v.iter().zip(alpha).zip(beta) {
        sum_b2 = sum_b2.add(&vi.scale(b * b))?;
        sum_ab = sum_ab.add(&vi.scale(a * b))?;
        sum_a2 = sum_a2.add(&vi.scale(a * a))?;
    }
    if !in_interior(&sum_a2, ConeTolerance::default())? {
        return Err(VerifyError::Precondition(
            "the α²-weighted sum must be interior".into(),
        ));
    }
    let rhs = quad_rep_apply(&sum_ab, &spectral_map(&sum_a2, ScalarMap::Inv)?)?;
    let margin = spectral_decomposition(&sum_b2.sub(&rhs)?)?.lambda_min();
    Ok(CheckResult::from_margin(margin, || {
        format!("alpha = {alpha:?}, beta = {beta:?}")
    }))
}

/// Growth bound `F(x*) − F(x) ≤ ln ⟨∇F(x), x*⟩`; margin is the slack.
pub fn check_growth_bound(
    instance: &ProblemInstance,
    x: &Element,
    x_star: &Element,
) -> Result<CheckResult, VerifyError> {
    if !in_interior(x, ConeTolerance::default())? {
        return Err(VerifyError::Precondition("x must be interior".into()));
    }
    let pairing = inner(&instance.grad(x)?, x_star)?;
    if !(pairing > 0.0) {
        return Err(VerifyError::Precondition(format!(
            "⟨∇F(x), x*⟩ = {pairing} is not positive"
        )));
    }
    let margin = pairing.ln() - (instance.value(x_star)? - instance.value(x)?);
    Ok(CheckResult::from_margin(margin, || {
        format!("x = {:?}, x_star = {:?}", x.coords(), x_star.coords())
    }))
}

fn require_primitive_idempotent(u: &Element) -> Result<(), VerifyError> {
    let sq = jordan_product(u, u).map_err(VerifyError::Eja)?;
    let idem = sq.sub(u).map_err(VerifyError::Eja)?.norm();
    let unit = (u.norm() - 1.0).abs();
    if idem > 1e-8 || unit > 1e-8 {
        return Err(VerifyError::Precondition(format!(
            "u is not a primitive idempotent (‖u∘u−u‖ = {idem:.2e}, |‖u‖−1| = {unit:.2e})"
        )));
    }
    Ok(())
}

/// Gradient log-convexity along a segment, tested against one primitive
/// idempotent direction `u`:
/// `⟨λ ln∇F(x) + (1−λ) ln∇F(y) − ln∇F(λx+(1−λ)y), u⟩ ≥ 0`.
pub fn check_grad_log_convexity(
    instance: &ProblemInstance,
    x: &Element,
    y: &Element,
    lambda: f64,
    u: &Element,
) -> Result<CheckResult, VerifyError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(VerifyError::Precondition(format!(
            "λ = {lambda} outside [0, 1]"
        )));
    }
    require_primitive_idempotent(u)?;
    let tol = ConeTolerance::default();
    if !in_interior(x, tol)? || !in_interior(y, tol)? {
        return Err(VerifyError::Precondition(
            "x and y must be interior".into(),
        ));
    }
    let ln_grad = |z: &Element| -> Result<Element, VerifyError> {
        Ok(spectral_map(&instance.grad(z)?, ScalarMap::Ln)?)
    };
    let mid = x.lerp(y, 1.0 - lambda)?; // λx + (1−λ)y
    let combo = ln_grad(x)?
        .scale(lambda)
        .add(&ln_grad(y)?.scale(1.0 - lambda))?;
    let margin = inner(&combo.sub(&ln_grad(&mid)?)?, u)?;
    Ok(CheckResult::from_margin(margin, || {
        format!(
            "lambda = {lambda}, x = {:?}, y = {:?}, u = {:?}",
            x.coords(),
            y.coords(),
            u.coords()
        )
    }))
}

/// Central-difference audit of `∇F`; margin = 1e−5 − relative error.
pub fn check_grad_fd(
    instance: &ProblemInstance,
    x: &Element,
) -> Result<CheckResult, VerifyError> {
    if !in_interior(x, ConeTolerance::default())? {
        return Err(VerifyError::Precondition("x must be interior".into()));
    }
    let grad = instance.grad(x)?;
    let algebra = x.algebra().clone();
    let dim = algebra.ambient_dim();
    let h = 1e-6 * (1.0 + x.norm());
    let mut err_sq = 0.0;
    let mut ref_sq = 0.0;
    for k in 0..dim {
        let mut coords = vec![0.0; dim];
        coords[k] = 1.0;
        let basis = Element::new(algebra.clone(), coords).expect("basis coordinates");
        let fp = instance.value(&x.add(&basis.scale(h))?)?;
        let fm = instance.value(&x.sub(&basis.scale(h))?)?;
        let fd = (fp - fm) / (2.0 * h);
        // The directional derivative along coordinate k is ⟨∇F, e_k⟩ in the
        // trace inner product (off-diagonal Sym coordinates carry weight 2).
        let analytic = inner(&grad, &basis)?;
        err_sq += (fd - analytic).powi(2);
        ref_sq += analytic.powi(2);
    }
    let rel = err_sq.sqrt() / ref_sq.sqrt().max(1e-12);
    Ok(CheckResult::from_margin(1e-5 - rel, || {
        format!("x = {:?}, relative error {rel:.3e}", x.coords())
    }))
}

/// Aggregate over many runs of one check.
#[derive(Debug, Clone)]
pub struct SuiteLine {
    pub name: String,
    pub runs: usize,
    pub failures: usize,
    pub worst_margin: f64,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub lines: Vec<SuiteLine>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| l.failures == 0)
    }
}

/// Scale-relative failure floor used by the suite drivers.
const SUITE_TOL: f64 = 1e-8;

fn suite_algebras() -> Vec<Algebra> {
    vec![
        Algebra::Rn(4),
        Algebra::Spin(4),
        Algebra::Sym(3),
        Algebra::DirectSum(vec![Algebra::Rn(2), Algebra::Spin(3), Algebra::Sym(2)]),
    ]
}

fn suite_instances() -> Result<Vec<ProblemInstance>, VerifyError> {
    Ok(vec![
        random_instance(InstanceKind::Pet, Dims { m: 6, n: 10 }, 101)?,
        random_instance(InstanceKind::Doptimal, Dims { m: 12, n: 3 }, 102)?,
        random_instance(InstanceKind::QstReal, Dims { m: 9, n: 3 }, 103)?,
        random_instance(InstanceKind::Bqp, Dims { m: 0, n: 3 }, 104)?,
    ])
}

struct LineAccum {
    name: String,
    runs: usize,
    failures: usize,
    worst: f64,
}

impl LineAccum {
    fn new(name: impl Into<String>) -> Self {
        LineAccum {
            name: name.into(),
            runs: 0,
            failures: 0,
            worst: f64::INFINITY,
        }
    }

    fn record(&mut self, result: &CheckResult, scale: f64) {
        self.runs += 1;
        let rel = result.margin / scale.max(1.0);
        if rel < -SUITE_TOL {
            self.failures += 1;
        }
        self.worst = self.worst.min(result.margin);
    }

    fn finish(self) -> SuiteLine {
        SuiteLine {
            name: self.name,
            runs: self.runs,
            failures: self.failures,
            worst_margin: if self.runs == 0 { 0.0 } else { self.worst },
        }
    }
}

/// Kernel invariants per algebra: spectral reconstruction, frame properties,
/// exp/ln round trip, and `P(x)e = x²`.
pub fn run_eja_suite(seeds: usize) -> Result<SuiteReport, VerifyError> {
    let mut recon = LineAccum::new("eja/spectral_reconstruction");
    let mut frames = LineAccum::new("eja/frame_invariants");
    let mut round = LineAccum::new("eja/exp_ln_round_trip");
    let mut quad = LineAccum::new("eja/quad_rep_identity");
    for algebra in suite_algebras() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xE1A);
        for _ in 0..seeds {
            let x = sample::random_element(&mut rng, &algebra);
            let scale = 1.0 + x.norm();
            let dec = spectral_decomposition(&x)?;
            let mut rebuilt = algebra.zero();
            let mut frame_err: f64 = 0.0;
            let mut completeness = algebra.zero();
            for (i, (lam, q)) in dec.eigenvalues.iter().zip(&dec.frame).enumerate() {
                rebuilt = rebuilt.add(&q.scale(*lam))?;
                completeness = completeness.add(q)?;
                frame_err = frame_err.max(jordan_product(q, q)?.sub(q)?.norm());
                frame_err = frame_err.max((q.norm() - 1.0).abs());
                for other in &dec.frame[i + 1..] {
                    frame_err = frame_err.max(inner(q, other)?.abs());
                }
            }
            frame_err = frame_err.max(completeness.sub(&algebra.identity())?.norm());
            recon.record(
                &CheckResult::from_margin(1e-8 * scale - rebuilt.sub(&x)?.norm(), String::new),
                scale,
            );
            frames.record(&CheckResult::from_margin(1e-8 - frame_err, String::new), 1.0);

            let interior = sample::random_interior(&mut rng, &algebra);
            let back = spectral_map(&spectral_map(&interior, ScalarMap::Ln)?, ScalarMap::Exp)?;
            let rt_scale = 1.0 + interior.norm();
            round.record(
                &CheckResult::from_margin(
                    1e-8 * rt_scale - back.sub(&interior)?.norm(),
                    String::new,
                ),
                rt_scale,
            );

            let sq = jordan_product(&x, &x)?;
            let pe = quad_rep_apply(&x, &algebra.identity())?;
            quad.record(
                &CheckResult::from_margin(1e-8 * (1.0 + sq.norm()) - pe.sub(&sq)?.norm(), String::new),
                1.0 + sq.norm(),
            );
        }
    }
    Ok(SuiteReport {
        lines: vec![recon.finish(), frames.finish(), round.finish(), quad.finish()],
    })
}

/// Cone predicates and the scaling point's defining property `P(w)x = y`.
pub fn run_cone_suite(seeds: usize) -> Result<SuiteReport, VerifyError> {
    let tol = ConeTolerance::default();
    let mut member = LineAccum::new("cone/square_membership");
    let mut order = LineAccum::new("cone/order_consistency");
    let mut scaling = LineAccum::new("cone/scaling_point");
    let mut linmax = LineAccum::new("cone/simplex_lin_max");
    for algebra in suite_algebras() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
        for _ in 0..seeds {
            let z = sample::random_element(&mut rng, &algebra);
            let sq = jordan_product(&z, &z)?;
            member.record(
                &CheckResult::from_margin(
                    if in_cone(&sq, tol)? { 1.0 } else { -1.0 },
                    String::new,
                ),
                1.0,
            );
            let (x, y) = sample::random_ordered_pair(&mut rng, &algebra);
            order.record(
                &CheckResult::from_margin(
                    if crate::cone::cone_leq(&x, &y, tol)? { 1.0 } else { -1.0 },
                    String::new,
                ),
                1.0,
            );
            let w = crate::cone::scaling_point(&x, &y)?;
            let err = quad_rep_apply(&w, &x)?.sub(&y)?.norm();
            let scale = 1.0 + y.norm();
            scaling.record(&CheckResult::from_margin(1e-7 * scale - err, String::new), scale);
            // λ_max is an upper bound for ⟨b, s⟩ over simplex points s.
            let b = sample::random_element(&mut rng, &algebra);
            let s = sample::random_simplex_point(&mut rng, &algebra);
            let slack = crate::cone::lin_max_slack(&b, &s)?;
            linmax.record(&CheckResult::from_margin(slack, String::new), 1.0 + b.norm());
        }
    }
    Ok(SuiteReport {
        lines: vec![member.finish(), order.finish(), scaling.finish(), linmax.finish()],
    })
}

/// Objective identities: 1-log-homogeneity, `⟨∇f(y), y⟩ = 1`, and
/// finite-difference agreement of instance gradients.
pub fn run_objectives_suite(seeds: usize) -> Result<SuiteReport, VerifyError> {
    let mut lh = LineAccum::new("objectives/log_homogeneity");
    let mut euler = LineAccum::new("objectives/euler_identity");
    let mut fd = LineAccum::new("objectives/grad_fd");
    for instance in suite_instances()? {
        let algebra = instance.cone_algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0B1);
        for _ in 0..seeds {
            let x = sample::random_simplex_point(&mut rng, &algebra);
            let t = 0.25 + 2.0 * rng.random::<f64>();
            // F(tx) = F(x) + ln t by 1-log-homogeneity of f and linearity of 𝖠.
            let lhs = instance.value(&x.scale(t))?;
            let rhs = instance.value(&x)? + t.ln();
            lh.record(&CheckResult::from_margin(1e-9 - (lhs - rhs).abs(), String::new), 1.0);
            let pairing = inner(&instance.grad(&x)?, &x)?;
            euler.record(
                &CheckResult::from_margin(1e-9 - (pairing - 1.0).abs(), String::new),
                1.0,
            );
        }
        // Finite differences are costlier; three points per family suffice.
        for _ in 0..3.min(seeds) {
            let x = sample::random_simplex_point(&mut rng, &algebra);
            fd.record(&check_grad_fd(&instance, &x)?, 1.0);
        }
    }
    Ok(SuiteReport {
        lines: vec![lh.finish(), euler.finish(), fd.finish()],
    })
}

/// The standalone inequalities: Golden-Thompson, ln-monotonicity, the
/// CS-type cone inequality, growth bound, and gradient log-convexity.
pub fn run_inequalities_suite(seeds: usize) -> Result<SuiteReport, VerifyError> {
    let mut gt = LineAccum::new("inequalities/golden_thompson");
    let mut lnm = LineAccum::new("inequalities/ln_monotone");
    let mut cs = LineAccum::new("inequalities/cs_inequality");
    for algebra in suite_algebras() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1EA);
        for _ in 0..seeds {
            let x = sample::random_element(&mut rng, &algebra).scale(0.5);
            let y = sample::random_element(&mut rng, &algebra).scale(0.5);
            gt.record(&check_golden_thompson(&x, &y)?, 1.0);

            let (a, b) = sample::random_ordered_pair(&mut rng, &algebra);
            lnm.record(&check_ln_monotone(&a, &b)?, 1.0);

            let terms = 3;
            let v: Vec<Element> = (0..terms)
                .map(|_| sample::random_interior(&mut rng, &algebra))
                .collect();
            let alpha: Vec<f64> = (0..terms).map(|_| sample::standard_normal(&mut rng)).collect();
            let beta: Vec<f64> = (0..terms).map(|_| sample::standard_normal(&mut rng)).collect();
            cs.record(&check_cs_inequality(&v, &alpha, &beta)?, 1.0);
        }
    }
    let mut growth = LineAccum::new("inequalities/growth_bound");
    let mut glc = LineAccum::new("inequalities/grad_log_convexity");
    for instance in suite_instances()? {
        let algebra = instance.cone_algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(0x6B0);
        for _ in 0..seeds {
            let x = sample::random_simplex_point(&mut rng, &algebra);
            let x_star = sample::random_simplex_point(&mut rng, &algebra);
            growth.record(&check_growth_bound(&instance, &x, &x_star)?, 1.0);

            let y = sample::random_simplex_point(&mut rng, &algebra);
            let lambda = rng.random::<f64>();
            let base = sample::random_interior(&mut rng, &algebra);
            let dec = spectral_decomposition(&base)?;
            let u = dec.frame[0].clone();
            glc.record(&check_grad_log_convexity(&instance, &x, &y, lambda, &u)?, 1.0);
        }
    }
    Ok(SuiteReport {
        lines: vec![gt.finish(), lnm.finish(), cs.finish(), growth.finish(), glc.finish()],
    })
}

/// Suite selector used by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Eja,
    Cone,
    Objectives,
    Inequalities,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eja" => Ok(Suite::Eja),
            "cone" => Ok(Suite::Cone),
            "objectives" => Ok(Suite::Objectives),
            "inequalities" => Ok(Suite::Inequalities),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite `{other}` (expected eja|cone|objectives|inequalities|all)"
            )),
        }
    }
}

pub fn run_suite(suite: Suite, seeds: usize) -> Result<SuiteReport, VerifyError> {
    let mut lines = Vec::new();
    if matches!(suite, Suite::Eja | Suite::All) {
        lines.extend(run_eja_suite(seeds)?.lines);
    }
    if matches!(suite, Suite::Cone | Suite::All) {
        lines.extend(run_cone_suite(seeds)?.lines);
    }
    if matches!(suite, Suite::Objectives | Suite::All) {
        lines.extend(run_objectives_suite(seeds)?.lines);
    }
    if matches!(suite, Suite::Inequalities | Suite::All) {
        lines.extend(run_inequalities_suite(seeds)?.lines);
    }
    Ok(SuiteReport { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::build_pet;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;

    #[test]
    fn golden_thompson_equality_cases() {
        let x = Element::new(Algebra::Sym(2), vec![0.4, -0.3, 1.1]).unwrap();
        let r = check_golden_thompson(&x, &x).unwrap();
        assert!(r.passed);
        assert!(r.margin.abs() <= 1e-9, "margin {}", r.margin);
        let zero = Algebra::Sym(2).zero();
        let r = check_golden_thompson(&x, &zero).unwrap();
        assert!(r.margin.abs() <= 1e-9);
    }

    #[test]
    fn golden_thompson_strict_slack_noncommuting() {
        let mut saw_strict = false;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let x = sample::random_element(&mut rng, &Algebra::Sym(2));
            let y = sample::random_element(&mut rng, &Algebra::Sym(2));
            let r = check_golden_thompson(&x, &y).unwrap();
            assert!(r.margin >= -1e-9);
            if r.margin > 1e-6 {
                saw_strict = true;
            }
        }
        assert!(saw_strict);
    }

    #[test]
    fn ln_monotone_cases() {
        let x = Element::new(Algebra::Sym(2), vec![1.0, 0.2, 2.0]).unwrap();
        let r = check_ln_monotone(&x, &x).unwrap();
        assert!(r.margin.abs() <= 1e-9);
        // Rn reduces to scalar monotonicity.
        let a = Element::new(Algebra::Rn(3), vec![1.0, 2.0, 0.5]).unwrap();
        let b = Element::new(Algebra::Rn(3), vec![1.5, 2.0, 0.75]).unwrap();
        assert!(check_ln_monotone(&a, &b).unwrap().passed);
        // Precondition: y − x must be in the cone.
        assert!(check_ln_monotone(&b, &a).is_err());
    }

    #[test]
    fn cs_inequality_cases() {
        // Single term: equality.
        let v = vec![Element::new(Algebra::Sym(2), vec![1.3, 0.2, 0.9]).unwrap()];
        let r = check_cs_inequality(&v, &[0.7], &[1.9]).unwrap();
        assert!(r.margin.abs() <= 1e-9, "margin {}", r.margin);
        // Rn reduces to scalar Cauchy-Schwarz per coordinate.
        let v = vec![
            Element::new(Algebra::Rn(1), vec![2.0]).unwrap(),
            Element::new(Algebra::Rn(1), vec![0.5]).unwrap(),
        ];
        let (al, be) = ([1.0, -2.0], [0.5, 3.0]);
        let r = check_cs_inequality(&v, &al, &be).unwrap();
        let sb: f64 = 0.5 * 0.5 * 2.0 + 9.0 * 0.5;
        let sa: f64 = 2.0 + 4.0 * 0.5;
        let sab: f64 = 0.5 * 2.0 - 6.0 * 0.5;
        assert_relative_eq!(r.margin, sb - sab * sab / sa, epsilon = 1e-12);
        assert!(r.passed);
    }

    #[test]
    fn growth_bound_closed_form_pet() {
        // m=1, a = (1,2): F* = ln 2 at x* = e_2.
        let p = DMatrix::from_row_slice(1, 2, &[1.0, 2.0]);
        let instance = build_pet(&p, &[1.0]).unwrap();
        let x_star = Element::new(Algebra::Rn(2), vec![0.0, 1.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let x = sample::random_simplex_point(&mut rng, &Algebra::Rn(2));
            let r = check_growth_bound(&instance, &x, &x_star).unwrap();
            assert!(r.passes_at(1e-12), "margin {}", r.margin);
        }
        // x = x*, interior: margin is exactly ln⟨∇F(x),x⟩ = 0.
        let c = instance.center();
        let r = check_growth_bound(&instance, &c, &c).unwrap();
        assert!(r.margin.abs() <= 1e-10);
    }

    #[test]
    fn grad_log_convexity_endpoints_and_validation() {
        let instance = suite_instances().unwrap().into_iter().nth(1).unwrap();
        let algebra = instance.cone_algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x = sample::random_simplex_point(&mut rng, &algebra);
        let y = sample::random_simplex_point(&mut rng, &algebra);
        let dec = spectral_decomposition(&sample::random_interior(&mut rng, &algebra)).unwrap();
        let u = dec.frame[0].clone();
        for lambda in [0.0, 1.0] {
            let r = check_grad_log_convexity(&instance, &x, &y, lambda, &u).unwrap();
            assert!(r.margin.abs() <= 1e-9);
        }
        let r = check_grad_log_convexity(&instance, &x, &x, 0.3, &u).unwrap();
        assert!(r.margin.abs() <= 1e-9);
        // Not an idempotent:
        let bad = u.scale(2.0);
        assert!(check_grad_log_convexity(&instance, &x, &y, 0.5, &bad).is_err());
        assert!(check_grad_log_convexity(&instance, &x, &y, 1.5, &u).is_err());
    }

    #[test]
    fn grad_fd_agrees_on_all_families() {
        for instance in suite_instances().unwrap() {
            let algebra = instance.cone_algebra().clone();
            let mut rng = ChaCha8Rng::seed_from_u64(23);
            for _ in 0..3 {
                let x = sample::random_simplex_point(&mut rng, &algebra);
                let r = check_grad_fd(&instance, &x).unwrap();
                assert!(r.passed, "{:?}", r.witness);
            }
        }
    }

    #[test]
    fn suites_pass_at_small_seed_count() {
        for suite in [Suite::Eja, Suite::Cone, Suite::Objectives, Suite::Inequalities] {
            let report = run_suite(suite, 10).unwrap();
            assert!(!report.lines.is_empty());
            for line in &report.lines {
                assert_eq!(line.failures, 0, "{} failed: worst {}", line.name, line.worst_margin);
            }
        }
    }
}
