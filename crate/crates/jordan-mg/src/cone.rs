//! Symmetric-cone predicates and order utilities.
//!
//! The cone of squares of an EJA consists of the elements with nonnegative
//! eigenvalues; everything here reduces to eigenvalue tests plus the
//! quadratic representation.

use crate::eja::{
    inner, quad_rep_apply, spectral_decomposition, spectral_map, Element, EjaError, ScalarMap,
};

/// Relative tolerance for membership predicates.
///
/// Thresholds scale with `1 + |λ_max|` so badly scaled instances do not flip
/// predicates; at `λ_max = 0` this degrades to the absolute tolerance.
#[derive(Debug, Clone, Copy)]
pub struct ConeTolerance {
    pub rel_tol: f64,
}

impl Default for ConeTolerance {
    fn default() -> Self {
        ConeTolerance { rel_tol: 1e-9 }
    }
}

impl ConeTolerance {
    pub fn new(rel_tol: f64) -> Self {
        assert!(rel_tol > 0.0, "tolerance must be positive");
        ConeTolerance { rel_tol }
    }

    fn threshold(&self, lambda_max: f64) -> f64 {
        self.rel_tol * (1.0 + lambda_max.abs())
    }
}

pub fn in_cone(x: &Element, tol: ConeTolerance) -> Result<bool, EjaError> {
    let (lo, hi) = lambda_extremes(x)?;
    Ok(lo >= -tol.threshold(hi))
}

pub fn in_interior(x: &Element, tol: ConeTolerance) -> Result<bool, EjaError> {
    let (lo, hi) = lambda_extremes(x)?;
    Ok(lo > tol.threshold(hi))
}

/// Partial order `x ⪯_𝒦 y`, i.e. `y − x` has nonnegative eigenvalues.
pub fn cone_leq(x: &Element, y: &Element, tol: ConeTolerance) -> Result<bool, EjaError> {
    in_cone(&y.sub(x)?, tol)
}

/// `(λ_min(x), λ_max(x))`.
pub fn lambda_extremes(x: &Element) -> Result<(f64, f64), EjaError> {
    let dec = spectral_decomposition(x)?;
    Ok((dec.lambda_min(), dec.lambda_max()))
}

/// Scaling point `w = P(x^{−1/2})(P(x^{1/2})y)^{1/2}` of an interior pair,
/// the unique interior element with `P(w)x = y`.
pub fn scaling_point(x: &Element, y: &Element) -> Result<Element, EjaError> {
    for (name, z) in [("x", x), ("y", y)] {
        if !in_interior(z, ConeTolerance::default())? {
            return Err(EjaError::Domain(format!(
                "scaling_point requires interior elements; {name} is not"
            )));
        }
    }
    let x_half = spectral_map(x, ScalarMap::Pow(0.5))?;
    let x_neg_half = spectral_map(x, ScalarMap::Pow(-0.5))?;
    let mid = quad_rep_apply(&x_half, y)?;
    let mid_root = spectral_map(&mid, ScalarMap::Pow(0.5))?;
    quad_rep_apply(&x_neg_half, &mid_root)
}

/// Maximize `⟨b,x⟩` over the generalized unit simplex `𝒞 = {x ⪰ 0 : tr x = 1}`.
///
/// The value is `λ_max(b)` attained at the top frame element; under ties the
/// frame produced by the eigen-solver is returned (only the value is
/// contractual).
pub fn simplex_lin_max(b: &Element) -> Result<(f64, Element), EjaError> {
    let dec = spectral_decomposition(b)?;
    Ok((dec.lambda_max(), dec.frame[0].clone()))
}

/// `⟨b, x⟩ ≤ λ_max(b)` witness helper for audits: evaluates both sides.
pub fn lin_max_slack(b: &Element, x: &Element) -> Result<f64, EjaError> {
    let (value, _) = simplex_lin_max(b)?;
    Ok(value - inner(b, x)?)
}
