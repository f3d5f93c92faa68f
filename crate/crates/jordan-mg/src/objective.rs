//! 1-logarithmically-homogeneous objective oracles and the linear maps that
//! connect the decision cone to the objective's domain.
//!
//! An objective `f` satisfies `f(ty) = f(y) + ln t`, which forces
//! `⟨∇f(y), y⟩ = 1` on interior points and `∇f(y)` interior in the dual cone.
//! The composite objective on the decision cone is `F(x) = f(𝖠x)` with
//! `∇F(x) = 𝖠*∇f(𝖠x)`.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::eja::{
    domain_floor, inner, quad_rep_apply, spectral_decomposition, spectral_map, sym_to_matrix,
    Algebra, Element, EjaError, ScalarMap,
};

#[derive(Debug, Error)]
pub enum ObjectiveError {
    #[error(transparent)]
    Eja(#[from] EjaError),
    #[error("objective domain violation: {0}")]
    Domain(String),
    #[error("invalid objective: {0}")]
    Invalid(String),
    #[error("linear map expects source algebra {expected:?}, got {got:?}")]
    SourceMismatch { expected: Algebra, got: Algebra },
}

/// A 1-logarithmically-homogeneous concave objective on the interior of a
/// symmetric cone, queried through value and gradient only.
#[derive(Debug, Clone)]
pub enum Objective {
    /// `f(y) = Σ pⱼ ln yⱼ` on `ℝ₊^m` with `Σ pⱼ = 1`.
    WeightedLog { weights: Vec<f64> },
    /// `f(y) = r⁻¹ ln det(y)` on the interior of the given algebra's cone.
    LogDetNormalized { algebra: Algebra },
    /// `f(y) = p⁻¹ ln Σ yⱼ^p` with `p ∈ (0,1)`.
    ///
    /// Strict positivity of `y` is required even though the function extends
    /// to `ℝ₊^m ∖ {0}`: iterates stay interior and strictness keeps gradients
    /// finite.
    LogPNorm { p: f64, dim: usize },
    /// `Σ βᵢ fᵢ` with `βᵢ > 0`, `Σ βᵢ = 1`, all terms on one ambient algebra.
    ConvexCombination { terms: Vec<(f64, Objective)> },
}

impl Objective {
    pub fn weighted_log(weights: Vec<f64>) -> Result<Self, ObjectiveError> {
        if weights.is_empty() || weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(ObjectiveError::Invalid(
                "weights must be positive and finite".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ObjectiveError::Invalid(format!(
                "weights must sum to 1, got {total}"
            )));
        }
        Ok(Objective::WeightedLog { weights })
    }

    pub fn log_p_norm(p: f64, dim: usize) -> Result<Self, ObjectiveError> {
        if !(0.0 < p && p < 1.0) {
            return Err(ObjectiveError::Invalid(format!(
                "p must lie in (0,1), got {p}"
            )));
        }
        Ok(Objective::LogPNorm { p, dim })
    }

    pub fn convex_combination(terms: Vec<(f64, Objective)>) -> Result<Self, ObjectiveError> {
        if terms.is_empty() {
            return Err(ObjectiveError::Invalid("empty combination".into()));
        }
        let total: f64 = terms.iter().map(|(b, _)| b).sum();
        if terms.iter().any(|(b, _)| *b <= 0.0) || (total - 1.0).abs() > 1e-9 {
            return Err(ObjectiveError::Invalid(
                "combination weights must be positive and sum to 1".into(),
            ));
        }
        let domain = terms[0].1.domain();
        if terms.iter().any(|(_, f)| f.domain() != domain) {
            return Err(ObjectiveError::Invalid(
                "all terms must share one ambient algebra".into(),
            ));
        }
        Ok(Objective::ConvexCombination { terms })
    }

    /// Algebra of the objective's domain cone `𝒦₂`.
    pub fn domain(&self) -> Algebra {
        match self {
            Objective::WeightedLog { weights } => Algebra::Rn(weights.len()),
            Objective::LogDetNormalized { algebra } => algebra.clone(),
            Objective::LogPNorm { dim, .. } => Algebra::Rn(*dim),
            Objective::ConvexCombination { terms } => terms[0].1.domain(),
        }
    }

    pub fn value(&self, y: &Element) -> Result<f64, ObjectiveError> {
        self.check_domain(y)?;
        match self {
            Objective::WeightedLog { weights } => {
                let ys = positive_coords(y)?;
                Ok(weights.iter().zip(ys).map(|(p, v)| p * v.ln()).sum())
            }
            Objective::LogDetNormalized { algebra } => {
                let dec = spectral_decomposition(y)?;
                let floor = domain_floor(dec.lambda_max());
                if dec.lambda_min() <= floor {
                    return Err(ObjectiveError::Domain(format!(
                        "log-det needs an interior point; lambda_min = {:.6e}",
                        dec.lambda_min()
                    )));
                }
                let r = algebra.rank() as f64;
                Ok(dec.eigenvalues.iter().map(|l| l.ln()).sum::<f64>() / r)
            }
            Objective::LogPNorm { p, .. } => {
                let ys = positive_coords(y)?;
                let total: f64 = ys.iter().map(|v| v.powf(*p)).sum();
                Ok(total.ln() / p)
            }
            Objective::ConvexCombination { terms } => {
                let mut acc = 0.0;
                for (beta, f) in terms {
                    acc += beta * f.value(y)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn grad(&self, y: &Element) -> Result<Element, ObjectiveError> {
        self.check_domain(y)?;
        match self {
            Objective::WeightedLog { weights } => {
                let ys = positive_coords(y)?;
                let coords = weights.iter().zip(ys).map(|(p, v)| p / v).collect();
                Ok(Element::new(y.algebra().clone(), coords)?)
            }
            Objective::LogDetNormalized { algebra } => {
                let r = algebra.rank() as f64;
                Ok(spectral_map(y, ScalarMap::Inv)?.scale(1.0 / r))
            }
            Objective::LogPNorm { p, .. } => {
                let ys = positive_coords(y)?;
                let total: f64 = ys.iter().map(|v| v.powf(*p)).sum();
                let coords = ys.iter().map(|v| v.powf(p - 1.0) / total).collect();
                Ok(Element::new(y.algebra().clone(), coords)?)
            }
            Objective::ConvexCombination { terms } => {
                let mut acc = self.domain().zero();
                for (beta, f) in terms {
                    acc = acc.add(&f.grad(y)?.scale(*beta))?;
                }
                Ok(acc)
            }
        }
    }

    fn check_domain(&self, y: &Element) -> Result<(), ObjectiveError> {
        if *y.algebra() != self.domain() {
            return Err(ObjectiveError::SourceMismatch {
                expected: self.domain(),
                got: y.algebra().clone(),
            });
        }
        Ok(())
    }
}

fn positive_coords(y: &Element) -> Result<&[f64], ObjectiveError> {
    let hi = y.coords().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let floor = domain_floor(hi);
    if y.coords().iter().any(|v| *v <= floor) {
        let lo = y.coords().iter().cloned().fold(f64::INFINITY, f64::min);
        return Err(ObjectiveError::Domain(format!(
            "coordinates must be strictly positive; min = {lo:.6e}"
        )));
    }
    Ok(y.coords())
}

/// Linear map `𝖠 : 𝒦₁ → 𝒦₂` with an explicit adjoint.
#[derive(Debug, Clone)]
pub enum LinearMap {
    /// `x ↦ (⟨cⱼ, x⟩)ⱼ` into `ℝ₊^m`; adjoint `y ↦ Σ yⱼ cⱼ`.
    InnerProduct { factors: Vec<Element> },
    /// `x ∈ ℝ₊^m ↦ Σ xᵢ aᵢaᵢᵀ` into `Sym(n)`; adjoint `Y ↦ (aᵢᵀ Y aᵢ)ᵢ`.
    RankOneAssembly { points: Vec<DVector<f64>>, dim: usize },
    /// `𝖡 = 𝖠 ∘ P(w)`, the affine-normalization composition.
    Composition {
        inner: Box<LinearMap>,
        scaling: Element,
    },
}

impl LinearMap {
    pub fn source(&self) -> Algebra {
        match self {
            LinearMap::InnerProduct { factors } => factors[0].algebra().clone(),
            LinearMap::RankOneAssembly { points, .. } => Algebra::Rn(points.len()),
            LinearMap::Composition { inner, .. } => inner.source(),
        }
    }

    pub fn target(&self) -> Algebra {
        match self {
            LinearMap::InnerProduct { factors } => Algebra::Rn(factors.len()),
            LinearMap::RankOneAssembly { dim, .. } => Algebra::Sym(*dim),
            LinearMap::Composition { inner, .. } => inner.target(),
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element, ObjectiveError> {
        if *x.algebra() != self.source() {
            return Err(ObjectiveError::SourceMismatch {
                expected: self.source(),
                got: x.algebra().clone(),
            });
        }
        match self {
            LinearMap::InnerProduct { factors } => {
                let coords = factors
                    .iter()
                    .map(|c| inner(c, x))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Element::new(Algebra::Rn(factors.len()), coords)?)
            }
            LinearMap::RankOneAssembly { points, dim } => {
                let mut m = DMatrix::zeros(*dim, *dim);
                for (xi, a) in x.coords().iter().zip(points) {
                    m += *xi * a * a.transpose();
                }
                Ok(Element::from_matrix(&m)?)
            }
            LinearMap::Composition { inner, scaling } => {
                inner.apply(&quad_rep_apply(scaling, x)?)
            }
        }
    }

    pub fn adjoint(&self, y: &Element) -> Result<Element, ObjectiveError> {
        if *y.algebra() != self.target() {
            return Err(ObjectiveError::SourceMismatch {
                expected: self.target(),
                got: y.algebra().clone(),
            });
        }
        match self {
            LinearMap::InnerProduct { factors } => {
                let mut acc = self.source().zero();
                for (c, v) in factors.iter().zip(y.coords()) {
                    acc = acc.add(&c.scale(*v))?;
                }
                Ok(acc)
            }
            LinearMap::RankOneAssembly { points, dim } => {
                let ym = sym_to_matrix(*dim, y.coords());
                let coords = points
                    .iter()
                    .map(|a| (a.transpose() * &ym * a)[(0, 0)])
                    .collect();
                Ok(Element::new(Algebra::Rn(points.len()), coords)?)
            }
            // P(w) is self-adjoint, so (𝖠 P(w))* = P(w) 𝖠*.
            LinearMap::Composition { inner, scaling } => {
                Ok(quad_rep_apply(scaling, &inner.adjoint(y)?)?)
            }
        }
    }
}
