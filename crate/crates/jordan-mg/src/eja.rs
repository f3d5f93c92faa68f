//! Executable Euclidean Jordan algebra kernel.
//!
//! Supported algebras: `ℝⁿ` with the elementwise product, the Jordan spin
//! algebra `𝕃ⁿ⁺¹`, real symmetric matrices `Herm(n,ℝ)` with `X∘Y = (XY+YX)/2`,
//! and direct sums thereof. Every element admits a spectral decomposition
//! `x = Σ λᵢ qᵢ` over a Jordan frame `{qᵢ}`, which is what all the spectral
//! functions (`exp`, `ln`, powers, inverse) are built on.
//!
//! Symmetric matrices are stored packed: upper triangle, row-major, each
//! off-diagonal entry stored once. The inner product is always the *trace*
//! inner product `⟨x,y⟩ = tr(x∘y)`, i.e. for `Herm(n,ℝ)` the full-matrix
//! Frobenius product, not a dot product of the packed coordinates.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EjaError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("coordinate vector has length {got}, algebra needs {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite coordinate encountered")]
    NonFinite,
    #[error("spectral function domain violation: {0}")]
    Domain(String),
    #[error("symmetric eigenvalue solver failed to converge")]
    EigenFailure,
}

/// Scalar function applied through the spectral decomposition,
/// `f(x) = Σ f(λᵢ(x)) qᵢ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarMap {
    Exp,
    Ln,
    Pow(f64),
    Inv,
}

/// Which Euclidean Jordan algebra an element lives in.
///
/// `Spin(d)` is the Jordan spin algebra on `ℝᵈ = ℝ × ℝᵈ⁻¹` (rank 2, `d ≥ 2`);
/// `Sym(n)` is `Herm(n,ℝ)` in packed storage; `DirectSum` concatenates
/// component coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Algebra {
    Rn(usize),
    Spin(usize),
    Sym(usize),
    DirectSum(Vec<Algebra>),
}

impl Algebra {
    pub fn rank(&self) -> usize {
        match self {
            Algebra::Rn(n) => *n,
            Algebra::Spin(_) => 2,
            Algebra::Sym(n) => *n,
            Algebra::DirectSum(parts) => parts.iter().map(Algebra::rank).sum(),
        }
    }

    /// Storage length of an element's coordinate vector.
    pub fn ambient_dim(&self) -> usize {
        match self {
            Algebra::Rn(n) => *n,
            Algebra::Spin(d) => *d,
            Algebra::Sym(n) => n * (n + 1) / 2,
            Algebra::DirectSum(parts) => parts.iter().map(Algebra::ambient_dim).sum(),
        }
    }

    pub fn identity(&self) -> Element {
        let mut coords = vec![0.0; self.ambient_dim()];
        self.write_identity(&mut coords);
        Element {
            algebra: self.clone(),
            coords,
        }
    }

    fn write_identity(&self, coords: &mut [f64]) {
        match self {
            Algebra::Rn(_) => coords.fill(1.0),
            Algebra::Spin(_) => {
                coords.fill(0.0);
                coords[0] = 1.0;
            }
            Algebra::Sym(n) => {
                coords.fill(0.0);
                for i in 0..*n {
                    coords[sym_index(*n, i, i)] = 1.0;
                }
            }
            Algebra::DirectSum(parts) => {
                let mut offset = 0;
                for part in parts {
                    let d = part.ambient_dim();
                    part.write_identity(&mut coords[offset..offset + d]);
                    offset += d;
                }
            }
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.clone(),
            coords: vec![0.0; self.ambient_dim()],
        }
    }
}

/// Packed upper-triangle index of entry `(i,j)` with `i ≤ j`, row-major.
pub fn sym_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * (2 * n - i + 1) / 2 + (j - i)
}

pub fn sym_to_matrix(n: usize, coords: &[f64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = coords[sym_index(n, i, j)];
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

pub fn sym_from_matrix(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut coords = vec![0.0; n * (n + 1) / 2];
    for i in 0..n {
        for j in i..n {
            coords[sym_index(n, i, j)] = 0.5 * (m[(i, j)] + m[(j, i)]);
        }
    }
    coords
}

/// A point of an EJA: a coordinate vector interpreted through its algebra.
///
/// Elements are immutable values; all operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    algebra: Algebra,
    coords: Vec<f64>,
}

impl Element {
    pub fn new(algebra: Algebra, coords: Vec<f64>) -> Result<Self, EjaError> {
        if coords.len() != algebra.ambient_dim() {
            return Err(EjaError::DimensionMismatch {
                expected: algebra.ambient_dim(),
                got: coords.len(),
            });
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(EjaError::NonFinite);
        }
        Ok(Element { algebra, coords })
    }

    /// Symmetric-matrix element from a dense matrix (symmetrized).
    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Self, EjaError> {
        assert_eq!(m.nrows(), m.ncols(), "matrix must be square");
        Element::new(Algebra::Sym(m.nrows()), sym_from_matrix(m))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        match &self.algebra {
            Algebra::Sym(n) => sym_to_matrix(*n, &self.coords),
            _ => panic!("to_matrix is only defined on Sym elements"),
        }
    }

    /// Norm induced by the trace inner product.
    pub fn norm(&self) -> f64 {
        inner(self, self).expect("same algebra").max(0.0).sqrt()
    }

    pub fn scale(&self, t: f64) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|v| v * t).collect(),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, EjaError> {
        check_same(self, other)?;
        Ok(Element {
            algebra: self.algebra.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, EjaError> {
        self.add(&other.scale(-1.0))
    }

    /// Affine combination `(1-t)·self + t·other`.
    pub fn lerp(&self, other: &Element, t: f64) -> Result<Element, EjaError> {
        self.scale(1.0 - t).add(&other.scale(t))
    }
}

fn check_same(x: &Element, y: &Element) -> Result<(), EjaError> {
    if x.algebra != y.algebra {
        return Err(EjaError::AlgebraMismatch);
    }
    Ok(())
}

/// Jordan product `x∘y`.
pub fn jordan_product(x: &Element, y: &Element) -> Result<Element, EjaError> {
    check_same(x, y)?;
    let coords = match &x.algebra {
        Algebra::Rn(_) => x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| a * b)
            .collect(),
        Algebra::Spin(d) => {
            let dot: f64 = x.coords.iter().zip(&y.coords).map(|(a, b)| a * b).sum();
            let mut out = vec![0.0; *d];
            out[0] = dot;
            for k in 1..*d {
                out[k] = x.coords[0] * y.coords[k] + y.coords[0] * x.coords[k];
            }
            out
        }
        Algebra::Sym(n) => {
            let a = sym_to_matrix(*n, &x.coords);
            let b = sym_to_matrix(*n, &y.coords);
            let prod = (&a * &b + &b * &a) * 0.5;
            sym_from_matrix(&prod)
        }
        Algebra::DirectSum(parts) => {
            let mut out = Vec::with_capacity(x.coords.len());
            let mut offset = 0;
            for part in parts {
                let d = part.ambient_dim();
                let xs = Element {
                    algebra: part.clone(),
                    coords: x.coords[offset..offset + d].to_vec(),
                };
                let ys = Element {
                    algebra: part.clone(),
                    coords: y.coords[offset..offset + d].to_vec(),
                };
                out.extend_from_slice(&jordan_product(&xs, &ys)?.coords);
                offset += d;
            }
            out
        }
    };
    Ok(Element {
        algebra: x.algebra.clone(),
        coords,
    })
}

/// Trace inner product `⟨x,y⟩ = tr(x∘y)`.
pub fn inner(x: &Element, y: &Element) -> Result<f64, EjaError> {
    check_same(x, y)?;
    Ok(inner_unchecked(&x.algebra, &x.coords, &y.coords))
}

fn inner_unchecked(algebra: &Algebra, x: &[f64], y: &[f64]) -> f64 {
    match algebra {
        Algebra::Rn(_) => x.iter().zip(y).map(|(a, b)| a * b).sum(),
        // tr(x∘y) = 2 x·y in the spin algebra (both eigenvalues of x∘y sum to
        // twice the scalar part).
        Algebra::Spin(_) => 2.0 * x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>(),
        Algebra::Sym(n) => {
            let mut acc = 0.0;
            for i in 0..*n {
                for j in i..*n {
                    let idx = sym_index(*n, i, j);
                    let w = if i == j { 1.0 } else { 2.0 };
                    acc += w * x[idx] * y[idx];
                }
            }
            acc
        }
        Algebra::DirectSum(parts) => {
            let mut acc = 0.0;
            let mut offset = 0;
            for part in parts {
                let d = part.ambient_dim();
                acc += inner_unchecked(part, &x[offset..offset + d], &y[offset..offset + d]);
                offset += d;
            }
            acc
        }
    }
}

/// Trace `tr(x) = Σ λᵢ(x) = ⟨e,x⟩`.
pub fn trace(x: &Element) -> f64 {
    trace_unchecked(&x.algebra, &x.coords)
}

fn trace_unchecked(algebra: &Algebra, coords: &[f64]) -> f64 {
    match algebra {
        Algebra::Rn(_) => coords.iter().sum(),
        Algebra::Spin(_) => 2.0 * coords[0],
        Algebra::Sym(n) => (0..*n).map(|i| coords[sym_index(*n, i, i)]).sum(),
        Algebra::DirectSum(parts) => {
            let mut acc = 0.0;
            let mut offset = 0;
            for part in parts {
                let d = part.ambient_dim();
                acc += trace_unchecked(part, &coords[offset..offset + d]);
                offset += d;
            }
            acc
        }
    }
}

/// Determinant `det(x) = Π λᵢ(x)`; multiplicative over direct sums.
pub fn det(x: &Element) -> Result<f64, EjaError> {
    Ok(spectral_decomposition(x)?.eigenvalues.iter().product())
}

/// Eigenvalues (sorted descending) plus the Jordan frame that carries them.
///
/// Frames under repeated eigenvalues are not unique; only frame-invariant
/// quantities (the λ-vector, spectral-function results, trace, det) are part
/// of the contract.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub frame: Vec<Element>,
}

impl SpectralDecomposition {
    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().expect("rank >= 1")
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `Σ f(λᵢ) qᵢ` for an already-computed decomposition.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> Element {
        let algebra = self.frame[0].algebra.clone();
        let mut coords = vec![0.0; algebra.ambient_dim()];
        for (lambda, q) in self.eigenvalues.iter().zip(&self.frame) {
            let v = f(*lambda);
            for (c, qc) in coords.iter_mut().zip(&q.coords) {
                *c += v * qc;
            }
        }
        Element { algebra, coords }
    }
}

pub fn spectral_decomposition(x: &Element) -> Result<SpectralDecomposition, EjaError> {
    let mut pairs: Vec<(f64, Element)> = match &x.algebra {
        Algebra::Rn(n) => (0..*n)
            .map(|i| {
                let mut coords = vec![0.0; *n];
                coords[i] = 1.0;
                (
                    x.coords[i],
                    Element {
                        algebra: x.algebra.clone(),
                        coords,
                    },
                )
            })
            .collect(),
        Algebra::Spin(d) => {
            let x0 = x.coords[0];
            let tail = &x.coords[1..];
            let norm = tail.iter().map(|v| v * v).sum::<f64>().sqrt();
            // Unit direction of the vector part; first basis vector when the
            // vector part vanishes (any unit vector works there).
            let mut u = vec![0.0; d - 1];
            if norm > 0.0 {
                for (uk, tk) in u.iter_mut().zip(tail) {
                    *uk = tk / norm;
                }
            } else {
                u[0] = 1.0;
            }
            let make = |sign: f64| {
                let mut coords = vec![0.5];
                coords.extend(u.iter().map(|v| 0.5 * sign * v));
                Element {
                    algebra: x.algebra.clone(),
                    coords,
                }
            };
            vec![(x0 + norm, make(1.0)), (x0 - norm, make(-1.0))]
        }
        Algebra::Sym(n) => {
            let m = sym_to_matrix(*n, &x.coords);
            let eig = m
                .try_symmetric_eigen(f64::EPSILON, 10_000)
                .ok_or(EjaError::EigenFailure)?;
            (0..*n)
                .map(|i| {
                    let v: DVector<f64> = eig.eigenvectors.column(i).into_owned();
                    let q = &v * v.transpose();
                    (
                        eig.eigenvalues[i],
                        Element {
                            algebra: x.algebra.clone(),
                            coords: sym_from_matrix(&q),
                        },
                    )
                })
                .collect()
        }
        Algebra::DirectSum(parts) => {
            let mut out = Vec::with_capacity(x.algebra.rank());
            let mut offset = 0;
            for part in parts {
                let d = part.ambient_dim();
                let xs = Element {
                    algebra: part.clone(),
                    coords: x.coords[offset..offset + d].to_vec(),
                };
                let dec = spectral_decomposition(&xs)?;
                for (lambda, q) in dec.eigenvalues.into_iter().zip(dec.frame) {
                    // Embed the component frame element into the full space.
                    let mut coords = vec![0.0; x.coords.len()];
                    coords[offset..offset + d].copy_from_slice(&q.coords);
                    out.push((
                        lambda,
                        Element {
                            algebra: x.algebra.clone(),
                            coords,
                        },
                    ));
                }
                offset += d;
            }
            out
        }
    };
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (eigenvalues, frame) = pairs.into_iter().unzip();
    Ok(SpectralDecomposition { eigenvalues, frame })
}

/// Smallest eigenvalue a spectral function needing positivity will accept.
pub fn domain_floor(lambda_max: f64) -> f64 {
    1e-14 * (1.0 + lambda_max.abs())
}

/// Spectral function `f(x) = Σ f(λᵢ(x)) qᵢ`.
///
/// `ln`, `inv` and `pow` with negative exponent fail (rather than clamp) when
/// any eigenvalue is at or below the domain floor: a violation means an
/// iterate left the cone interior and clamping would silently corrupt the
/// certified gap.
pub fn spectral_map(x: &Element, f: ScalarMap) -> Result<Element, EjaError> {
    let dec = spectral_decomposition(x)?;
    spectral_map_decomposed(&dec, f)
}

pub fn spectral_map_decomposed(
    dec: &SpectralDecomposition,
    f: ScalarMap,
) -> Result<Element, EjaError> {
    let lambda_min = dec.lambda_min();
    let floor = domain_floor(dec.lambda_max());
    let needs_positive = matches!(f, ScalarMap::Ln | ScalarMap::Inv)
        || matches!(f, ScalarMap::Pow(a) if a < 0.0);
    if needs_positive && lambda_min <= floor {
        return Err(EjaError::Domain(format!(
            "{f:?} requires eigenvalues above {floor:.3e}; got lambda_min = {lambda_min:.6e}"
        )));
    }
    // Fractional nonnegative powers (e.g. square roots of cone members) accept
    // eigenvalues down to -floor and evaluate them as zero.
    if let ScalarMap::Pow(a) = f {
        if a >= 0.0 && a.fract() != 0.0 && lambda_min < -floor {
            return Err(EjaError::Domain(format!(
                "pow({a}) requires nonnegative eigenvalues; got lambda_min = {lambda_min:.6e}"
            )));
        }
    }
    let out = dec.map_eigenvalues(|lambda| match f {
        ScalarMap::Exp => lambda.exp(),
        ScalarMap::Ln => lambda.ln(),
        ScalarMap::Inv => 1.0 / lambda,
        ScalarMap::Pow(a) => {
            if a >= 0.0 && a.fract() != 0.0 {
                lambda.max(0.0).powf(a)
            } else {
                lambda.powf(a)
            }
        }
    });
    if out.coords.iter().any(|v| !v.is_finite()) {
        return Err(EjaError::Domain(format!(
            "{f:?} produced non-finite coordinates"
        )));
    }
    Ok(out)
}

/// Linear representation `L(x)y = x∘y`.
pub fn lin_rep_apply(x: &Element, y: &Element) -> Result<Element, EjaError> {
    jordan_product(x, y)
}

/// Quadratic representation `P(x)y = 2x∘(x∘y) − x²∘y`.
pub fn quad_rep_apply(x: &Element, y: &Element) -> Result<Element, EjaError> {
    let xy = jordan_product(x, y)?;
    let xxy = jordan_product(x, &xy)?;
    let x2 = jordan_product(x, x)?;
    let x2y = jordan_product(&x2, y)?;
    xxy.scale(2.0).sub(&x2y)
}
