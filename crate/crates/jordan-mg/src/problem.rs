//! Problem instances: the decision cone, the linear map into the objective's
//! domain, and the objective itself, plus builders for the four shipped
//! application families, deterministic random generators, and file I/O.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{in_interior, ConeTolerance};
use crate::eja::{inner, quad_rep_apply, spectral_map, Algebra, Element, EjaError, ScalarMap};
use crate::objective::{LinearMap, Objective, ObjectiveError};

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("invalid instance data: {0}")]
    Validation(String),
    #[error("instance file error: {0}")]
    Schema(String),
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
    #[error(transparent)]
    Eja(#[from] EjaError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

/// The four shipped instance families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Pet,
    Doptimal,
    QstReal,
    Bqp,
}

impl InstanceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InstanceKind::Pet => "pet",
            InstanceKind::Doptimal => "doptimal",
            InstanceKind::QstReal => "qst_real",
            InstanceKind::Bqp => "bqp",
        }
    }
}

impl std::str::FromStr for InstanceKind {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pet" => Ok(InstanceKind::Pet),
            "doptimal" => Ok(InstanceKind::Doptimal),
            "qst_real" => Ok(InstanceKind::QstReal),
            "bqp" => Ok(InstanceKind::Bqp),
            other => Err(ProblemError::Schema(format!(
                "kind: unknown instance kind {other:?} (expected pet | doptimal | qst_real | bqp)"
            ))),
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A normalized problem: maximize `f(𝖠x)` over `{x ⪰ 0 : tr(x) = 1}`.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    cone_algebra: Algebra,
    map: LinearMap,
    objective: Objective,
    pub name: String,
    pub provenance: String,
    payload: Option<InstanceFile>,
}

impl ProblemInstance {
    /// Assemble and validate an instance.
    ///
    /// Interior-mapping requirements are probed at the cone centers `e/r`;
    /// full operator-level verification is not decidable from samples and
    /// remains the caller's obligation for custom maps.
    pub fn new(
        map: LinearMap,
        objective: Objective,
        name: impl Into<String>,
        provenance: impl Into<String>,
    ) -> Result<Self, ProblemError> {
        if map.target() != objective.domain() {
            return Err(ProblemError::Validation(format!(
                "map target {:?} does not match objective domain {:?}",
                map.target(),
                objective.domain()
            )));
        }
        let cone_algebra = map.source();
        let instance = ProblemInstance {
            cone_algebra,
            map,
            objective,
            name: name.into(),
            provenance: provenance.into(),
            payload: None,
        };
        instance.probe_centers()?;
        Ok(instance)
    }

    fn probe_centers(&self) -> Result<(), ProblemError> {
        let tol = ConeTolerance::default();
        let center = self.center();
        let image = self.map.apply(&center)?;
        if !in_interior(&image, tol)? {
            return Err(ProblemError::Validation(
                "map does not send the cone center to the interior of the objective domain".into(),
            ));
        }
        let k2 = self.objective.domain();
        let dual_center = k2.identity().scale(1.0 / k2.rank() as f64);
        let pulled = self.map.adjoint(&dual_center)?;
        if !in_interior(&pulled, tol)? {
            return Err(ProblemError::Validation(
                "adjoint does not send the dual center to the interior of the decision cone".into(),
            ));
        }
        let g = self.grad(&center)?;
        let pairing = inner(&g, &center)?;
        if (pairing - 1.0).abs() > 1e-8 {
            return Err(ProblemError::Validation(format!(
                "homogeneity identity violated at the center: <grad F, x> = {pairing}"
            )));
        }
        Ok(())
    }

    pub fn cone_algebra(&self) -> &Algebra {
        &self.cone_algebra
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    /// Simplex center `e/r`, the default starting point.
    pub fn center(&self) -> Element {
        self.cone_algebra
            .identity()
            .scale(1.0 / self.cone_algebra.rank() as f64)
    }

    /// `F(x) = f(𝖠x)`.
    pub fn value(&self, x: &Element) -> Result<f64, ProblemError> {
        Ok(self.objective.value(&self.map.apply(x)?)?)
    }

    /// `∇F(x) = 𝖠*∇f(𝖠x)`.
    pub fn grad(&self, x: &Element) -> Result<Element, ProblemError> {
        Ok(self.map.adjoint(&self.objective.grad(&self.map.apply(x)?)?)?)
    }
}

/// An instance rewritten from the slice `⟨a,x⟩ = 1` to the trace-one slice,
/// via the change of variable `x = P(w)z` with `w = a^{−1/2}`.
#[derive(Debug, Clone)]
pub struct StandardizedInstance {
    pub instance: ProblemInstance,
    scaling: Element,
}

impl StandardizedInstance {
    /// Map a solution of the standardized problem back to the original slice.
    pub fn map_back(&self, z: &Element) -> Result<Element, ProblemError> {
        Ok(quad_rep_apply(&self.scaling, z)?)
    }

    pub fn scaling(&self) -> &Element {
        &self.scaling
    }
}

/// Rewrite `max f(𝖠x)` over `{x ⪰ 0 : ⟨a,x⟩ = 1}` as an instance over the
/// trace-one simplex, so that `P(w)a = e`.
pub fn standardize_affine(
    instance: &ProblemInstance,
    a: &Element,
) -> Result<StandardizedInstance, ProblemError> {
    if a.algebra() != &instance.cone_algebra {
        return Err(ProblemError::Validation(
            "normalizing element lives in a different algebra than the instance".into(),
        ));
    }
    if !in_interior(a, ConeTolerance::default())? {
        return Err(ProblemError::Validation(
            "normalizing element must be in the cone interior".into(),
        ));
    }
    let w = spectral_map(a, ScalarMap::Pow(-0.5))?;
    let map = LinearMap::Composition {
        inner: Box::new(instance.map.clone()),
        scaling: w.clone(),
    };
    let standardized = ProblemInstance::new(
        map,
        instance.objective.clone(),
        format!("{} (standardized)", instance.name),
        instance.provenance.clone(),
    )?;
    Ok(StandardizedInstance {
        instance: standardized,
        scaling: w,
    })
}

/// Tomography-style likelihood: maximize `Σⱼ (Yⱼ/ΣY) ln((Pz)ⱼ)` over the unit
/// simplex. `p_matrix` is m×n with nonzero rows and columns; `counts` are the
/// observed bin counts, at least one positive. Bins with zero counts drop out
/// of the likelihood and are removed from the model.
pub fn build_pet(p_matrix: &DMatrix<f64>, counts: &[f64]) -> Result<ProblemInstance, ProblemError> {
    let (m, n) = (p_matrix.nrows(), p_matrix.ncols());
    if counts.len() != m {
        return Err(ProblemError::Validation(format!(
            "counts has length {}, expected one per row of P ({m})",
            counts.len()
        )));
    }
    if p_matrix.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(ProblemError::Validation(
            "P must be nonnegative and finite".into(),
        ));
    }
    for j in 0..m {
        if p_matrix.row(j).iter().all(|v| *v == 0.0) {
            return Err(ProblemError::Validation(format!(
                "row {j} of P is identically zero"
            )));
        }
    }
    for i in 0..n {
        if p_matrix.column(i).iter().all(|v| *v == 0.0) {
            return Err(ProblemError::Validation(format!(
                "column {i} of P is identically zero"
            )));
        }
    }
    if counts.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(ProblemError::Validation(
            "counts must be nonnegative and finite".into(),
        ));
    }
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return Err(ProblemError::Validation("all counts are zero".into()));
    }
    let mut factors = Vec::new();
    let mut weights = Vec::new();
    for (j, y) in counts.iter().enumerate() {
        if *y > 0.0 {
            let row: Vec<f64> = p_matrix.row(j).iter().cloned().collect();
            factors.push(Element::new(Algebra::Rn(n), row)?);
            weights.push(y / total);
        }
    }
    let map = LinearMap::InnerProduct { factors };
    let objective = Objective::weighted_log(weights)?;
    ProblemInstance::new(map, objective, "pet", "tomography-style likelihood")
}

/// D-optimal design: maximize `n⁻¹ ln det(Σ xᵢ aᵢaᵢᵀ)` over the unit simplex.
/// The points must span ℝⁿ.
pub fn build_doptimal(points: &[DVector<f64>]) -> Result<ProblemInstance, ProblemError> {
    if points.is_empty() {
        return Err(ProblemError::Validation("no design points given".into()));
    }
    let n = points[0].len();
    if points.iter().any(|a| a.len() != n) {
        return Err(ProblemError::Validation(
            "design points have inconsistent dimensions".into(),
        ));
    }
    let mut gram = DMatrix::zeros(n, n);
    for a in points {
        gram += a * a.transpose();
    }
    let eig = gram.symmetric_eigenvalues();
    let lo = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if lo <= 1e-10 * (1.0 + hi.abs()) {
        return Err(ProblemError::Validation(
            "design points do not span the ambient space (rank-deficient point set)".into(),
        ));
    }
    let map = LinearMap::RankOneAssembly {
        points: points.to_vec(),
        dim: n,
    };
    let objective = Objective::LogDetNormalized {
        algebra: Algebra::Sym(n),
    };
    ProblemInstance::new(map, objective, "doptimal", "D-optimal design")
}

/// Quantum state tomography restricted to real measurement vectors:
/// maximize `Σⱼ (nⱼ/N) ln⟨X, aⱼaⱼᵀ⟩` over density-like matrices. The vectors
/// must form a tight frame, `Σ aⱼaⱼᵀ = I`. Zero-count channels drop out.
pub fn build_qst_real(
    vectors: &[DVector<f64>],
    counts: &[f64],
) -> Result<ProblemInstance, ProblemError> {
    if vectors.is_empty() {
        return Err(ProblemError::Validation("no measurement vectors given".into()));
    }
    let n = vectors[0].len();
    if vectors.iter().any(|a| a.len() != n) {
        return Err(ProblemError::Validation(
            "measurement vectors have inconsistent dimensions".into(),
        ));
    }
    if counts.len() != vectors.len() {
        return Err(ProblemError::Validation(format!(
            "counts has length {}, expected one per vector ({})",
            counts.len(),
            vectors.len()
        )));
    }
    let mut completeness = DMatrix::zeros(n, n);
    for a in vectors {
        completeness += a * a.transpose();
    }
    let deviation = (&completeness - DMatrix::identity(n, n)).norm();
    if deviation > 1e-8 {
        return Err(ProblemError::Validation(format!(
            "measurement vectors are not complete: ||sum a_j a_j^T - I|| = {deviation:.3e}"
        )));
    }
    if counts.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(ProblemError::Validation(
            "counts must be nonnegative and finite".into(),
        ));
    }
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return Err(ProblemError::Validation("all counts are zero".into()));
    }
    let mut factors = Vec::new();
    let mut weights = Vec::new();
    for (a, c) in vectors.iter().zip(counts) {
        if *c > 0.0 {
            factors.push(Element::from_matrix(&(a * a.transpose()))?);
            weights.push(c / total);
        }
    }
    let map = LinearMap::InnerProduct { factors };
    let objective = Objective::weighted_log(weights)?;
    ProblemInstance::new(map, objective, "qst_real", "quantum state tomography (real)")
}

/// Relaxation of the Boolean quadratic program for a positive definite `A`:
/// maximize `2 ln Σᵢ ⟨X, aᵢaᵢᵀ⟩^{1/2}` with `aᵢ` the columns of `A^{1/2}`.
pub fn build_bqp_relax(a: &DMatrix<f64>) -> Result<ProblemInstance, ProblemError> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(ProblemError::Validation("A must be square".into()));
    }
    if (a - a.transpose()).norm() > 1e-10 * (1.0 + a.norm()) {
        return Err(ProblemError::Validation("A must be symmetric".into()));
    }
    let eig = a
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or(EjaError::EigenFailure)?;
    let lo = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if lo <= 0.0 {
        return Err(ProblemError::Validation(format!(
            "A must be positive definite; smallest eigenvalue = {lo:.6e}"
        )));
    }
    let sqrt_vals = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let root = &eig.eigenvectors * sqrt_vals * eig.eigenvectors.transpose();
    let factors = (0..n)
        .map(|i| {
            let col: DVector<f64> = root.column(i).into_owned();
            Element::from_matrix(&(&col * col.transpose()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = LinearMap::InnerProduct { factors };
    let objective = Objective::log_p_norm(0.5, n)?;
    ProblemInstance::new(map, objective, "bqp", "SDP relaxation of Boolean QP")
}

/// On-disk schema: a `kind` tag, integer dimensions, and named dense arrays
/// (matrices row-major). Unknown fields are rejected.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    dims: BTreeMap<String, usize>,
    data: BTreeMap<String, Vec<f64>>,
}

impl InstanceFile {
    fn dim(&self, key: &str) -> Result<usize, ProblemError> {
        self.dims.get(key).copied().ok_or_else(|| {
            ProblemError::Schema(format!("dims.{key}: missing required dimension"))
        })
    }

    fn array(&self, key: &str, expected_len: usize) -> Result<&[f64], ProblemError> {
        let arr = self
            .data
            .get(key)
            .ok_or_else(|| ProblemError::Schema(format!("data.{key}: missing required array")))?;
        if arr.len() != expected_len {
            return Err(ProblemError::Schema(format!(
                "data.{key}: expected {expected_len} entries, found {}",
                arr.len()
            )));
        }
        Ok(arr)
    }

    fn check_keys(&self, dims: &[&str], data: &[&str]) -> Result<(), ProblemError> {
        for key in self.dims.keys() {
            if !dims.contains(&key.as_str()) {
                return Err(ProblemError::Schema(format!(
                    "dims.{key}: unknown dimension for kind {:?}",
                    self.kind
                )));
            }
        }
        for key in self.data.keys() {
            if !data.contains(&key.as_str()) {
                return Err(ProblemError::Schema(format!(
                    "data.{key}: unknown array for kind {:?}",
                    self.kind
                )));
            }
        }
        Ok(())
    }
}

fn matrix_from_rows(rows: usize, cols: usize, data: &[f64]) -> DMatrix<f64> {
    DMatrix::from_row_slice(rows, cols, data)
}

fn vectors_from_rows(rows: usize, cols: usize, data: &[f64]) -> Vec<DVector<f64>> {
    (0..rows)
        .map(|i| DVector::from_row_slice(&data[i * cols..(i + 1) * cols]))
        .collect()
}

fn build_from_file(file: InstanceFile) -> Result<ProblemInstance, ProblemError> {
    let kind: InstanceKind = file.kind.parse()?;
    let mut instance = match kind {
        InstanceKind::Pet => {
            file.check_keys(&["m", "n"], &["P", "Y"])?;
            let m = file.dim("m")?;
            let n = file.dim("n")?;
            let p = matrix_from_rows(m, n, file.array("P", m * n)?);
            let counts = file.array("Y", m)?.to_vec();
            build_pet(&p, &counts)?
        }
        InstanceKind::Doptimal => {
            file.check_keys(&["m", "n"], &["points"])?;
            let m = file.dim("m")?;
            let n = file.dim("n")?;
            let points = vectors_from_rows(m, n, file.array("points", m * n)?);
            build_doptimal(&points)?
        }
        InstanceKind::QstReal => {
            file.check_keys(&["m", "n"], &["vectors", "vectors_im", "counts"])?;
            if file.data.contains_key("vectors_im") {
                return Err(ProblemError::Schema(
                    "data.vectors_im: complex measurement vectors are not supported; \
                     this implementation is restricted to real vectors"
                        .into(),
                ));
            }
            let m = file.dim("m")?;
            let n = file.dim("n")?;
            let vectors = vectors_from_rows(m, n, file.array("vectors", m * n)?);
            let counts = file.array("counts", m)?.to_vec();
            build_qst_real(&vectors, &counts)?
        }
        InstanceKind::Bqp => {
            file.check_keys(&["n"], &["A"])?;
            let n = file.dim("n")?;
            let a = matrix_from_rows(n, n, file.array("A", n * n)?);
            build_bqp_relax(&a)?
        }
    };
    instance.payload = Some(file);
    Ok(instance)
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance, ProblemError> {
    let file: InstanceFile =
        toml::from_str(text).map_err(|e| ProblemError::Schema(e.to_string()))?;
    build_from_file(file)
}

pub fn render_instance(instance: &ProblemInstance) -> Result<String, ProblemError> {
    let payload = instance.payload.as_ref().ok_or_else(|| {
        ProblemError::Validation(
            "instance carries no serializable payload (built programmatically)".into(),
        )
    })?;
    toml::to_string(payload).map_err(|e| ProblemError::Schema(e.to_string()))
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<ProblemInstance, ProblemError> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn save_instance(
    instance: &ProblemInstance,
    path: impl AsRef<Path>,
) -> Result<(), ProblemError> {
    std::fs::write(path, render_instance(instance)?)?;
    Ok(())
}

/// Dimensions for the random generators; `bqp` only reads `n`.
#[derive(Debug, Clone, Copy)]
pub struct Dims {
    pub m: usize,
    pub n: usize,
}

/// Deterministic random instance for a fixed seed; always satisfies the
/// builder preconditions at desk scale.
pub fn random_instance(
    kind: InstanceKind,
    dims: Dims,
    seed: u64,
) -> Result<ProblemInstance, ProblemError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let file = match kind {
        InstanceKind::Pet => {
            let (m, n) = (dims.m, dims.n);
            if m == 0 || n == 0 {
                return Err(ProblemError::Validation("dims must be positive".into()));
            }
            // Rows uniform(0,1), then row-normalized; nonzero columns hold
            // with probability one.
            let mut p = vec![0.0; m * n];
            for row in p.chunks_mut(n) {
                for v in row.iter_mut() {
                    *v = rng.random::<f64>();
                }
                let total: f64 = row.iter().sum();
                for v in row.iter_mut() {
                    *v /= total;
                }
            }
            let counts: Vec<f64> = (0..m).map(|_| 1.0 + 9.0 * rng.random::<f64>()).collect();
            InstanceFile {
                kind: kind.as_str().into(),
                seed: Some(seed),
                dims: BTreeMap::from([("m".into(), m), ("n".into(), n)]),
                data: BTreeMap::from([("P".into(), p), ("Y".into(), counts)]),
            }
        }
        InstanceKind::Doptimal => {
            let (m, n) = (dims.m, dims.n);
            if m < n || n == 0 {
                return Err(ProblemError::Validation(
                    "doptimal needs m >= n >= 1 design points".into(),
                ));
            }
            let points: Vec<f64> = (0..m * n).map(|_| standard_normal(&mut rng)).collect();
            InstanceFile {
                kind: kind.as_str().into(),
                seed: Some(seed),
                dims: BTreeMap::from([("m".into(), m), ("n".into(), n)]),
                data: BTreeMap::from([("points".into(), points)]),
            }
        }
        InstanceKind::QstReal => {
            let (m, n) = (dims.m, dims.n);
            if m < n || n == 0 {
                return Err(ProblemError::Validation(
                    "qst_real needs m >= n >= 1 measurement vectors".into(),
                ));
            }
            // Random vectors whitened so that sum a_j a_j^T = I (randomized
            // orthogonal completion of a tight frame).
            let g = DMatrix::from_fn(m, n, |_, _| standard_normal(&mut rng));
            let gram = g.transpose() * &g;
            let eig = gram
                .try_symmetric_eigen(f64::EPSILON, 10_000)
                .ok_or(EjaError::EigenFailure)?;
            let inv_root = &eig.eigenvectors
                * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()))
                * eig.eigenvectors.transpose();
            let whitened = g * inv_root;
            let vectors: Vec<f64> = (0..m)
                .flat_map(|j| whitened.row(j).iter().cloned().collect::<Vec<_>>())
                .collect();
            let counts: Vec<f64> = (0..m).map(|_| (1 + rng.random_range(0..100)) as f64).collect();
            InstanceFile {
                kind: kind.as_str().into(),
                seed: Some(seed),
                dims: BTreeMap::from([("m".into(), m), ("n".into(), n)]),
                data: BTreeMap::from([("vectors".into(), vectors), ("counts".into(), counts)]),
            }
        }
        InstanceKind::Bqp => {
            let n = dims.n;
            if n == 0 {
                return Err(ProblemError::Validation("dims must be positive".into()));
            }
            // A = GG^T + 0.1 I, comfortably positive definite.
            let g = DMatrix::from_fn(n, n, |_, _| standard_normal(&mut rng));
            let a = &g * g.transpose() + DMatrix::identity(n, n) * 0.1;
            let data: Vec<f64> = (0..n)
                .flat_map(|i| a.row(i).iter().cloned().collect::<Vec<_>>())
                .collect();
            InstanceFile {
                kind: kind.as_str().into(),
                seed: Some(seed),
                dims: BTreeMap::from([("n".into(), n)]),
                data: BTreeMap::from([("A".into(), data)]),
            }
        }
    };
    build_from_file(file)
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller; good enough for instance generation.
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pet_trivial_singleton() {
        let p = DMatrix::from_row_slice(1, 1, &[1.0]);
        let instance = build_pet(&p, &[5.0]).unwrap();
        let x = Element::new(Algebra::Rn(1), vec![1.0]).unwrap();
        assert_relative_eq!(instance.value(&x).unwrap(), 0.0);
    }

    #[test]
    fn pet_rejects_bad_matrices() {
        let p = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 0.0]);
        let err = build_pet(&p, &[1.0, 1.0]).unwrap_err();
        assert!(err.to_string().contains("column 1"));
        let p = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 1.0]);
        let err = build_pet(&p, &[1.0, 1.0]).unwrap_err();
        assert!(err.to_string().contains("row 0"));
        let p = DMatrix::from_row_slice(1, 1, &[1.0]);
        assert!(build_pet(&p, &[0.0]).is_err());
    }

    #[test]
    fn doptimal_rejects_rank_deficient_points() {
        let points = vec![
            DVector::from_vec(vec![1.0, 0.0]),
            DVector::from_vec(vec![2.0, 0.0]),
        ];
        assert!(build_doptimal(&points).is_err());
    }

    #[test]
    fn qst_rejects_incomplete_frames() {
        let vectors = vec![
            DVector::from_vec(vec![1.0, 0.0]),
            DVector::from_vec(vec![0.0, 0.5]),
        ];
        let err = build_qst_real(&vectors, &[1.0, 1.0]).unwrap_err();
        assert!(err.to_string().contains("not complete"));
    }

    #[test]
    fn qst_diagonal_instance_reduces_to_pet() {
        // Standard basis measurements with counts (3,1): optimum diag(3/4, 1/4).
        let vectors = vec![
            DVector::from_vec(vec![1.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0]),
        ];
        let instance = build_qst_real(&vectors, &[3.0, 1.0]).unwrap();
        let opt = Element::new(Algebra::Sym(2), vec![0.75, 0.0, 0.25]).unwrap();
        let g = instance.grad(&opt).unwrap();
        // Stationarity on the simplex: grad eigenvalues all 1 at the optimum.
        let (lo, hi) = crate::cone::lambda_extremes(&g).unwrap();
        assert_relative_eq!(lo, 1.0, epsilon = 1e-10);
        assert_relative_eq!(hi, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn bqp_identity_objective_value() {
        // A = I2: objective 2 ln(sum_i X_ii^{1/2}); X = I/2 gives ln 2.
        let instance = build_bqp_relax(&DMatrix::identity(2, 2)).unwrap();
        let x = Element::new(Algebra::Sym(2), vec![0.5, 0.0, 0.5]).unwrap();
        assert_relative_eq!(instance.value(&x).unwrap(), 2.0f64.ln(), epsilon = 1e-12);
        assert!(build_bqp_relax(&DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0])).is_err());
    }

    #[test]
    fn bqp_singleton() {
        let instance = build_bqp_relax(&DMatrix::from_row_slice(1, 1, &[4.0])).unwrap();
        let x = Element::new(Algebra::Sym(1), vec![1.0]).unwrap();
        assert_relative_eq!(instance.value(&x).unwrap(), 2.0 * 2.0f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn centers_probe_cleanly_on_random_instances() {
        for (kind, dims) in [
            (InstanceKind::Pet, Dims { m: 10, n: 5 }),
            (InstanceKind::Doptimal, Dims { m: 12, n: 3 }),
            (InstanceKind::QstReal, Dims { m: 9, n: 3 }),
            (InstanceKind::Bqp, Dims { m: 0, n: 3 }),
        ] {
            for seed in [0u64, 1, 2] {
                let instance = random_instance(kind, dims, seed).unwrap();
                let c = instance.center();
                let g = instance.grad(&c).unwrap();
                assert_relative_eq!(inner(&g, &c).unwrap(), 1.0, epsilon = 1e-9);
                assert!(in_interior(&g, ConeTolerance::default()).unwrap());
            }
        }
    }

    #[test]
    fn random_instances_deterministic_and_distinct() {
        let dims = Dims { m: 8, n: 4 };
        let a = render_instance(&random_instance(InstanceKind::Pet, dims, 7).unwrap()).unwrap();
        let b = render_instance(&random_instance(InstanceKind::Pet, dims, 7).unwrap()).unwrap();
        let c = render_instance(&random_instance(InstanceKind::Pet, dims, 8).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn roundtrip_is_bitwise_identical() {
        let instance = random_instance(InstanceKind::Doptimal, Dims { m: 6, n: 3 }, 42).unwrap();
        let text = render_instance(&instance).unwrap();
        let reloaded = parse_instance(&text).unwrap();
        assert_eq!(text, render_instance(&reloaded).unwrap());
    }

    #[test]
    fn loader_rejects_unknown_and_complex_fields() {
        let err = parse_instance("kind = \"pet\"\nbogus = 1\n[dims]\nm = 1\nn = 1\n[data]\nP = [1.0]\nY = [1.0]\n")
            .unwrap_err();
        assert!(err.to_string().contains("bogus"));
        let text = "kind = \"qst_real\"\n[dims]\nm = 1\nn = 1\n[data]\nvectors = [1.0]\nvectors_im = [0.5]\ncounts = [1.0]\n";
        let err = parse_instance(text).unwrap_err();
        assert!(err.to_string().contains("real vectors"));
    }

    #[test]
    fn loader_names_offending_column() {
        let text = "kind = \"pet\"\n[dims]\nm = 2\nn = 2\n[data]\nP = [1.0, 0.0, 1.0, 0.0]\nY = [1.0, 1.0]\n";
        let err = parse_instance(text).unwrap_err();
        assert!(err.to_string().contains("column 1"));
    }

    #[test]
    fn standardize_affine_identity_and_rn() {
        let instance = random_instance(InstanceKind::Pet, Dims { m: 6, n: 2 }, 3).unwrap();
        // a = e leaves the map unchanged (w = e).
        let e = instance.cone_algebra().identity();
        let std = standardize_affine(&instance, &e).unwrap();
        let x = instance.center();
        assert_relative_eq!(
            std.instance.value(&x).unwrap(),
            instance.value(&x).unwrap(),
            epsilon = 1e-12
        );
        // Rn(2), a = (2,2): w = (1/sqrt 2, 1/sqrt 2), P(w) scales by 1/2.
        let a = Element::new(Algebra::Rn(2), vec![2.0, 2.0]).unwrap();
        let std = standardize_affine(&instance, &a).unwrap();
        let z = Element::new(Algebra::Rn(2), vec![0.8, 0.2]).unwrap();
        let back = std.map_back(&z).unwrap();
        assert_relative_eq!(back.coords()[0], 0.4, epsilon = 1e-12);
        assert_relative_eq!(back.coords()[1], 0.1, epsilon = 1e-12);
        assert_relative_eq!(inner(&a, &back).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn standardize_affine_rejects_boundary() {
        let instance = random_instance(InstanceKind::Pet, Dims { m: 4, n: 2 }, 1).unwrap();
        let a = Element::new(Algebra::Rn(2), vec![1.0, 0.0]).unwrap();
        assert!(standardize_affine(&instance, &a).is_err());
    }
}
