//! Seeded random elements for tests, property checks, and the verify suites.
//!
//! All generators take an explicit RNG so runs are reproducible from a seed.

use rand::Rng;

use crate::eja::{spectral_map, Algebra, Element, ScalarMap};

/// Standard normal via Box-Muller; two uniforms per draw keeps the stream
/// layout independent of how callers batch requests.
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Gaussian coordinates; lands anywhere in the ambient space.
pub fn random_element<R: Rng>(rng: &mut R, algebra: &Algebra) -> Element {
    let coords = (0..algebra.ambient_dim())
        .map(|_| standard_normal(rng))
        .collect();
    Element::new(algebra.clone(), coords).expect("gaussian coordinates are finite")
}

/// Interior cone point: the square of a random element, pushed off the
/// boundary by a small multiple of the identity.
pub fn random_interior<R: Rng>(rng: &mut R, algebra: &Algebra) -> Element {
    let g = random_element(rng, algebra);
    let sq = crate::eja::jordan_product(&g, &g).expect("same algebra");
    sq.add(&algebra.identity().scale(0.1)).expect("same algebra")
}

/// Random point of the generalized unit simplex `{x ⪰ 0 : tr x = 1}`,
/// bounded away from the boundary.
pub fn random_simplex_point<R: Rng>(rng: &mut R, algebra: &Algebra) -> Element {
    let x = random_interior(rng, algebra);
    x.scale(1.0 / crate::eja::trace(&x))
}

/// Element with prescribed eigenvalue signs but a random Jordan frame:
/// `Σ λ_i q_i` for the frame of a random interior point.
pub fn random_with_eigenvalues<R: Rng>(
    rng: &mut R,
    algebra: &Algebra,
    eigenvalues: &[f64],
) -> Element {
    assert_eq!(eigenvalues.len(), algebra.rank(), "one eigenvalue per frame slot");
    let base = random_interior(rng, algebra);
    let dec = crate::eja::spectral_decomposition(&base).expect("interior point decomposes");
    let mut out = algebra.zero();
    for (lam, q) in eigenvalues.iter().zip(&dec.frame) {
        out = out.add(&q.scale(*lam)).expect("same algebra");
    }
    out
}

/// Interior pair `(x, y)` with `x ⪯ y`: `y = x + z²` for random `z`.
pub fn random_ordered_pair<R: Rng>(rng: &mut R, algebra: &Algebra) -> (Element, Element) {
    let x = random_interior(rng, algebra);
    let z = random_element(rng, algebra);
    let y = x
        .add(&crate::eja::jordan_product(&z, &z).expect("same algebra"))
        .expect("same algebra");
    (x, y)
}

/// Log-space perturbation of an interior point: `exp(ln x + t·d)`.
pub fn log_perturb(x: &Element, direction: &Element, t: f64) -> Element {
    let ln_x = spectral_map(x, ScalarMap::Ln).expect("interior point");
    spectral_map(&ln_x.add(&direction.scale(t)).expect("same algebra"), ScalarMap::Exp)
        .expect("exp is total")
}
