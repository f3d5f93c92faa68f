//! Symmetric-cone predicates: membership, the partial order, scaling points,
//! and linear maximization over the generalized unit simplex.
//!
//! Run with `cargo run --example cone_basics`.

use jordan_mg::{
    cone_leq, in_cone, in_interior, quad_rep_apply, scaling_point, simplex_lin_max, Algebra,
    ConeTolerance, Element,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = ConeTolerance::default();

    // Membership is an eigenvalue test: λ_min ≥ 0 (cone), λ_min > 0 (interior).
    let boundary = Element::new(Algebra::Spin(3), vec![1.0, 1.0, 0.0])?;
    println!(
        "spin boundary point: in cone = {}, interior = {}",
        in_cone(&boundary, tol)?,
        in_interior(&boundary, tol)?
    );

    // The Löwner-style order x ⪯ y means y − x has nonnegative eigenvalues;
    // diag(1,3) and diag(2,2) are incomparable.
    let a = Element::new(Algebra::Sym(2), vec![1.0, 0.0, 3.0])?;
    let b = Element::new(Algebra::Sym(2), vec![2.0, 0.0, 2.0])?;
    println!(
        "diag(1,3) ⪯ diag(2,2): {}, reverse: {}",
        cone_leq(&a, &b, tol)?,
        cone_leq(&b, &a, tol)?
    );

    // The scaling point w of an interior pair satisfies P(w)x = y; it is the
    // workhorse of affine normalization.
    let x = Element::new(Algebra::Sym(2), vec![2.0, 0.3, 1.5])?;
    let y = Element::new(Algebra::Sym(2), vec![1.2, -0.2, 0.8])?;
    let w = scaling_point(&x, &y)?;
    let err = quad_rep_apply(&w, &x)?.sub(&y)?.norm();
    println!("scaling point: ‖P(w)x − y‖ = {err:.2e}");

    // max ⟨b, z⟩ over {z ⪰ 0 : tr z = 1} is λ_max(b), attained at the top
    // frame idempotent.
    let b = Element::new(Algebra::Sym(2), vec![4.0, 0.0, -1.0])?;
    let (value, arg) = simplex_lin_max(&b)?;
    println!(
        "simplex linear max of diag(4,-1): value {value}, argmax {:?}",
        arg.coords()
    );
    Ok(())
}
