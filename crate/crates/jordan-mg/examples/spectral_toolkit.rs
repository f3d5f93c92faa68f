//! Tour of the algebra kernel: spectral decompositions, spectral functions,
//! and the quadratic representation across all shipped algebra families.
//!
//! Run with `cargo run --example spectral_toolkit`.

use jordan_mg::{
    det, inner, jordan_product, quad_rep_apply, spectral_decomposition, spectral_map, trace,
    Algebra, Element, ScalarMap,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // ℝⁿ with the elementwise product: everything is coordinatewise.
    let x = Element::new(Algebra::Rn(3), vec![1.0, 4.0, 9.0])?;
    let root = spectral_map(&x, ScalarMap::Pow(0.5))?;
    println!("Rn: sqrt(1,4,9) = {:?}", root.coords());

    // Spin algebra 𝕃ⁿ⁺¹: rank two, eigenvalues x₀ ± ‖x₁‖.
    let s = Element::new(Algebra::Spin(3), vec![2.0, 1.0, 0.0])?;
    let dec = spectral_decomposition(&s)?;
    println!(
        "Spin: eigenvalues of (2,(1,0)) are {:?}, trace {}, det {}",
        dec.eigenvalues,
        trace(&s),
        det(&s)?
    );
    for (i, q) in dec.frame.iter().enumerate() {
        println!("  frame[{i}] = {:?} (idempotent, unit norm)", q.coords());
    }

    // Sym(n): packed symmetric matrices under X∘Y = (XY+YX)/2.
    let w = Element::new(Algebra::Sym(2), vec![1.0, -1.0, 1.0])?; // [[1,-1],[-1,1]]
    let r = Element::new(Algebra::Sym(2), vec![1.0, -3.0, 9.0])?;
    let prod = jordan_product(&w, &r)?;
    println!(
        "Sym: W∘R = {:?} with det {}",
        prod.coords(),
        det(&prod)?
    );

    // exp/ln round trip on an interior point, in any algebra.
    let mix = Algebra::DirectSum(vec![Algebra::Rn(2), Algebra::Sym(2)]);
    let p = Element::new(mix, vec![0.5, 1.5, 2.0, 0.3, 1.0])?;
    let back = spectral_map(&spectral_map(&p, ScalarMap::Ln)?, ScalarMap::Exp)?;
    println!(
        "direct sum: ‖exp(ln p) − p‖ = {:.2e}",
        back.sub(&p)?.norm()
    );

    // The quadratic representation P(x)y is the EJA version of XYX; it is
    // self-adjoint in the trace inner product.
    let a = Element::new(Algebra::Sym(2), vec![2.0, 0.5, 1.0])?;
    let b = Element::new(Algebra::Sym(2), vec![0.0, 1.0, 3.0])?;
    let c = Element::new(Algebra::Sym(2), vec![1.0, -0.5, 0.5])?;
    println!(
        "⟨P(a)b, c⟩ = {:.6} equals ⟨b, P(a)c⟩ = {:.6}",
        inner(&quad_rep_apply(&a, &b)?, &c)?,
        inner(&b, &quad_rep_apply(&a, &c)?)?
    );
    Ok(())
}
