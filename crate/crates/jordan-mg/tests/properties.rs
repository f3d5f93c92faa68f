//! Property-based checks of the algebra kernel and objective identities on
//! randomized inputs across all shipped algebra families.

use jordan_mg::{
    cone::{cone_leq, in_cone, ConeTolerance},
    eja::{
        inner, jordan_product, quad_rep_apply, spectral_decomposition, spectral_map, trace,
        Algebra, Element, ScalarMap,
    },
    problem::{random_instance, Dims, InstanceKind},
    sample,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra_for(idx: usize) -> Algebra {
    match idx % 4 {
        0 => Algebra::Rn(5),
        1 => Algebra::Spin(4),
        2 => Algebra::Sym(3),
        _ => Algebra::DirectSum(vec![Algebra::Rn(2), Algebra::Spin(3), Algebra::Sym(2)]),
    }
}

fn element(algebra: &Algebra, seed: u64) -> Element {
    sample::random_element(&mut ChaCha8Rng::seed_from_u64(seed), algebra)
}

fn interior(algebra: &Algebra, seed: u64) -> Element {
    sample::random_interior(&mut ChaCha8Rng::seed_from_u64(seed), algebra)
}

proptest! {
    #[test]
    fn spectral_reconstruction(idx in 0usize..4, seed in 0u64..500) {
        let algebra = algebra_for(idx);
        let x = element(&algebra, seed);
        let dec = spectral_decomposition(&x).unwrap();
        let mut rebuilt = algebra.zero();
        for (lam, q) in dec.eigenvalues.iter().zip(&dec.frame) {
            rebuilt = rebuilt.add(&q.scale(*lam)).unwrap();
        }
        let err = rebuilt.sub(&x).unwrap().norm();
        prop_assert!(err <= 1e-8 * (1.0 + x.norm()), "reconstruction error {err}");
        // Eigenvalue sum and product agree with trace and determinant.
        let lam_sum: f64 = dec.eigenvalues.iter().sum();
        prop_assert!((lam_sum - trace(&x)).abs() <= 1e-8 * (1.0 + x.norm()));
    }

    #[test]
    fn frames_are_orthonormal_idempotents(idx in 0usize..4, seed in 0u64..200) {
        let algebra = algebra_for(idx);
        let x = element(&algebra, seed);
        let dec = spectral_decomposition(&x).unwrap();
        let mut completeness = algebra.zero();
        for (i, q) in dec.frame.iter().enumerate() {
            completeness = completeness.add(q).unwrap();
            let idem = jordan_product(q, q).unwrap().sub(q).unwrap().norm();
            prop_assert!(idem <= 1e-8, "q∘q−q has norm {idem}");
            prop_assert!((q.norm() - 1.0).abs() <= 1e-8);
            for other in &dec.frame[i + 1..] {
                prop_assert!(inner(q, other).unwrap().abs() <= 1e-8);
            }
        }
        let gap = completeness.sub(&algebra.identity()).unwrap().norm();
        prop_assert!(gap <= 1e-8, "frame does not sum to identity: {gap}");
    }

    #[test]
    fn exp_ln_round_trip(idx in 0usize..4, seed in 0u64..200) {
        let algebra = algebra_for(idx);
        let x = interior(&algebra, seed);
        let back = spectral_map(&spectral_map(&x, ScalarMap::Ln).unwrap(), ScalarMap::Exp).unwrap();
        let err = back.sub(&x).unwrap().norm();
        prop_assert!(err <= 1e-8 * (1.0 + x.norm()));
        // And the other direction on arbitrary elements, scaled to avoid overflow.
        let z = element(&algebra, seed.wrapping_add(1)).scale(0.5);
        let back = spectral_map(&spectral_map(&z, ScalarMap::Exp).unwrap(), ScalarMap::Ln).unwrap();
        prop_assert!(back.sub(&z).unwrap().norm() <= 1e-8 * (1.0 + z.norm()));
    }

    #[test]
    fn power_calculus(idx in 0usize..4, seed in 0u64..100) {
        let algebra = algebra_for(idx);
        let x = interior(&algebra, seed);
        // x^{1/2} ∘ x^{1/2} = x and x ∘ x^{-1} = e.
        let root = spectral_map(&x, ScalarMap::Pow(0.5)).unwrap();
        let err = jordan_product(&root, &root).unwrap().sub(&x).unwrap().norm();
        prop_assert!(err <= 1e-8 * (1.0 + x.norm()));
        let inv = spectral_map(&x, ScalarMap::Inv).unwrap();
        let prod = jordan_product(&x, &inv).unwrap();
        prop_assert!(prod.sub(&algebra.identity()).unwrap().norm() <= 1e-7 * (1.0 + inv.norm()));
    }

    #[test]
    fn quad_rep_self_adjoint(idx in 0usize..4, seed in 0u64..200) {
        let algebra = algebra_for(idx);
        let x = element(&algebra, seed);
        let y = element(&algebra, seed.wrapping_add(7));
        let z = element(&algebra, seed.wrapping_add(13));
        let lhs = inner(&quad_rep_apply(&x, &y).unwrap(), &z).unwrap();
        let rhs = inner(&y, &quad_rep_apply(&x, &z).unwrap()).unwrap();
        let scale = (1.0 + x.norm()).powi(2) * (1.0 + y.norm()) * (1.0 + z.norm());
        prop_assert!((lhs - rhs).abs() <= 1e-9 * scale);
    }

    #[test]
    fn quad_rep_fundamental_identity(idx in 0usize..4, seed in 0u64..100) {
        // P(P(x)y) = P(x) P(y) P(x), probed against a random direction.
        let algebra = algebra_for(idx);
        let x = element(&algebra, seed).scale(0.7);
        let y = element(&algebra, seed.wrapping_add(3)).scale(0.7);
        let d = element(&algebra, seed.wrapping_add(9));
        let pxy = quad_rep_apply(&x, &y).unwrap();
        let lhs = quad_rep_apply(&pxy, &d).unwrap();
        let rhs = quad_rep_apply(
            &x,
            &quad_rep_apply(&y, &quad_rep_apply(&x, &d).unwrap()).unwrap(),
        )
        .unwrap();
        let scale = 1.0 + lhs.norm() + rhs.norm();
        prop_assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-7 * scale);
    }

    #[test]
    fn quad_rep_preserves_cone(idx in 0usize..4, seed in 0u64..200) {
        let algebra = algebra_for(idx);
        let x = element(&algebra, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let c = sample::random_interior(&mut rng, &algebra);
        let image = quad_rep_apply(&x, &c).unwrap();
        prop_assert!(in_cone(&image, ConeTolerance::new(1e-7)).unwrap());
    }

    #[test]
    fn cone_pairs_have_nonneg_inner(idx in 0usize..4, seed in 0u64..200) {
        let algebra = algebra_for(idx);
        let a = element(&algebra, seed);
        let b = element(&algebra, seed.wrapping_add(5));
        let sa = jordan_product(&a, &a).unwrap();
        let sb = jordan_product(&b, &b).unwrap();
        prop_assert!(inner(&sa, &sb).unwrap() >= -1e-9 * (1.0 + sa.norm()) * (1.0 + sb.norm()));
    }

    #[test]
    fn ln_is_operator_monotone(idx in 0usize..4, seed in 0u64..100) {
        let algebra = algebra_for(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = sample::random_ordered_pair(&mut rng, &algebra);
        let lx = spectral_map(&x, ScalarMap::Ln).unwrap();
        let ly = spectral_map(&y, ScalarMap::Ln).unwrap();
        prop_assert!(cone_leq(&lx, &ly, ConeTolerance::new(1e-7)).unwrap());
    }

    #[test]
    fn direct_sum_is_componentwise(seed in 0u64..200) {
        let parts = vec![Algebra::Rn(2), Algebra::Sym(2)];
        let sum = Algebra::DirectSum(parts.clone());
        let x = element(&sum, seed);
        let y = element(&sum, seed.wrapping_add(2));
        let prod = jordan_product(&x, &y).unwrap();
        // Split coordinates and compare against per-component products.
        let mut offset = 0;
        for part in &parts {
            let d = part.ambient_dim();
            let xp = Element::new(part.clone(), x.coords()[offset..offset + d].to_vec()).unwrap();
            let yp = Element::new(part.clone(), y.coords()[offset..offset + d].to_vec()).unwrap();
            let pp = jordan_product(&xp, &yp).unwrap();
            for (a, b) in pp.coords().iter().zip(&prod.coords()[offset..offset + d]) {
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
            }
            offset += d;
        }
        prop_assert!((trace(&x) - x.coords()[0] - x.coords()[1]
            - (x.coords()[2] + x.coords()[4])).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn objective_identities(kind_idx in 0usize..4, seed in 0u64..50, t in 0.3f64..3.0) {
        let (kind, dims) = match kind_idx {
            0 => (InstanceKind::Pet, Dims { m: 4, n: 6 }),
            1 => (InstanceKind::Doptimal, Dims { m: 8, n: 3 }),
            2 => (InstanceKind::QstReal, Dims { m: 9, n: 3 }),
            _ => (InstanceKind::Bqp, Dims { m: 0, n: 3 }),
        };
        let instance = random_instance(kind, dims, seed).unwrap();
        let algebra = instance.cone_algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(77));
        let x = sample::random_simplex_point(&mut rng, &algebra);
        // 1-log-homogeneity and the Euler identity it implies.
        let lhs = instance.value(&x.scale(t)).unwrap();
        prop_assert!((lhs - instance.value(&x).unwrap() - t.ln()).abs() <= 1e-9);
        let g = instance.grad(&x).unwrap();
        prop_assert!((inner(&g, &x).unwrap() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn gradient_log_convexity_sampled(kind_idx in 0usize..4, seed in 0u64..30, lam in 0.0f64..1.0) {
        let (kind, dims) = match kind_idx {
            0 => (InstanceKind::Pet, Dims { m: 4, n: 6 }),
            1 => (InstanceKind::Doptimal, Dims { m: 8, n: 3 }),
            2 => (InstanceKind::QstReal, Dims { m: 9, n: 3 }),
            _ => (InstanceKind::Bqp, Dims { m: 0, n: 3 }),
        };
        let instance = random_instance(kind, dims, seed).unwrap();
        let algebra = instance.cone_algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
        let x = sample::random_simplex_point(&mut rng, &algebra);
        let y = sample::random_simplex_point(&mut rng, &algebra);
        let u_src = sample::random_interior(&mut rng, &algebra);
        let u = spectral_decomposition(&u_src).unwrap().frame[0].clone();
        let check = jordan_mg::verify::check_grad_log_convexity(&instance, &x, &y, lam, &u).unwrap();
        prop_assert!(check.passes_at(1e-8), "margin {}", check.margin);
    }
}
