use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use polyhardy_core::laurent::sk_exact_circle;
use polyhardy_core::samples;
use polyhardy_core::{
    apply_sk, components_from_derivatives, lemma1_value, CurveDiscretization, LaurentJet,
    LaurentPoly, PolyanalyticFn, WhitneyJet,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn laurent(max_exp: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-max_exp..=max_exp, complex()), 0..8)
        .prop_map(|terms| LaurentPoly::from_terms(terms).unwrap())
}

fn laurent_jet(max_k: usize, max_exp: i64) -> impl Strategy<Value = LaurentJet> {
    prop::collection::vec(laurent(max_exp), 1..=max_k + 1)
        .prop_map(|rows| LaurentJet::new(rows).unwrap())
}

fn unit_circle(n: usize) -> Arc<CurveDiscretization> {
    Arc::new(CurveDiscretization::circle(Complex64::new(0.0, 0.0), 1.0, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cauchy_multiplier_is_an_involution(p in laurent(64)) {
        prop_assert_eq!(p.cauchy_multiplier().cauchy_multiplier(), p);
    }

    #[test]
    fn exact_sk_is_an_involution(jet in laurent_jet(4, 16)) {
        let twice = sk_exact_circle(&sk_exact_circle(&jet).unwrap()).unwrap();
        prop_assert!(twice.max_abs_diff(&jet) < 1e-13);
    }

    #[test]
    fn exact_sk_is_linear(f in laurent_jet(3, 10), seed in any::<u64>(), a in complex(), b in complex()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = samples::random_laurent_jet(&mut rng, f.k(), -10, 10);
        let lhs = sk_exact_circle(&f.scale(a).add(&g.scale(b)).unwrap()).unwrap();
        let rhs = sk_exact_circle(&f).unwrap().scale(a)
            .add(&sk_exact_circle(&g).unwrap().scale(b)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-13);
    }

    #[test]
    fn traces_are_fixed_or_negated(seed in any::<u64>(), k in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inner = samples::random_interior_polyanalytic(&mut rng, k, 8);
        let jet = samples::circle_jet(&inner, k).unwrap();
        prop_assert!(sk_exact_circle(&jet).unwrap().max_abs_diff(&jet) < 1e-13);

        let outer = samples::random_exterior_polyanalytic(&mut rng, k, 8);
        let jet = samples::circle_jet(&outer, k).unwrap();
        let negated = jet.scale(Complex64::new(-1.0, 0.0));
        prop_assert!(sk_exact_circle(&jet).unwrap().max_abs_diff(&negated) < 1e-13);
    }

    #[test]
    fn lemma1_vanishes(m in 1u32..=6, n in 1u32..=6, a in 0.0f64..TAU, b in 0.0f64..TAU) {
        prop_assume!((a - b).abs() > 1e-6);
        let t = Complex64::from_polar(1.0, a);
        let tau = Complex64::from_polar(1.0, b);
        prop_assert!(lemma1_value(m, n, t, tau).unwrap().norm() <= 1e-13);
    }

    #[test]
    fn component_extraction_inverts_composition(seed in any::<u64>(), k in 0usize..6, r in 0.3f64..1.5, arg in 0.0f64..TAU) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = samples::random_polyanalytic(&mut rng, k, -3, 3);
        let z = Complex64::from_polar(r, arg);
        let values: Vec<Complex64> = (0..=k).map(|j| f.dbar(j).evaluate(z).unwrap()).collect();
        let recovered = components_from_derivatives(&values, z);
        for (m, p) in f.exact_components().unwrap().iter().enumerate() {
            prop_assert!((recovered[m] - p.eval(z)).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn subjet_duality(k in 0usize..5, a in 0usize..5, b in 0usize..5) {
        prop_assume!(a + b <= k);
        let jet = WhitneyJet::from_fn(unit_circle(16), k, |n, z| z.powi(n as i32) + n as f64);
        let nested = jet.subjet(a).unwrap().subjet(b).unwrap();
        let direct = jet.subjet(a + b).unwrap();
        prop_assert_eq!(nested.components(), direct.components());
    }

    #[test]
    fn sk_commutes_with_subjet(seed in any::<u64>(), k in 1usize..4, j2 in 0usize..4) {
        prop_assume!(j2 <= k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exact = samples::random_laurent_jet(&mut rng, k, -6, 6);
        let f = WhitneyJet::from_laurent(Arc::new(CurveDiscretization::ellipse(2.0, 1.0, 128).unwrap()), &exact);
        let lhs = apply_sk(&f).unwrap().subjet(j2).unwrap();
        let rhs = apply_sk(&f.subjet(j2).unwrap()).unwrap();
        prop_assert!(lhs.sup_distance(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn quadrature_sk_is_linear(seed in any::<u64>(), k in 0usize..4, a in complex(), b in complex()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let curve = unit_circle(64);
        let f = WhitneyJet::from_laurent(curve.clone(), &samples::random_laurent_jet(&mut rng, k, -5, 5));
        let g = WhitneyJet::from_laurent(curve, &samples::random_laurent_jet(&mut rng, k, -5, 5));
        let lhs = apply_sk(&f.scale(a).add(&g.scale(b)).unwrap()).unwrap();
        let rhs = apply_sk(&f).unwrap().scale(a).add(&apply_sk(&g).unwrap().scale(b)).unwrap();
        prop_assert!(lhs.sup_distance(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn jet_from_polyanalytic_is_linear(seed in any::<u64>(), k in 0usize..4, a in complex()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let curve = unit_circle(32);
        let f = samples::random_polyanalytic(&mut rng, k, -3, 3);
        let g = samples::random_polyanalytic(&mut rng, k, -3, 3);
        let sum = PolyanalyticFn::exact(
            f.exact_components().unwrap().iter().zip(g.exact_components().unwrap())
                .map(|(p, q)| p.scale(a) + q.clone())
                .collect(),
        ).unwrap();
        let lhs = polyhardy_core::jet_from_polyanalytic(&sum, curve.clone(), k).unwrap();
        let rhs = polyhardy_core::jet_from_polyanalytic(&f, curve.clone(), k).unwrap().scale(a)
            .add(&polyhardy_core::jet_from_polyanalytic(&g, curve, k).unwrap()).unwrap();
        prop_assert!(lhs.sup_distance(&rhs).unwrap() < 1e-12);
    }
}

#[test]
fn lemma1_coefficients_match_numerical_residues() {
    // Simple-pole coefficients by quadrature over small circles around each pole,
    // independent of the exact partial-fraction route.
    let t = Complex64::from_polar(1.0, 0.4);
    let tau = Complex64::from_polar(1.0, 2.1);
    for m in 1..=4i32 {
        for n in 1..=4i32 {
            let radius = 0.2 * (t - tau).norm();
            let nodes = 512;
            let residue: Complex64 = (0..nodes)
                .map(|j| {
                    let e =
                        Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / nodes as f64);
                    let zeta = t + e * radius;
                    e * radius / ((zeta - t).powi(m) * (zeta - tau).powi(n))
                })
                .sum::<Complex64>()
                / nodes as f64;
            let same_at_tau: Complex64 = (0..nodes)
                .map(|j| {
                    let e =
                        Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / nodes as f64);
                    let zeta = tau + e * radius;
                    e * radius / ((zeta - t).powi(m) * (zeta - tau).powi(n))
                })
                .sum::<Complex64>()
                / nodes as f64;
            let quadrature = residue + same_at_tau;
            let exact = lemma1_value(m as u32, n as u32, t, tau).unwrap();
            let scale = (t - tau).norm().powi(-(m + n - 1));
            assert!(
                (exact - quadrature).norm() < 1e-10 * scale.max(1.0),
                "m={m} n={n}"
            );
            assert!(residue.norm() > 1e-3, "pole at t contributes");
        }
    }
}

#[test]
fn reproducible_across_thread_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let exact = samples::random_laurent_jet(&mut rng, 3, -8, 8);
    let f = WhitneyJet::from_laurent(
        Arc::new(CurveDiscretization::ellipse(2.0, 1.0, 256).unwrap()),
        &exact,
    );
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = single.install(|| apply_sk(&f).unwrap());
    let b = many.install(|| apply_sk(&f).unwrap());
    assert_eq!(a.components(), b.components());
}
