//! Cross-module integration checks and property tests over the full
//! pipeline.

use fourgate::clifford::{Axis, CliffordOp, LayerSpec, MqGate};
use fourgate::cost::{nuclear_norm, power_law_fit};
use fourgate::gf2::{symmetric_pair_factor, BitMatrix};
use fourgate::synth::{
    canonical_form, compile_clifford, cx_four_gate, gaussian_cnot_synthesis, Variant,
};
use fourgate::verify::{tableau_of_compiled, verify_compilation};
use proptest::prelude::*;
use rand_core::SeedableRng;

fn recompose_layers(n: usize, layers: &[LayerSpec]) -> CliffordOp {
    let mut acc = CliffordOp::identity(n);
    for layer in layers {
        let op = CliffordOp::layer_symplectic(n, layer).unwrap();
        acc = CliffordOp::compose(&op, &acc).unwrap();
    }
    acc
}

#[test]
fn canonical_form_recomposes_500_cases() {
    for i in 0..500u64 {
        let n = 1 + (i as usize % 16);
        let u = CliffordOp::random(n, 0x5eed_0000 + i);
        let layers = canonical_form(&u);
        assert_eq!(recompose_layers(n, &layers), u, "n={n} case {i}");
    }
}

#[test]
fn full_pipeline_verifies_on_mixed_sizes() {
    for (i, n) in [1usize, 2, 3, 5, 8, 13, 21, 32].iter().enumerate() {
        for seed in 0..4u64 {
            let u = CliffordOp::random(*n, 0xabc0 + seed * 31 + i as u64);
            for variant in [Variant::Xz, Variant::Zx] {
                let cc = compile_clifford(&u, variant);
                assert!(cc.mq_count() <= 4);
                let report = verify_compilation(&u, &cc).unwrap();
                assert!(report.passed(), "n={n} seed={seed} {variant:?}: {report}");
            }
        }
    }
}

#[test]
fn compiled_shape_is_layered_form() {
    // layers come out in the fixed time order: SZ? Hall? MQ... SZ? H?
    // with at most four entangling gates alternating X/Z axes
    for seed in 0..20u64 {
        let n = 2 + (seed as usize % 10);
        let u = CliffordOp::random(n, 0xfeed + seed);
        let cc = compile_clifford(&u, Variant::Xz);
        let axes: Vec<Axis> = cc.mq_gates().map(|g| g.axis()).collect();
        for pair in axes.windows(2) {
            assert_ne!(pair[0], pair[1], "adjacent gates share an axis: {axes:?}");
        }
        let recomposed = tableau_of_compiled(&cc).unwrap();
        assert_eq!(recomposed, u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetric_pair_contract(n in 1usize..24, seed in any::<u64>()) {
        let c = BitMatrix::random_invertible(n, seed);
        let pair = symmetric_pair_factor(&c).unwrap();
        prop_assert!(pair.s1.is_symmetric());
        prop_assert!(pair.s2.is_symmetric());
        prop_assert_eq!(pair.s1.rank(), n);
        prop_assert_eq!(pair.s2.rank(), n);
        prop_assert_eq!(pair.s1.mul(&pair.s2).unwrap(), c);
    }

    #[test]
    fn four_gate_identities_hold(n in 2usize..24, seed in any::<u64>()) {
        let c = BitMatrix::random_invertible(n, seed);
        let dec = cx_four_gate(&c).unwrap();
        let id = BitMatrix::identity(n);
        // I + E1 F = C^-T and I + F E2 = C
        prop_assert_eq!(
            id.add(&dec.e1.mul(&dec.f).unwrap()).unwrap(),
            c.inverse_transpose().unwrap()
        );
        prop_assert_eq!(id.add(&dec.f.mul(&dec.e2).unwrap()).unwrap(), c.clone());
        // E2 + E1 + E1 F E2 = 0 and G + F + G E1 F = 0
        let z1 = dec.e2.add(&dec.e1).unwrap()
            .add(&dec.e1.mul(&dec.f).unwrap().mul(&dec.e2).unwrap()).unwrap();
        prop_assert!(z1.is_zero());
        let z2 = dec.g.add(&dec.f).unwrap()
            .add(&dec.g.mul(&dec.e1).unwrap().mul(&dec.f).unwrap()).unwrap();
        prop_assert!(z2.is_zero());
        prop_assert!(dec.f.is_symmetric());
        prop_assert!(dec.g.is_symmetric());
    }

    #[test]
    fn compile_recomposition_exact(n in 1usize..12, seed in any::<u64>()) {
        let u = CliffordOp::random(n, seed);
        let cc = compile_clifford(&u, Variant::Xz);
        prop_assert!(cc.mq_count() <= 4);
        prop_assert_eq!(tableau_of_compiled(&cc).unwrap(), u);
    }

    #[test]
    fn gaussian_baseline_recomposes(n in 2usize..16, seed in any::<u64>()) {
        let c = BitMatrix::random_invertible(n, seed);
        let (cnots, fused) = gaussian_cnot_synthesis(&c).unwrap();
        let mut acc = CliffordOp::identity(n);
        for &(ctrl, tgt) in &cnots {
            acc.apply_cnot(ctrl, tgt);
        }
        prop_assert!(acc.same_symplectic_part(&CliffordOp::cx_layer_symplectic(&c).unwrap()));
        for gate in &fused {
            prop_assert!(gate.xi().is_symmetric());
            prop_assert!(gate.xi().diag().is_zero());
        }
    }

    #[test]
    fn mq_gate_tableaux_symplectic(n in 1usize..10, seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let xi = BitMatrix::random_symmetric(n, &mut rng);
        for axis in [Axis::X, Axis::Z] {
            let gate = MqGate::new(axis, xi.clone()).unwrap();
            let op = CliffordOp::layer_symplectic(n, &LayerSpec::Mq(gate)).unwrap();
            prop_assert!(op.is_symplectic());
        }
    }

    #[test]
    fn nuclear_norm_trace_and_frobenius(n in 1usize..40, seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let xi = BitMatrix::random_symmetric(n, &mut rng);
        // internal solver invariants assert on every call
        let v = nuclear_norm(&xi).unwrap();
        let trace = xi.diag().count_ones() as f64;
        prop_assert!(v >= trace - 1e-7);
    }

    #[test]
    fn power_law_recovers_exact_exponents(
        beta in -2.0f64..3.0,
        scale in 0.1f64..50.0,
    ) {
        let points: Vec<(usize, f64)> = [3usize, 7, 12, 25, 60]
            .iter()
            .map(|&n| (n, scale * (n as f64).powf(beta)))
            .collect();
        let fit = power_law_fit(&points).unwrap();
        prop_assert!((fit.beta - beta).abs() < 1e-9);
        prop_assert!((fit.prefactor - scale).abs() < 1e-6 * scale.max(1.0));
    }
}
