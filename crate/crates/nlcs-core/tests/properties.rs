//! Randomized structural properties of the vector algebra and builders.

use nlcs_core::{
    build_two_photon_nlcs, mandel_q, quadrature_stats, Complex64, FockVector, NonlinearFn,
    TruncationConfig, TwoPhotonSeed, TwoPhotonSpec,
};
use proptest::prelude::*;

fn amplitude() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn vector(min_dim: usize) -> impl Strategy<Value = FockVector> {
    prop::collection::vec(amplitude(), min_dim..64)
        .prop_filter("needs some mass", |amps| {
            amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-6
        })
        .prop_map(|amps| FockVector::from_amplitudes(amps).unwrap())
}

fn pair() -> impl Strategy<Value = (FockVector, FockVector)> {
    (4usize..64).prop_flat_map(|d| {
        (
            prop::collection::vec(amplitude(), d..=d),
            prop::collection::vec(amplitude(), d..=d),
        )
            .prop_map(|(a, b)| {
                (
                    FockVector::from_amplitudes(a).unwrap(),
                    FockVector::from_amplitudes(b).unwrap(),
                )
            })
    })
}

proptest! {
    // ⟨a†ψ|φ⟩ = ⟨ψ|aφ⟩ on the truncated space: the raise drops exactly
    // the row whose partner the lowering zeroes.
    #[test]
    fn raise_and_lower_are_adjoint((psi, phi) in pair()) {
        let lhs = psi.raised(1).inner(&phi).unwrap();
        let rhs = psi.inner(&phi.lowered(1)).unwrap();
        let scale = psi.norm() * phi.norm() * psi.dim() as f64;
        prop_assert!((lhs - rhs).norm() <= 1e-13 * scale.max(1.0));
    }

    #[test]
    fn diagonal_operators_commute(v in vector(1), shift in 1i64..7) {
        let f = NonlinearFn::inv_sqrt_n_plus_one();
        let g = NonlinearFn::n_plus_one().shifted(shift);
        let fg = v.diagonal(&f).unwrap().diagonal(&g).unwrap();
        let gf = v.diagonal(&g).unwrap().diagonal(&f).unwrap();
        let diff = fg.minus(&gf).unwrap().norm();
        prop_assert!(diff <= 1e-15 * fg.norm().max(1.0));
    }

    #[test]
    fn normalization_fixes_phase_and_norm(v in vector(1)) {
        let n = v.normalized().unwrap();
        prop_assert!((n.norm() - 1.0).abs() < 1e-12);
        let first = n
            .amplitudes()
            .iter()
            .find(|a| a.norm_sqr() > 0.0)
            .copied()
            .unwrap();
        prop_assert!(first.re > 0.0);
        prop_assert!(first.im.abs() <= 1e-12 * first.re);
    }

    // Every vector embeds as a genuine state of the untruncated space, so
    // the uncertainty product can never dip below the Heisenberg floor.
    #[test]
    fn heisenberg_bound_holds_for_random_states(v in vector(1)) {
        let s = v.normalized().unwrap();
        let q = quadrature_stats(&s).unwrap();
        prop_assert!(q.var_x * q.var_y >= 1.0 / 16.0 - 1e-12);
    }

    #[test]
    fn number_states_have_q_minus_one(n in 1usize..40) {
        let cfg = TruncationConfig::with_dim(64).unwrap();
        let e = FockVector::basis(n, &cfg).unwrap();
        prop_assert!((mandel_q(&e).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_lower_then_lower_restores(v in vector(2)) {
        // a·a⁻¹ = 1 wherever the raise did not hit the top row.
        let mut amps = v.amplitudes().to_vec();
        let top = amps.len() - 1;
        amps[top] = Complex64::new(0.0, 0.0);
        let v = FockVector::from_amplitudes(amps).unwrap();
        let back = v.inv_lowered().lowered(1);
        let diff = back.minus(&v).unwrap().norm();
        prop_assert!(diff <= 1e-14 * v.norm().max(1.0));
    }

    #[test]
    fn inverse_raise_then_raise_removes_vacuum(v in vector(2)) {
        // a†·a†⁻¹ = 1 − |0⟩⟨0|.
        let back = v.inv_raised().raised(1);
        let mut expect = v.amplitudes().to_vec();
        expect[0] = Complex64::new(0.0, 0.0);
        let expect = FockVector::from_amplitudes(expect).unwrap();
        let diff = back.minus(&expect).unwrap().norm();
        prop_assert!(diff <= 1e-14 * v.norm().max(1.0));
    }

    #[test]
    fn two_photon_builders_preserve_seed_parity(
        re in -0.9f64..0.9,
        im in -0.9f64..0.9,
        odd_seed in any::<bool>(),
    ) {
        let alpha = Complex64::new(re, im);
        let seed = if odd_seed { TwoPhotonSeed::Odd } else { TwoPhotonSeed::Even };
        let spec = TwoPhotonSpec::new(
            NonlinearFn::unit(),
            alpha,
            seed,
            TruncationConfig::with_dim(128).unwrap(),
        );
        let s = build_two_photon_nlcs(&spec).unwrap();
        let wrong_parity = if odd_seed { 0 } else { 1 };
        for n in 0..s.dim() {
            if n % 2 == wrong_parity {
                prop_assert_eq!(s.amp(n).norm_sqr(), 0.0);
            }
        }
    }
}
