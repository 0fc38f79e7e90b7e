use proptest::prelude::*;
use rand::Rng;
use wavelab_core::mixtures::random::{common_mixture_pair, decomposition, density, pure_state, seeded, spanned_state};
use wavelab_core::mixtures::{
    decompose_including, density_from_mixture, entropy_from_overlap, equal_mixture_entropy, rescale_decomposition,
    spans_equal_via_mixture, verify_span_from_decompositions, verify_superposition_duality, PureState,
};
use wavelab_core::Complex64;

#[test]
fn equal_mixture_entropy_matches_overlap_formula() {
    let mut rng = seeded(7);
    let mut worst: f64 = 0.0;
    for trial in 0..1000 {
        let d = [2, 3, 8][trial % 3];
        let psi = pure_state(d, &mut rng).unwrap();
        let phi = pure_state(d, &mut rng).unwrap();
        let s = equal_mixture_entropy(&psi, &phi).unwrap();
        let p = psi.overlap(&phi).unwrap().norm().min(1.0);
        worst = worst.max((s - entropy_from_overlap(p).unwrap()).abs());
    }
    assert!(worst <= 1e-9, "worst deviation {worst:e}");
}

#[test]
fn decompositions_through_random_states_reconstruct() {
    let mut rng = seeded(11);
    let mut done = 0;
    while done < 200 {
        let d = [2, 4, 8][done % 3];
        let rho = density(d, d + 1, &mut rng).unwrap();
        let psi = pure_state(d, &mut rng).unwrap();
        if rho.expectation(&psi).unwrap() <= 1e-3 {
            continue;
        }
        let dec = decompose_including(&rho, &psi).unwrap();
        assert_eq!(dec.states()[0], psi);
        assert!(dec.weights()[0] > 0.0);
        let back = density_from_mixture(&dec).unwrap();
        assert!(back.distance(&rho).unwrap() <= 1e-8);
        done += 1;
    }
}

#[test]
fn common_mixtures_have_common_spans() {
    let mut rng = seeded(13);
    for trial in 0..500 {
        let d = 2 + trial % 5;
        let k = 1 + rng.random_range(0..d);
        let (a, b) = common_mixture_pair(d, k, &mut rng).unwrap();
        let r = spans_equal_via_mixture(&a, &b).unwrap();
        assert!(r.mixtures_equal, "trial {trial}: gap {:e}", r.mixture_gap);
        assert!(r.implication_holds(), "trial {trial}: {r:?}");
    }
}

#[test]
fn random_spanned_states_admit_two_decompositions() {
    let mut rng = seeded(17);
    for _ in 0..200 {
        let k = rng.random_range(2..=4);
        let (psi, phis) = spanned_state(4, k, &mut rng).unwrap();
        let w = verify_superposition_duality(&psi, &phis).unwrap();
        assert!(w.reconstruction_residual <= 1e-8);
        assert!(w.over_given.weights().iter().chain(w.through_psi.weights()).all(|x| *x > 0.0));
        assert!(verify_span_from_decompositions(&psi, &w.over_given, &w.through_psi).unwrap() <= 1e-9);
    }
}

#[test]
fn unrelated_mixtures_differ() {
    let mut rng = seeded(19);
    let a = decomposition(3, 2, &mut rng).unwrap();
    let b = decomposition(3, 2, &mut rng).unwrap();
    let r = spans_equal_via_mixture(&a, &b).unwrap();
    assert!(!r.mixtures_equal && !r.spans_equal);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entropy_formula_strictly_decreasing(p in 0.0f64..(1.0 - 1e-3)) {
        prop_assert!(entropy_from_overlap(p + 1e-3).unwrap() < entropy_from_overlap(p).unwrap());
    }

    #[test]
    fn rescaled_states_stay_on_their_rays(seed in any::<u64>(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        prop_assume!(re.abs() + im.abs() > 1e-3);
        let mut rng = seeded(seed);
        let d = 2 + (seed % 6) as usize;
        let phis: Vec<PureState> = (0..3).map(|_| pure_state(d, &mut rng).unwrap()).collect();
        let coeffs: Vec<Complex64> = (0..3).map(|i| Complex64::new(1.0 + i as f64, 0.5)).collect();
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        for (c, phi) in coeffs.iter().zip(&phis) {
            for (a, z) in v.iter_mut().zip(phi.amplitudes()) {
                *a += c * z;
            }
        }
        let scale = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi = PureState::normalized(v).unwrap();
        let terms: Vec<(Complex64, PureState)> = coeffs.iter().map(|c| c / scale).zip(phis.iter().cloned()).collect();
        let targets = [Complex64::new(re, im), Complex64::new(1.0, 0.0), Complex64::new(0.0, im + 0.5)];
        let out = rescale_decomposition(&psi, &terms, &targets).unwrap();
        for (hat, phi) in out.iter().zip(&phis) {
            let n = hat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let overlap: Complex64 = hat.iter().zip(phi.amplitudes()).map(|(a, b)| a.conj() * b / n).sum();
            prop_assert!((overlap.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn decompose_including_always_valid(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let d = 2 + (seed % 5) as usize;
        let rho = density(d, d, &mut rng).unwrap();
        let psi = pure_state(d, &mut rng).unwrap();
        prop_assume!(rho.expectation(&psi).unwrap() > 1e-6);
        let dec = decompose_including(&rho, &psi).unwrap();
        let total: f64 = dec.weights().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(density_from_mixture(&dec).unwrap().distance(&rho).unwrap() <= 1e-8);
    }
}
