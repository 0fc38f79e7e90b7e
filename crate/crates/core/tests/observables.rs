use std::f64::consts::PI;

use proptest::prelude::*;
use wavelab_core::observables::{
    classify_divergence, expectation, moment_fingerprint, truncation_sweep, PolynomialObservable, SweepConfig, Verdict,
};
use wavelab_core::profile::FnSampler;
use wavelab_core::{AnalyticProfile, Complex64, Grid, GridWavefunction};

const RADII: [f64; 4] = [8.0, 16.0, 32.0, 64.0];

fn obs(n: u32, m: u32) -> PolynomialObservable {
    PolynomialObservable::new(n, m).unwrap()
}

fn cauchy_x2(l: f64) -> f64 {
    2.0 / PI * (l - l.atan())
}

#[test]
fn cauchy_second_moment_tracks_closed_form_and_diverges() {
    let sweep = truncation_sweep(&AnalyticProfile::CauchySqrt, obs(2, 0), &RADII, &SweepConfig::default()).unwrap();
    for p in &sweep.points {
        let exact = cauchy_x2(p.radius);
        assert!((p.estimate - exact).abs() <= 0.02 * exact, "L = {}: {} vs {exact}", p.radius, p.estimate);
    }
    match classify_divergence(&sweep).unwrap().verdict {
        Verdict::Divergent { growth_exponent } => assert!((growth_exponent - 1.0).abs() <= 0.1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn gaussian_second_moment_converges() {
    let sweep = truncation_sweep(&AnalyticProfile::Gaussian, obs(2, 0), &RADII, &SweepConfig::default()).unwrap();
    for p in &sweep.points {
        assert!((p.estimate - 0.5).abs() < 1e-6);
    }
    match classify_divergence(&sweep).unwrap().verdict {
        Verdict::Convergent { limit } => assert!((limit - 0.5).abs() <= 1e-4),
        other => panic!("{other:?}"),
    }
    let norm = truncation_sweep(&AnalyticProfile::Gaussian, obs(0, 0), &RADII, &SweepConfig::default()).unwrap();
    assert!(norm.estimates().iter().all(|v| (v - 1.0).abs() < 1e-9));
}

#[test]
fn gaussian_converges_for_every_low_degree_observable() {
    for d in 0..=8u32 {
        for n in 0..=d {
            let sweep =
                truncation_sweep(&AnalyticProfile::Gaussian, obs(n, d - n), &RADII, &SweepConfig::default()).unwrap();
            let v = classify_divergence(&sweep).unwrap();
            assert!(v.verdict.is_convergent(), "({n}, {}): {:?}", d - n, v.verdict);
        }
    }
}

#[test]
fn cauchy_position_powers_split_by_parity() {
    for n in 1..=8u32 {
        let sweep = truncation_sweep(&AnalyticProfile::CauchySqrt, obs(n, 0), &RADII, &SweepConfig::default()).unwrap();
        let v = classify_divergence(&sweep).unwrap();
        if n % 2 == 0 {
            assert!(v.verdict.is_divergent(), "n = {n}: {:?}", v.verdict);
            assert!(!v.conditionally_convergent);
        } else {
            let scale = sweep.absolutes()[3];
            assert!(
                matches!(v.verdict, Verdict::Convergent { limit } if limit.abs() < 1e-12 * scale),
                "n = {n}: {:?}",
                v.verdict
            );
            assert!(v.absolute_verdict.is_divergent());
            assert!(v.conditionally_convergent, "n = {n}");
        }
    }
}

#[test]
fn fingerprint_entries() {
    let g = Grid::new(10.0, 1024).unwrap();
    let gauss = moment_fingerprint(&AnalyticProfile::Gaussian.sample(&g).unwrap(), 2).unwrap();
    assert!((gauss.get(0, 0).unwrap() - 1.0).abs() < 1e-8);
    assert!(gauss.get(1, 0).unwrap().abs() < 1e-12);
    assert!((gauss.get(2, 0).unwrap() - 0.5).abs() < 1e-8);
    let h1 = moment_fingerprint(&AnalyticProfile::Hermite(1).sample(&g).unwrap(), 2).unwrap();
    assert!(h1.get(1, 0).unwrap().abs() < 1e-12);
    assert!((h1.get(2, 0).unwrap() - 1.5).abs() < 1e-8);
}

#[test]
fn hermite_fingerprints_are_pairwise_distinct() {
    let g = Grid::new(12.0, 1024).unwrap();
    let tables: Vec<_> =
        (0..=6).map(|n| moment_fingerprint(&AnalyticProfile::Hermite(n).sample(&g).unwrap(), 4).unwrap()).collect();
    for i in 0..tables.len() {
        for j in i + 1..tables.len() {
            let gap = tables[i]
                .entries
                .iter()
                .zip(&tables[j].entries)
                .map(|(a, b)| (a.value - b.value).abs())
                .fold(0.0, f64::max);
            assert!(gap > 0.1, "hermite({i}) vs hermite({j}): {gap}");
        }
    }
}

#[test]
fn closed_form_sampler_sweeps() {
    let sampler = FnSampler(|x: f64| Complex64::new((-x * x / 2.0).exp() / PI.powf(0.25), 0.0));
    let sweep = truncation_sweep(&sampler, obs(2, 0), &RADII, &SweepConfig::default()).unwrap();
    assert!(classify_divergence(&sweep).unwrap().verdict.is_convergent());
}

fn shifted_gaussian(g: Grid, a: f64, k: f64) -> GridWavefunction {
    GridWavefunction::from_fn(g, |x| {
        let y = x - a;
        Complex64::from_polar((-y * y / 2.0).exp() / PI.powf(0.25), k * x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn translation_shifts_mean_and_keeps_variance(a in -2.0f64..2.0) {
        let g = Grid::new(12.0, 1024).unwrap();
        let centered = shifted_gaussian(g, 0.0, 0.0);
        let moved = shifted_gaussian(g, a, 0.0);
        let m1 = expectation(&moved, obs(1, 0)).unwrap().value;
        let m2 = expectation(&moved, obs(2, 0)).unwrap().value;
        let c2 = expectation(&centered, obs(2, 0)).unwrap().value;
        prop_assert!((m1 - a).abs() < 1e-5);
        prop_assert!((m2 - m1 * m1 - c2).abs() < 1e-5);
    }

    #[test]
    fn symmetrized_bracket_is_real(a in -1.5f64..1.5, k in -1.5f64..1.5, n in 0u32..=4, m in 0u32..=4) {
        let g = Grid::new(12.0, 1024).unwrap();
        let psi = shifted_gaussian(g, a, k);
        let e = expectation(&psi, obs(n, m)).unwrap();
        prop_assert!(e.imaginary_residual <= 1e-6, "({n},{m}): {}", e.imaginary_residual);
    }
}
