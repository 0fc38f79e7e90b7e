use std::f64::consts::PI;

use proptest::prelude::*;
use wavelab_core::observables::moment_fingerprint;
use wavelab_core::schwartz::{
    analyze_truncated_sequence, build_truncated_sequence, classify_schwartz, fourier_closure_check, frechet_converges,
    moment_distinguish, seminorm, sequence_grid, BatteryConfig, Distinction, SchwartzVerdict, DEFAULT_MAX_INDEX,
    DEFAULT_RADII,
};
use wavelab_core::{AnalyticProfile, Grid, GridWavefunction};

fn schwartz_profiles() -> Vec<AnalyticProfile> {
    vec![
        AnalyticProfile::Gaussian,
        AnalyticProfile::Hermite(3),
        AnalyticProfile::Hermite(10),
        AnalyticProfile::Bump { radius: 1.0 },
    ]
}

#[test]
fn battery_separates_schwartz_profiles_from_cauchy() {
    let config = BatteryConfig::default();
    for p in schwartz_profiles() {
        let r = classify_schwartz(&p, DEFAULT_MAX_INDEX, &DEFAULT_RADII, &BatteryConfig::resolving(&p)).unwrap();
        assert_eq!(r.verdict, SchwartzVerdict::SchwartzLike, "{}", p.label());
    }
    let r = classify_schwartz(&AnalyticProfile::CauchySqrt, DEFAULT_MAX_INDEX, &DEFAULT_RADII, &config).unwrap();
    match r.verdict {
        SchwartzVerdict::NotSchwartz { a, b } => assert!(a + b <= 2, "witness ({a}, {b})"),
        other => panic!("{other:?}"),
    }
    let x2 = r.row(2, 0).unwrap();
    assert!(x2.growing);
    // sup |x^2 psi| = L^2 / sqrt(pi (1 + L^2)), linear in L.
    let ratio = x2.values[4] / x2.values[3];
    assert!((ratio - 2.0).abs() < 1e-3, "{ratio}");
}

#[test]
fn batteries_are_stable_under_doubling() {
    let config = BatteryConfig::default();
    let doubled: Vec<f64> = DEFAULT_RADII.iter().map(|r| 2.0 * r).collect();
    for p in [AnalyticProfile::Gaussian, AnalyticProfile::Hermite(3)] {
        let r = classify_schwartz(&p, 8, &doubled, &config).unwrap();
        assert_eq!(r.verdict, SchwartzVerdict::SchwartzLike, "{}: {:?}", p.label(), r.rows.iter().find(|r| !r.stable));
    }
}

#[test]
fn fourier_transforms_stay_schwartz() {
    let config = BatteryConfig::default();
    for p in [AnalyticProfile::Gaussian, AnalyticProfile::Hermite(3), AnalyticProfile::Hermite(10)] {
        let r = fourier_closure_check(p, DEFAULT_MAX_INDEX, &config).unwrap();
        assert_eq!(r.transform.verdict, SchwartzVerdict::SchwartzLike, "{}", p.label());
        assert!(r.eigen_residual.unwrap() <= 1e-5, "{}: {:?}", p.label(), r.eigen_residual);
    }
    let r = fourier_closure_check(AnalyticProfile::Bump { radius: 1.0 }, DEFAULT_MAX_INDEX, &config).unwrap();
    assert_eq!(
        r.transform.verdict,
        SchwartzVerdict::SchwartzLike,
        "{:?}",
        r.transform.rows.iter().filter(|r| !r.stable).collect::<Vec<_>>()
    );
    for t in &r.tails {
        assert!(t.spectral > 1e-12, "{t:?}");
        assert!(t.sign_changes > 0, "{t:?}");
        assert!((t.spectral - t.quadrature).abs() <= 1e-3 * t.quadrature, "{t:?}");
    }
}

#[test]
fn gaussian_family_converges_in_every_seminorm() {
    let grid = Grid::with_spacing(16.0, 0.125).unwrap();
    let seq: Vec<GridWavefunction> = [1e3, 1e4, 1e5, 1e6, 1e7]
        .iter()
        .map(|n: &f64| {
            let var = 1.0 + 1.0 / n;
            GridWavefunction::from_real_fn(grid, |x| (2.0 * PI * var).powf(-0.25) * (-x * x / (4.0 * var)).exp())
        })
        .collect();
    let t = frechet_converges(&seq, 4).unwrap();
    assert!(t.all_converged(), "{:?}", t.rows.iter().find(|r| !r.converged));
}

#[test]
fn truncated_cauchy_converges_in_norm_not_in_moments() {
    let cutoffs = [8.0, 16.0, 32.0, 64.0];
    let grid = sequence_grid(&cutoffs, 1.0).unwrap();
    let seq = build_truncated_sequence(&cutoffs, 1.0, &grid).unwrap();
    let a = analyze_truncated_sequence(&seq).unwrap();
    assert!(a.norms.iter().all(|n| (n - 1.0).abs() < 1e-12));
    assert!(a.gaps_decreasing, "{:?}", a.l2_gaps);
    for r in &a.gap_ratios {
        assert!((0.5..=2.0).contains(r), "{:?}", a.gap_ratios);
    }
    for (m, c) in a.second_moments.iter().zip(&a.closed_form_moments) {
        assert!((m - c).abs() <= 0.05 * c, "{m} vs {c}");
    }
    assert!((a.moment_exponent - 1.0).abs() <= 0.15, "{}", a.moment_exponent);

    let t = frechet_converges(&seq.states, 2).unwrap();
    let x2 = t.row(2, 0).unwrap();
    assert!(!x2.converged && !x2.decreasing, "{x2:?}");
    assert!(!t.moments_converged);
}

#[test]
fn hermite_functions_are_told_apart_by_moments() {
    let g = Grid::new(12.0, 1024).unwrap();
    for i in 0..5u32 {
        for j in (i + 1)..5 {
            let a = AnalyticProfile::Hermite(i as usize).sample(&g).unwrap();
            let b = AnalyticProfile::Hermite(j as usize).sample(&g).unwrap();
            match moment_distinguish(&a, &b, 6).unwrap() {
                Distinction::Separated { n, m, .. } => assert!(n + m <= 6),
                other => panic!("h{i} vs h{j}: {other:?}"),
            }
        }
    }
    let a = AnalyticProfile::Gaussian.sample(&g).unwrap();
    assert!(matches!(moment_distinguish(&a, &a, 6).unwrap(), Distinction::Indistinguishable { .. }));
    // Different profiles share the same second-moment entries only when they should.
    let t = moment_fingerprint(&a, 2).unwrap();
    assert!((t.get(2, 0).unwrap() - 0.5).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seminorms_are_symmetric_for_even_profiles(a in 0u32..5, b in 0u32..3) {
        let g = Grid::new(10.0, 512).unwrap();
        let p = AnalyticProfile::Gaussian.sample(&g).unwrap();
        let mirrored = GridWavefunction::from_fn(g, |x| AnalyticProfile::Gaussian.evaluate(-x));
        let s = seminorm(&p, a, b).unwrap().value;
        let t = seminorm(&mirrored, a, b).unwrap().value;
        prop_assert!((s - t).abs() <= 1e-10 * s.max(1e-300));
    }

    #[test]
    fn seminorm_nondecreasing_in_radius(idx in 0usize..5, a in 0u32..5, l in 4.0f64..30.0) {
        let profile = [
            AnalyticProfile::Gaussian,
            AnalyticProfile::Hermite(2),
            AnalyticProfile::Bump { radius: 1.0 },
            AnalyticProfile::CauchySqrt,
            AnalyticProfile::Hermite(5),
        ][idx];
        let l = l.round();
        let small = profile.sample(&Grid::with_spacing(l, 0.25).unwrap()).unwrap();
        let large = profile.sample(&Grid::with_spacing(2.0 * l, 0.25).unwrap()).unwrap();
        let s = seminorm(&small, a, 0).unwrap().value;
        let t = seminorm(&large, a, 0).unwrap().value;
        prop_assert!(t >= s * (1.0 - 1e-12), "{s} > {t}");
    }
}
