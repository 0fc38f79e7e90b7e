use std::f64::consts::PI;

use wavelab_core::observables::{expectation, moment_fingerprint, PolynomialObservable};
use wavelab_core::schwartz::{
    analyze_truncated_sequence, build_truncated_sequence, classify_schwartz, fourier_closure_check, frechet_converges,
    moment_distinguish, sequence_grid, BatteryConfig, Distinction, SchwartzReport, SchwartzVerdict, DEFAULT_MAX_INDEX,
    DEFAULT_RADII, TAIL_WAVENUMBERS,
};
use wavelab_core::AnalyticProfile;

use super::{Ctx, DemoError, Params};
use crate::report::{Check, CsvSeries, Provenance};

const CUTOFFS: [f64; 4] = [8.0, 16.0, 32.0, 64.0];
const TAPER_WIDTH: f64 = 1.0;

pub(super) fn cauchy_sequence(ctx: &mut Ctx) -> Result<(), DemoError> {
    let grid = sequence_grid(&CUTOFFS, TAPER_WIDTH)?;
    ctx.param("cutoffs", &CUTOFFS);
    ctx.param("taper_width", &TAPER_WIDTH);
    ctx.param("grid", &[grid.half_width(), grid.len() as f64]);
    let seq = build_truncated_sequence(&CUTOFFS, TAPER_WIDTH, &grid)?;
    let a = analyze_truncated_sequence(&seq)?;
    ctx.param("predicted_norm_cauchy_cutoff", &a.predicted_cauchy_cutoff);

    for (n, norm) in CUTOFFS.iter().zip(&a.norms) {
        ctx.check(Check::within(format!("norm of psi_{n}"), 1.0, *norm, 1e-12, Provenance::Identity));
    }
    ctx.check(Check::holds("successive L2 gaps strictly decreasing", a.gaps_decreasing, Provenance::ClosedForm));
    for (i, r) in a.gap_ratios.iter().enumerate() {
        ctx.check(Check::in_range(
            format!("gap^2 / (2/(pi n)) for n = {}", CUTOFFS[i]),
            *r,
            0.5,
            2.0,
            Provenance::ClosedForm,
        ));
    }
    let mut csv = CsvSeries::new("cauchy_sequence_x2.csv", &["L", "estimate"]);
    for ((n, m), c) in CUTOFFS.iter().zip(&a.second_moments).zip(&a.closed_form_moments) {
        ctx.check(Check::within(format!("<X^2> of psi_{n}"), *c, *m, 0.05 * c, Provenance::ClosedForm));
        csv.push(vec![*n, *m]);
    }
    ctx.series(csv);
    ctx.check(Check::within("<X^2> growth exponent in n", 1.0, a.moment_exponent, 0.15, Provenance::ClosedForm));

    let t = frechet_converges(&seq.states, 2)?;
    let x2 = t.row(2, 0).expect("index (2, 0) present");
    ctx.check(Check::holds(
        "seminorm (2,0) gaps do not converge",
        !x2.converged && !x2.decreasing,
        Provenance::ClosedForm,
    ));
    ctx.check(Check::holds("moment fingerprints do not converge", !t.moments_converged, Provenance::ClosedForm));
    Ok(())
}

fn verdict_label(v: SchwartzVerdict) -> String {
    match v {
        SchwartzVerdict::SchwartzLike => "SchwartzLike".into(),
        SchwartzVerdict::NotSchwartz { a, b } => format!("NotSchwartz({a}, {b})"),
        SchwartzVerdict::Undetermined => "Undetermined".into(),
    }
}

fn schwartz_profiles() -> Vec<AnalyticProfile> {
    let mut v = vec![AnalyticProfile::Gaussian];
    v.extend((0..=10).map(AnalyticProfile::Hermite));
    v
}

fn battery(profile: AnalyticProfile) -> Result<SchwartzReport, DemoError> {
    Ok(classify_schwartz(&profile, DEFAULT_MAX_INDEX, &DEFAULT_RADII, &BatteryConfig::resolving(&profile))?)
}

pub(super) fn schwartz_battery(ctx: &mut Ctx) -> Result<(), DemoError> {
    let config = BatteryConfig::default();
    ctx.param("radii", &DEFAULT_RADII);
    ctx.param("max_index", &DEFAULT_MAX_INDEX);
    ctx.param("dx", &config.dx);
    ctx.param("bump_dx", &BatteryConfig::resolving(&AnalyticProfile::Bump { radius: 1.0 }).dx);
    ctx.param("stability_tolerance", &config.stability_tolerance);

    let mut profiles = schwartz_profiles();
    profiles.push(AnalyticProfile::Bump { radius: 1.0 });
    for p in profiles {
        let r = battery(p)?;
        ctx.check(Check::equals(
            p.label(),
            "SchwartzLike".to_string(),
            verdict_label(r.verdict),
            Provenance::Reference,
        ));
    }

    let r = battery(AnalyticProfile::CauchySqrt)?;
    ctx.check(Check::equals(
        "cauchy-sqrt",
        "NotSchwartz(2, 0)".to_string(),
        verdict_label(r.verdict),
        Provenance::ClosedForm,
    ));
    let row = r.row(2, 0).expect("index (2, 0) present");
    for (l, v) in r.radii.iter().zip(&row.values) {
        let exact = l * l / (PI * (1.0 + l * l)).sqrt();
        ctx.check(Check::within(
            format!("cauchy-sqrt sup|x^2 psi| at L = {l}"),
            exact,
            *v,
            1e-10 * exact,
            Provenance::ClosedForm,
        ));
    }
    Ok(())
}

pub(super) fn fourier_closure(ctx: &mut Ctx) -> Result<(), DemoError> {
    let config = BatteryConfig::default();
    ctx.param("k_radii", &DEFAULT_RADII);
    ctx.param("max_index", &DEFAULT_MAX_INDEX);
    ctx.param("dk", &config.dx);
    ctx.param("tail_wavenumbers", &TAIL_WAVENUMBERS);
    for p in schwartz_profiles() {
        let r = fourier_closure_check(p, DEFAULT_MAX_INDEX, &config)?;
        ctx.check(Check::equals(
            format!("transform of {}", p.label()),
            "SchwartzLike".to_string(),
            verdict_label(r.transform.verdict),
            Provenance::Reference,
        ));
        if let Some(res) = r.eigen_residual {
            ctx.check(Check::at_most(format!("eigen-residual of {}", p.label()), res, 1e-5, Provenance::ClosedForm));
        }
    }
    let bump = AnalyticProfile::Bump { radius: 1.0 };
    let r = fourier_closure_check(bump, DEFAULT_MAX_INDEX, &config)?;
    ctx.check(Check::equals(
        "transform of bump(1)",
        "SchwartzLike".to_string(),
        verdict_label(r.transform.verdict),
        Provenance::Reference,
    ));
    for t in &r.tails {
        ctx.check(Check::above(format!("|F bump| near k = {}", t.k), t.spectral, 1e-12, Provenance::Reference));
        ctx.check(Check::within(
            format!("|F bump| near k = {} vs quadrature", t.k),
            t.quadrature,
            t.spectral,
            1e-3 * t.quadrature,
            Provenance::Oracle,
        ));
        ctx.check(Check::above(
            format!("sign changes near k = {}", t.k),
            t.sign_changes as f64,
            0.0,
            Provenance::Reference,
        ));
    }
    Ok(())
}

pub(super) fn moment_tomography(ctx: &mut Ctx, params: &Params) -> Result<(), DemoError> {
    const HERMITE_MAX: usize = 6;
    const TABLE_DEGREE: u32 = 4;
    const DISTINGUISH_DEGREE: u32 = 6;
    let grid = params.grid(12.0, 1024)?;
    ctx.param("grid", &[grid.half_width(), grid.len() as f64]);
    ctx.param("hermite_orders", &(0..=HERMITE_MAX).collect::<Vec<_>>());
    ctx.param("table_degree", &TABLE_DEGREE);
    ctx.param("distinguish_degree", &DISTINGUISH_DEGREE);

    let gaussian = AnalyticProfile::Gaussian.sample(&grid)?;
    let t = moment_fingerprint(&gaussian, 2)?;
    for (n, m, exact) in [(0, 0, 1.0), (1, 0, 0.0), (2, 0, 0.5), (0, 2, 0.5)] {
        let v = t.get(n, m).expect("entry present");
        ctx.check(Check::within(format!("gaussian entry ({n},{m})"), exact, v, 1e-10, Provenance::ClosedForm));
    }
    ctx.check(Check::equals(
        "gaussian against itself",
        "Indistinguishable",
        match moment_distinguish(&gaussian, &gaussian, DISTINGUISH_DEGREE)? {
            Distinction::Indistinguishable { .. } => "Indistinguishable",
            Distinction::Separated { .. } => "Separated",
        },
        Provenance::Identity,
    ));

    let states = (0..=HERMITE_MAX).map(|n| AnalyticProfile::Hermite(n).sample(&grid)).collect::<Result<Vec<_>, _>>()?;
    let x2 = PolynomialObservable::position(2)?;
    let p2 = PolynomialObservable::momentum(2)?;
    for (n, s) in states.iter().enumerate() {
        let exact = n as f64 + 0.5;
        ctx.check(Check::within(
            format!("hermite({n}) <X^2>"),
            exact,
            expectation(s, x2)?.value,
            1e-8,
            Provenance::ClosedForm,
        ));
        ctx.check(Check::within(
            format!("hermite({n}) <P^2>"),
            exact,
            expectation(s, p2)?.value,
            1e-8,
            Provenance::ClosedForm,
        ));
    }
    let tables = states.iter().map(|s| moment_fingerprint(s, TABLE_DEGREE)).collect::<Result<Vec<_>, _>>()?;
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            let gap = tables[i]
                .entries
                .iter()
                .zip(&tables[j].entries)
                .map(|(a, b)| (a.value - b.value).abs())
                .fold(0.0, f64::max);
            ctx.check(Check::above(
                format!("hermite({i}) vs hermite({j}) max table gap"),
                gap,
                0.1,
                Provenance::ClosedForm,
            ));
            let separated = matches!(
                moment_distinguish(&states[i], &states[j], DISTINGUISH_DEGREE)?,
                Distinction::Separated { .. }
            );
            ctx.check(Check::holds(
                format!("hermite({i}) vs hermite({j}) separated"),
                separated,
                Provenance::ClosedForm,
            ));
        }
    }
    Ok(())
}
