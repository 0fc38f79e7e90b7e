use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use wavelab_core::math::special::erf;
use wavelab_core::observables::{classify_divergence, truncation_sweep, PolynomialObservable, SweepConfig, Verdict};
use wavelab_core::transforms::{
    evolution_map, evolve_and_track, gauss_to_cauchy_map, induced_unitary_apply, monotonicity_threshold,
    pushforward_density_check, quarter_period_times, unitarity_check, Certificate,
};
use wavelab_core::{AnalyticProfile, Grid};

use super::{Ctx, DemoError, Params};
use crate::report::{Check, CsvSeries, Provenance};

const SWEEP_RADII: [f64; 4] = [8.0, 16.0, 32.0, 64.0];

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Convergent { .. } => "Convergent",
        Verdict::Divergent { .. } => "Divergent",
        Verdict::Undetermined => "Undetermined",
    }
}

/// `(2/pi)(L - atan L)`: second moment of the Cauchy density on `[-L, L]`.
pub(crate) fn cauchy_truncated_second_moment(l: f64) -> f64 {
    2.0 / PI * (l - l.atan())
}

pub(super) fn gauss_to_cauchy(ctx: &mut Ctx, params: &Params) -> Result<(), DemoError> {
    let source_grid = Grid::new(8.0, 2048)?;
    let target = params.grid(20.0, 2048)?;
    ctx.param("source_grid", &[source_grid.half_width(), source_grid.len() as f64]);
    ctx.param("target_grid", &[target.half_width(), target.len() as f64]);
    ctx.param("cdf_points", &[0.5, 1.0, 1.5, 2.0]);
    ctx.param("sweep_radii", &SWEEP_RADII);
    ctx.param("sweep_dx", &SweepConfig::default().dx);

    let f = gauss_to_cauchy_map()?;
    let psi = AnalyticProfile::Gaussian.sample(&source_grid)?;
    let out = induced_unitary_apply(&f, &psi, &target)?;
    let cauchy = AnalyticProfile::CauchySqrt.sample(&target)?;
    ctx.check(Check::at_most("L2 distance to Cauchy profile", out.sub(&cauchy)?.norm(), 1e-4, Provenance::ClosedForm));
    let worst = out.samples().iter().zip(cauchy.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    ctx.check(Check::at_most("pointwise distance to Cauchy profile", worst, 1e-4, Provenance::ClosedForm));

    let u = unitarity_check(&f, &psi, &target)?;
    ctx.check(Check::at_most("norm defect against preimage window", u.defect, 1e-4, Provenance::Identity));
    let l = target.half_width();
    ctx.check(Check::within(
        "window mass (2/pi) atan L",
        2.0 / PI * l.atan(),
        u.output_norm.powi(2),
        1e-4,
        Provenance::ClosedForm,
    ));
    for p in pushforward_density_check(&f, &psi, &[0.5, 1.0, 1.5, 2.0])? {
        ctx.check(Check::within(
            format!("pushed mass on [0, f({})]", p.x),
            0.5 * erf(p.x),
            p.pushed,
            1e-4,
            Provenance::ClosedForm,
        ));
    }

    let x2 = PolynomialObservable::position(2)?;
    let config = SweepConfig::default();
    let sweep = truncation_sweep(&AnalyticProfile::CauchySqrt, x2, &SWEEP_RADII, &config)?;
    let mut csv = CsvSeries::new("cauchy_x2_sweep.csv", &["L", "estimate"]);
    for p in &sweep.points {
        let exact = cauchy_truncated_second_moment(p.radius);
        ctx.check(Check::within(
            format!("Cauchy <X^2> at L = {}", p.radius),
            exact,
            p.estimate,
            0.02 * exact,
            Provenance::ClosedForm,
        ));
        csv.push(vec![p.radius, p.estimate]);
    }
    ctx.series(csv);
    let v = classify_divergence(&sweep)?.verdict;
    ctx.check(Check::equals("Cauchy <X^2> verdict", "Divergent", verdict_name(&v), Provenance::ClosedForm));
    if let Verdict::Divergent { growth_exponent } = v {
        ctx.check(Check::within("Cauchy <X^2> growth exponent", 1.0, growth_exponent, 0.1, Provenance::ClosedForm));
    }

    let sweep = truncation_sweep(&AnalyticProfile::Gaussian, x2, &SWEEP_RADII, &config)?;
    let mut csv = CsvSeries::new("gaussian_x2_sweep.csv", &["L", "estimate"]);
    for p in &sweep.points {
        csv.push(vec![p.radius, p.estimate]);
    }
    ctx.series(csv);
    let v = classify_divergence(&sweep)?.verdict;
    ctx.check(Check::equals("Gaussian <X^2> verdict", "Convergent", verdict_name(&v), Provenance::ClosedForm));
    if let Verdict::Convergent { limit } = v {
        ctx.check(Check::within("Gaussian <X^2> limit", 0.5, limit, 1e-4, Provenance::ClosedForm));
    }
    Ok(())
}

pub(super) fn evolution_sweep(ctx: &mut Ctx) -> Result<(), DemoError> {
    let omega = 1.0;
    let times = [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2];
    let x2 = PolynomialObservable::position(2)?;
    let config = SweepConfig::default();
    ctx.param("omega", &omega);
    ctx.param("times", &times);
    ctx.param("sweep_radii", &SWEEP_RADII);
    ctx.param("sweep_dx", &config.dx);
    ctx.param("certificate_times", &33);

    let track = evolve_and_track(omega, AnalyticProfile::Gaussian, &times, &[x2], &SWEEP_RADII, &config)?;
    let mut csv = CsvSeries::new("evolution_x2.csv", &["t", "estimate", "L"]);
    for point in &track {
        let dv = &point.verdicts[0].1;
        for p in &dv.sweep.points {
            csv.push(vec![point.t, p.estimate, p.radius]);
        }
        // Only t = 0 keeps Gaussian tails; every t > 0 leaves an s / y^2 tail.
        let expected = if point.t == 0.0 { "Convergent" } else { "Divergent" };
        ctx.check(Check::equals(
            format!("<X^2> verdict at t = {:.6}", point.t),
            expected,
            verdict_name(&dv.verdict),
            Provenance::ClosedForm,
        ));
        if let (0.0, Verdict::Convergent { limit }) = (point.t, dv.verdict) {
            ctx.check(Check::within("<X^2> limit at t = 0", 0.5, limit, 1e-4, Provenance::ClosedForm));
        }
    }
    ctx.series(csv);

    let certified = quarter_period_times(omega, 33)
        .into_iter()
        .map(|t| evolution_map(omega, t).map(|f| f.certificate().is_monotone()))
        .collect::<Result<Vec<_>, _>>()?;
    ctx.check(Check::equals(
        "monotone certificates on [0, pi/2]",
        certified.len(),
        certified.iter().filter(|m| **m).count(),
        Provenance::ClosedForm,
    ));
    match evolution_map(omega, PI)?.certificate() {
        Certificate::NonMonotone { witness, derivative } => {
            ctx.check(Check::holds("certificate at t = pi is NonMonotone", true, Provenance::ClosedForm));
            ctx.check(Check::at_most(
                format!("derivative at witness x = {witness}"),
                derivative,
                1e-12,
                Provenance::ClosedForm,
            ));
        }
        other => ctx.check(Check::equals(
            "certificate at t = pi is NonMonotone",
            "NonMonotone".to_string(),
            format!("{other:?}"),
            Provenance::ClosedForm,
        )),
    }
    let threshold = monotonicity_threshold();
    ctx.param("monotonicity_threshold", &threshold);
    ctx.check(Check::holds(
        "monotone just below pi - atan(1/sqrt(pi))",
        evolution_map(omega, 0.99 * threshold)?.certificate().is_monotone(),
        Provenance::ClosedForm,
    ));
    ctx.check(Check::holds(
        "non-monotone just above pi - atan(1/sqrt(pi))",
        !evolution_map(omega, 1.01 * threshold)?.certificate().is_monotone(),
        Provenance::ClosedForm,
    ));
    Ok(())
}
