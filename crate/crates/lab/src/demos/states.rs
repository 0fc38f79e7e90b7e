use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;
use wavelab_core::math::linalg::CMatrix;
use wavelab_core::mixtures::random::{common_mixture_pair, decomposition, density, pure_state, seeded, spanned_state};
use wavelab_core::mixtures::{
    decompose_including, density_from_mixture, entropy_from_overlap, equal_mixture_entropy, rescale_decomposition,
    spans_equal_via_mixture, verify_span_from_decompositions, verify_superposition_duality, DensityMatrix, PureState,
};
use wavelab_core::{Complex64, Error};

use super::{Ctx, DemoError, Params};
use crate::report::{Check, Provenance};

const ENTROPY_PAIRS: usize = 1000;
const ENTROPY_DIMS: [usize; 3] = [2, 3, 8];

pub(super) fn entropy_overlap(ctx: &mut Ctx, params: &Params) -> Result<(), DemoError> {
    ctx.param("pairs", &ENTROPY_PAIRS);
    ctx.param("dims", &ENTROPY_DIMS);
    ctx.param("entropy_units", "nats");
    let mut rng = seeded(params.seed);
    for i in 0..ENTROPY_PAIRS {
        let d = ENTROPY_DIMS[i % ENTROPY_DIMS.len()];
        let psi = pure_state(d, &mut rng)?;
        let phi = pure_state(d, &mut rng)?;
        let p = psi.overlap(&phi)?.norm().min(1.0);
        ctx.check(Check::within(
            format!("pair {i:04} (d = {d})"),
            entropy_from_overlap(p)?,
            equal_mixture_entropy(&psi, &phi)?,
            1e-9,
            Provenance::ClosedForm,
        ));
    }
    Ok(())
}

/// Smallest `1 - |<psi|phi_i>|` over the given states: zero iff `psi` lies on one of their rays.
fn ray_separation(psi: &PureState, phis: &[PureState]) -> Result<f64, Error> {
    let mut best = f64::INFINITY;
    for phi in phis {
        best = best.min(1.0 - psi.overlap(phi)?.norm());
    }
    Ok(best)
}

pub(super) fn mixture_duality(ctx: &mut Ctx, params: &Params) -> Result<(), DemoError> {
    const RANDOM: usize = 200;
    ctx.param("qubit_psi", "(e1 + e2)/sqrt(2)");
    ctx.param("random_instances", &RANDOM);
    ctx.param("random_dim", &4);

    let e = [PureState::basis(2, 0)?, PureState::basis(2, 1)?];
    let plus = PureState::normalized(vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2])?;
    let w = verify_superposition_duality(&plus, &e)?;
    let half_identity = DensityMatrix::new(CMatrix::identity(2).scale(0.5))?;
    ctx.check(Check::at_most(
        "qubit: mixture equals I/2",
        w.rho.distance(&half_identity)?,
        1e-12,
        Provenance::ClosedForm,
    ));
    ctx.check(Check::at_most("qubit: reconstruction residual", w.reconstruction_residual, 1e-8, Provenance::Identity));
    ctx.check(Check::within("qubit: weight of psi", 0.5, w.through_psi.weights()[0], 1e-9, Provenance::ClosedForm));
    ctx.check(Check::within(
        "qubit: decomposition contains psi",
        1.0,
        w.through_psi.states()[0].overlap(&plus)?.norm(),
        1e-12,
        Provenance::Identity,
    ));
    ctx.check(Check::above("qubit: decompositions distinct", ray_separation(&plus, &e)?, 1e-6, Provenance::Reference));

    let mut rng = seeded(params.seed);
    let (mut worst, mut min_weight, mut min_sep, mut worst_span) = (0.0f64, f64::INFINITY, f64::INFINITY, 0.0f64);
    for _ in 0..RANDOM {
        let k = rng.random_range(2..=4);
        let (psi, phis) = spanned_state(4, k, &mut rng)?;
        let w = verify_superposition_duality(&psi, &phis)?;
        worst = worst.max(w.reconstruction_residual);
        for x in w.over_given.weights().iter().chain(w.through_psi.weights()) {
            min_weight = min_weight.min(*x);
        }
        min_sep = min_sep.min(ray_separation(&psi, &phis)?);
        worst_span = worst_span.max(verify_span_from_decompositions(&psi, &w.over_given, &w.through_psi)?);
    }
    ctx.check(Check::at_most("random: max reconstruction residual", worst, 1e-8, Provenance::Identity));
    ctx.check(Check::above("random: min weight", min_weight, 0.0, Provenance::Reference));
    ctx.check(Check::above("random: min ray separation", min_sep, 0.0, Provenance::Reference));
    ctx.check(Check::at_most("random: max reverse span residual", worst_span, 1e-9, Provenance::Identity));
    Ok(())
}

pub(super) fn span_equality(ctx: &mut Ctx, params: &Params) -> Result<(), DemoError> {
    const PAIRS: usize = 500;
    const CONTROLS: usize = 20;
    ctx.param("pairs", &PAIRS);
    ctx.param("dims", "2..=6");
    ctx.param("controls", &CONTROLS);
    let mut rng = seeded(params.seed);
    let (mut equal, mut counterexamples, mut gap, mut pgap) = (0usize, 0usize, 0.0f64, 0.0f64);
    for t in 0..PAIRS {
        let d = 2 + t % 5;
        let k = 1 + rng.random_range(0..d);
        let (a, b) = common_mixture_pair(d, k, &mut rng)?;
        let r = spans_equal_via_mixture(&a, &b)?;
        equal += r.mixtures_equal as usize;
        counterexamples += !r.implication_holds() as usize;
        gap = gap.max(r.mixture_gap);
        pgap = pgap.max(r.projector_gap);
    }
    ctx.check(Check::equals("pairs certified as equal mixtures", PAIRS, equal, Provenance::Identity));
    ctx.check(Check::equals("counterexamples to mixture => span", 0, counterexamples, Provenance::Reference));
    ctx.check(Check::at_most("max mixture gap", gap, 1e-9, Provenance::Identity));
    ctx.check(Check::at_most("max projector gap", pgap, 1e-8, Provenance::Identity));

    let mut distinct = 0;
    for t in 0..CONTROLS {
        let d = 2 + t % 5;
        let a = decomposition(d, 1 + t % d, &mut rng)?;
        let b = decomposition(d, 1 + t % d, &mut rng)?;
        distinct += !spans_equal_via_mixture(&a, &b)?.mixtures_equal as usize;
    }
    ctx.check(Check::equals("unrelated controls with different mixtures", CONTROLS, distinct, Provenance::Reference));
    Ok(())
}

pub(super) fn decompose_through(ctx: &mut Ctx, params: &Params) -> Result<(), DemoError> {
    const INSTANCES: usize = 200;
    const DIMS: [usize; 3] = [2, 4, 8];
    const SUPPORT: f64 = 1e-3;
    ctx.param("instances", &INSTANCES);
    ctx.param("dims", &DIMS);
    ctx.param("min_support_expectation", &SUPPORT);
    ctx.param("mixture_terms", "dim + 1");
    let mut rng = seeded(params.seed);
    let (mut done, mut contains, mut worst, mut worst_sum) = (0usize, 0usize, 0.0f64, 0.0f64);
    while done < INSTANCES {
        let d = DIMS[done % DIMS.len()];
        let rho = density(d, d + 1, &mut rng)?;
        let psi = pure_state(d, &mut rng)?;
        if rho.expectation(&psi)? <= SUPPORT {
            continue;
        }
        let dec = decompose_including(&rho, &psi)?;
        contains += (dec.states()[0] == psi && dec.weights()[0] > 0.0) as usize;
        worst = worst.max(density_from_mixture(&dec)?.distance(&rho)?);
        worst_sum = worst_sum.max((dec.weights().iter().sum::<f64>() - 1.0).abs());
        done += 1;
    }
    ctx.check(Check::equals(
        "decompositions containing psi with positive weight",
        INSTANCES,
        contains,
        Provenance::Reference,
    ));
    ctx.check(Check::at_most("max Frobenius reconstruction error", worst, 1e-8, Provenance::Identity));
    ctx.check(Check::at_most("max weight-sum defect", worst_sum, 1e-12, Provenance::Identity));
    Ok(())
}

pub(super) fn vector_rescale(ctx: &mut Ctx) -> Result<(), DemoError> {
    let c = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let e = [PureState::basis(2, 0)?, PureState::basis(2, 1)?];
    let psi = PureState::normalized(vec![c, c])?;
    let terms = [(c, e[0].clone()), (c, e[1].clone())];
    let targets: [[Complex64; 2]; 5] = [
        [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
        [c, c],
        [c * 2.0, c * 2.0],
        [Complex64::new(0.0, 1.0), Complex64::new(-2.0, 0.0)],
        [Complex64::new(0.3, 0.7), Complex64::new(5.0, -1.0)],
    ];
    ctx.param("psi", "(e1 + e2)/sqrt(2)");
    ctx.param("coefficients", &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
    ctx.param("target_sets", &targets.iter().map(|t| t.map(|z| [z.re, z.im])).collect::<Vec<_>>());

    for (s, t) in targets.iter().enumerate() {
        let out = rescale_decomposition(&psi, &terms, t)?;
        let residual = psi
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(j, a)| (t[0] * out[0][j] + t[1] * out[1][j] - a).norm())
            .fold(0.0, f64::max);
        ctx.check(Check::at_most(format!("set {s}: reconstruction residual"), residual, 1e-10, Provenance::Identity));
        for (i, (hat, phi)) in out.iter().zip(&e).enumerate() {
            let norm = hat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let overlap: Complex64 = hat.iter().zip(phi.amplitudes()).map(|(a, b)| a.conj() * b / norm).sum();
            ctx.check(Check::within(
                format!("set {s}: term {i} on original ray"),
                1.0,
                overlap.norm(),
                1e-12,
                Provenance::Identity,
            ));
            ctx.check(Check::within(
                format!("set {s}: term {i} norm |c/c_hat|"),
                (c / t[i]).norm(),
                norm,
                1e-12,
                Provenance::ClosedForm,
            ));
        }
    }
    let zero = rescale_decomposition(&psi, &terms, &[Complex64::new(0.0, 0.0), c]);
    ctx.check(Check::equals(
        "zero target rejected",
        "target coefficient 0 is zero".to_string(),
        zero.err().map(|e| e.to_string()).unwrap_or_default(),
        Provenance::Reference,
    ));
    Ok(())
}
