//! Finite-window evidence for Schwartz-class behavior: seminorm batteries,
//! sequence convergence in seminorms, Fourier closure, moment separation, and
//! the smoothly truncated Cauchy sequence that converges in norm while its
//! second moment runs away.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{simpson_interval, Grid, GridWavefunction};
use crate::observables::{
    expectation, fingerprint_indices, least_squares_slope, moment_fingerprint, PolynomialObservable,
};
use crate::profile::{smooth_step, AnalyticProfile, Sampler};

pub const MAX_SEMINORM_INDEX: u32 = 8;

/// `sup_k |x_k^a (d/dx)^b psi(x_k)|` on one grid.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeminormEstimate {
    pub a: u32,
    pub b: u32,
    pub value: f64,
    pub radius: f64,
}

pub fn seminorm(psi: &GridWavefunction, a: u32, b: u32) -> Result<SeminormEstimate> {
    let d = weighted_derivative(psi, a, b)?;
    Ok(SeminormEstimate { a, b, value: d.sup_norm(), radius: psi.grid().half_width() })
}

/// `||x^a (d/dx)^b psi||` in L2; the expectation-style counterpart of [`seminorm`].
pub fn moment_norm(psi: &GridWavefunction, a: u32, b: u32) -> Result<f64> {
    Ok(weighted_derivative(psi, a, b)?.norm())
}

fn weighted_derivative(psi: &GridWavefunction, a: u32, b: u32) -> Result<GridWavefunction> {
    if a > MAX_SEMINORM_INDEX || b > MAX_SEMINORM_INDEX {
        return Err(Error::Precondition(alloc::format!("seminorm index ({a}, {b}) above {MAX_SEMINORM_INDEX}")));
    }
    let d = resolved_derivative(psi, b)?;
    Ok(d.map(|x, z| z * x.powi(a as i32)))
}

/// Spectral derivative with samples below its noise floor set to zero, so
/// far-field roundoff is not amplified by powers of `x`.
pub fn resolved_derivative(psi: &GridWavefunction, b: u32) -> Result<GridWavefunction> {
    let d = psi.derivative(b as usize)?;
    let floor = psi.derivative_noise_floor(b as usize);
    Ok(d.map(|_, z| if z.norm() <= floor { Complex64::new(0.0, 0.0) } else { z }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BatteryConfig {
    /// Grid spacing, held fixed across radii.
    pub dx: f64,
    /// Largest relative change over the last two radii still called stable.
    pub stability_tolerance: f64,
    /// Growth factor (last over first) that marks a non-Schwartz witness.
    pub growth_factor: f64,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self { dx: 0.25, stability_tolerance: 1e-3, growth_factor: 10.0 }
    }
}

impl BatteryConfig {
    /// Default settings, with the spacing refined for compactly supported
    /// profiles whose spectra decay too slowly for a quarter-unit grid.
    pub fn resolving(profile: &AnalyticProfile) -> Self {
        match *profile {
            AnalyticProfile::Bump { radius } => Self { dx: radius / 256.0, ..Self::default() },
            _ => Self::default(),
        }
    }
}

pub const DEFAULT_RADII: [f64; 5] = [8.0, 16.0, 32.0, 64.0, 128.0];
pub const DEFAULT_MAX_INDEX: u32 = 4;

/// One `(a, b)` row of a battery.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeminormRow {
    pub a: u32,
    pub b: u32,
    /// Sup seminorm at each radius.
    pub values: Vec<f64>,
    /// L2 norm of `x^a psi^(b)` at each radius.
    pub norms: Vec<f64>,
    pub stable: bool,
    /// Nondecreasing across the sweep with total growth above the factor.
    pub growing: bool,
    pub norms_stable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SchwartzVerdict {
    SchwartzLike,
    NotSchwartz { a: u32, b: u32 },
    Undetermined,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchwartzReport {
    pub radii: Vec<f64>,
    pub max_index: u32,
    pub rows: Vec<SeminormRow>,
    /// Verdict from the sup seminorms.
    pub verdict: SchwartzVerdict,
    /// Verdict from the L2 norms `||x^a psi^(b)||`, recorded for comparison.
    pub norm_verdict: SchwartzVerdict,
}

impl SchwartzReport {
    pub fn row(&self, a: u32, b: u32) -> Option<&SeminormRow> {
        self.rows.iter().find(|r| r.a == a && r.b == b)
    }
}

/// Run the seminorm battery for `a, b <= max_index` over the radius sweep.
pub fn classify_schwartz<S: Sampler + ?Sized>(
    sampler: &S,
    max_index: u32,
    radii: &[f64],
    config: &BatteryConfig,
) -> Result<SchwartzReport> {
    check_battery_args(radii, max_index)?;
    let states =
        radii.iter().map(|&r| sampler.sample_on(&Grid::with_spacing(r, config.dx)?)).collect::<Result<Vec<_>>>()?;
    battery(radii, max_index, config, |i, b| resolved_derivative(&states[i], b))
}

/// Battery core: `derivative(i, b)` yields the order-`b` derivative on the
/// grid for `radii[i]`.
fn battery(
    radii: &[f64],
    max_index: u32,
    config: &BatteryConfig,
    mut derivative: impl FnMut(usize, u32) -> Result<GridWavefunction>,
) -> Result<SchwartzReport> {
    let mut rows = Vec::new();
    for b in 0..=max_index {
        let derivs = (0..radii.len()).map(|i| derivative(i, b)).collect::<Result<Vec<_>>>()?;
        for a in 0..=max_index {
            let weighted: Vec<GridWavefunction> = derivs.iter().map(|d| d.map(|x, z| z * x.powi(a as i32))).collect();
            let values: Vec<f64> = weighted.iter().map(|w| w.sup_norm()).collect();
            let norms: Vec<f64> = weighted.iter().map(|w| w.norm()).collect();
            rows.push(SeminormRow {
                a,
                b,
                stable: is_stable(&values, config.stability_tolerance),
                growing: is_growing(&values, config.growth_factor),
                norms_stable: is_stable(&norms, config.stability_tolerance),
                values,
                norms,
            });
        }
    }
    rows.sort_by_key(|r| (r.a + r.b, r.b, r.a));
    let verdict = verdict_from(&rows, |r| (r.stable, r.growing));
    let norm_verdict = verdict_from(&rows, |r| (r.norms_stable, is_growing(&r.norms, config.growth_factor)));
    Ok(SchwartzReport { radii: radii.to_vec(), max_index, rows, verdict, norm_verdict })
}

fn check_battery_args(radii: &[f64], max_index: u32) -> Result<()> {
    if radii.len() < 3 || radii.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidSweep("need at least 3 strictly increasing radii".into()));
    }
    if max_index > MAX_SEMINORM_INDEX {
        return Err(Error::Precondition(alloc::format!("max_index {max_index} above {MAX_SEMINORM_INDEX}")));
    }
    Ok(())
}

/// Battery on the Fourier transform of `profile`, with wavenumber radii and
/// spacing `config.dx`. Derivatives in `k` come from the identity
/// `d^b/dk^b F psi = F[(-ix)^b psi]` rather than spectral differentiation,
/// which would see the truncation of slowly decaying transforms at the band edge.
pub fn classify_fourier_image(
    profile: AnalyticProfile,
    max_index: u32,
    radii: &[f64],
    config: &BatteryConfig,
) -> Result<SchwartzReport> {
    check_battery_args(radii, max_index)?;
    profile.validate()?;
    let image = FourierImage::new(profile);
    let grids = radii.iter().map(|&r| Grid::with_spacing(r, config.dx)).collect::<Result<Vec<_>>>()?;
    battery(radii, max_index, config, |i, b| image.derivative_on(&grids[i], b))
}

fn is_stable(values: &[f64], tol: f64) -> bool {
    let n = values.len();
    let (prev, last) = (values[n - 2], values[n - 1]);
    let scale = last.abs().max(prev.abs());
    scale == 0.0 || (last - prev).abs() <= tol * scale
}

fn is_growing(values: &[f64], factor: f64) -> bool {
    values.windows(2).all(|w| w[1] >= w[0]) && values[0] > 0.0 && values[values.len() - 1] > factor * values[0]
}

/// Rows are pre-sorted by total degree, so the first growing row is the
/// lowest-degree witness.
fn verdict_from(rows: &[SeminormRow], flags: impl Fn(&SeminormRow) -> (bool, bool)) -> SchwartzVerdict {
    if rows.iter().all(|r| flags(r).0) {
        return SchwartzVerdict::SchwartzLike;
    }
    match rows.iter().find(|r| flags(r).1) {
        Some(r) => SchwartzVerdict::NotSchwartz { a: r.a, b: r.b },
        None => SchwartzVerdict::Undetermined,
    }
}

/// Per-index convergence of a sequence in one seminorm.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GapRow {
    pub a: u32,
    pub b: u32,
    /// `seminorm(psi_{i+1} - psi_i)`.
    pub gaps: Vec<f64>,
    pub decreasing: bool,
    /// Last gap at or below the tolerance.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrechetTable {
    pub rows: Vec<GapRow>,
    /// `||psi_{i+1} - psi_i||` in L2.
    pub l2_gaps: Vec<f64>,
    /// Largest change in any moment-fingerprint entry between successive terms.
    pub moment_gaps: Vec<f64>,
    pub moments_converged: bool,
    pub tolerance: f64,
}

impl FrechetTable {
    pub fn row(&self, a: u32, b: u32) -> Option<&GapRow> {
        self.rows.iter().find(|r| r.a == a && r.b == b)
    }

    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged) && self.moments_converged
    }
}

pub const FRECHET_TOLERANCE: f64 = 1e-4;

/// Successive seminorm gaps for every `a, b <= max_index`, plus L2 and
/// moment-fingerprint gaps (fingerprint degree `max_index`).
pub fn frechet_converges(sequence: &[GridWavefunction], max_index: u32) -> Result<FrechetTable> {
    if sequence.len() < 4 {
        return Err(Error::InvalidSweep(alloc::format!("need at least 4 terms, got {}", sequence.len())));
    }
    let diffs = sequence.windows(2).map(|w| w[1].sub(&w[0])).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for a in 0..=max_index {
        for b in 0..=max_index {
            let gaps = diffs.iter().map(|d| seminorm(d, a, b).map(|s| s.value)).collect::<Result<Vec<_>>>()?;
            rows.push(GapRow {
                a,
                b,
                decreasing: gaps.windows(2).all(|w| w[1] < w[0]),
                converged: gaps[gaps.len() - 1] <= FRECHET_TOLERANCE,
                gaps,
            });
        }
    }
    let l2_gaps = diffs.iter().map(|d| d.norm()).collect();
    let tables = sequence.iter().map(|s| moment_fingerprint(s, max_index)).collect::<Result<Vec<_>>>()?;
    let moment_gaps: Vec<f64> = tables
        .windows(2)
        .map(|w| w[0].entries.iter().zip(&w[1].entries).map(|(p, q)| (p.value - q.value).abs()).fold(0.0, f64::max))
        .collect();
    let moments_converged = moment_gaps[moment_gaps.len() - 1] <= FRECHET_TOLERANCE;
    Ok(FrechetTable { rows, l2_gaps, moment_gaps, moments_converged, tolerance: FRECHET_TOLERANCE })
}

/// Smoothly truncated, renormalized Cauchy-profile states on a common grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TruncatedSequence {
    pub cutoffs: Vec<f64>,
    pub width: f64,
    pub states: Vec<GridWavefunction>,
}

/// Taper equal to 1 on `|x| <= n - w`, 0 on `|x| >= n`, smooth in between.
pub fn taper(x: f64, n: f64, w: f64) -> f64 {
    1.0 - smooth_step((x.abs() - (n - w)) / w)
}

/// Grid used by default for a sequence: spacing 1/16, half-width past the
/// largest cutoff.
pub fn sequence_grid(cutoffs: &[f64], width: f64) -> Result<Grid> {
    let top = cutoffs.iter().cloned().fold(0.0, f64::max);
    Grid::with_spacing(top + width + 16.0, 1.0 / 16.0)
}

pub fn build_truncated_sequence(cutoffs: &[f64], width: f64, grid: &Grid) -> Result<TruncatedSequence> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::Precondition(alloc::format!("smoothing width {width} must be positive")));
    }
    if width < 4.0 * grid.dx() {
        return Err(Error::UnresolvedTaper { width, dx: grid.dx() });
    }
    if cutoffs.is_empty() || cutoffs.windows(2).any(|p| !(p[1] > p[0])) || cutoffs[0] <= width {
        return Err(Error::InvalidSweep("cutoffs must increase and exceed the smoothing width".into()));
    }
    let top = cutoffs[cutoffs.len() - 1];
    if top + width > grid.half_width() {
        return Err(Error::InvalidSweep(alloc::format!(
            "cutoff {top} plus width {width} exceeds grid half-width {}",
            grid.half_width()
        )));
    }
    let states = cutoffs
        .iter()
        .map(|&n| {
            GridWavefunction::from_real_fn(*grid, |x| AnalyticProfile::CauchySqrt.evaluate_real(x) * taper(x, n, width))
                .normalize()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSequence { cutoffs: cutoffs.to_vec(), width, states })
}

/// Norm versus moment behavior of a [`TruncatedSequence`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SequenceAnalysis {
    /// `||psi_{i+1} - psi_i||`.
    pub l2_gaps: Vec<f64>,
    /// Tail mass `2 / (pi n_i)` of the untruncated profile beyond `n_i`.
    pub tail_masses: Vec<f64>,
    /// `l2_gaps[i]^2 / tail_masses[i]`.
    pub gap_ratios: Vec<f64>,
    pub gaps_decreasing: bool,
    pub second_moments: Vec<f64>,
    /// `(2/pi)(n - atan n)`.
    pub closed_form_moments: Vec<f64>,
    /// Least-squares slope of `ln <X^2>` against `ln n`.
    pub moment_exponent: f64,
    pub norms: Vec<f64>,
    /// Smallest cutoff at which the asymptotic gap `sqrt(1/(pi n))` between
    /// `n` and `2n` falls below `1e-3`.
    pub predicted_cauchy_cutoff: f64,
}

pub fn analyze_truncated_sequence(seq: &TruncatedSequence) -> Result<SequenceAnalysis> {
    let l2_gaps: Vec<f64> = seq.states.windows(2).map(|w| w[1].sub(&w[0]).map(|d| d.norm())).collect::<Result<_>>()?;
    let tail_masses: Vec<f64> = seq.cutoffs[..seq.cutoffs.len() - 1].iter().map(|n| 2.0 / (PI * n)).collect();
    let gap_ratios = l2_gaps.iter().zip(&tail_masses).map(|(g, t)| g * g / t).collect();
    let x2 = PolynomialObservable::position(2)?;
    let second_moments: Vec<f64> =
        seq.states.iter().map(|s| expectation(s, x2).map(|e| e.value)).collect::<Result<_>>()?;
    let closed_form_moments = seq.cutoffs.iter().map(|n| 2.0 / PI * (n - n.atan())).collect();
    let ln_n: Vec<f64> = seq.cutoffs.iter().map(|n| n.ln()).collect();
    let ln_m: Vec<f64> = second_moments.iter().map(|m| m.ln()).collect();
    Ok(SequenceAnalysis {
        gaps_decreasing: l2_gaps.windows(2).all(|w| w[1] < w[0]),
        l2_gaps,
        tail_masses,
        gap_ratios,
        moment_exponent: least_squares_slope(&ln_n, &ln_m),
        second_moments,
        closed_form_moments,
        norms: seq.states.iter().map(|s| s.norm()).collect(),
        predicted_cauchy_cutoff: 1.0 / (PI * 1e-6),
    })
}

/// Samples the unitary Fourier transform of an analytic profile on a
/// requested wavenumber grid. The profile is sampled on a position grid of
/// half-width `pi / dk`, oversampled until its spacing is at most
/// `max_source_dx`, transformed, and cropped to the requested band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierImage {
    pub profile: AnalyticProfile,
    pub max_source_dx: f64,
}

impl FourierImage {
    pub fn new(profile: AnalyticProfile) -> Self {
        Self { profile, max_source_dx: BatteryConfig::resolving(&profile).dx }
    }
}

impl FourierImage {
    /// `d^b/dk^b` of the transform on `k_grid`, as the transform of `(-ix)^b psi`.
    pub fn derivative_on(&self, k_grid: &Grid, b: u32) -> Result<GridWavefunction> {
        let n = k_grid.len();
        let mut m = 1;
        while PI / (m as f64 * k_grid.half_width()) > self.max_source_dx {
            m *= 2;
        }
        let dx = PI / (m as f64 * k_grid.half_width());
        let x_grid = Grid::new((m * n) as f64 * dx / 2.0, m * n)?;
        let factor = |x: f64| Complex64::new(0.0, -x).powu(b);
        let source = self.profile.sample(&x_grid)?.map(|x, z| z * factor(x));
        let transformed = source.fourier_transform().into_samples();
        let offset = (m - 1) * n / 2;
        GridWavefunction::new(*k_grid, transformed[offset..offset + n].to_vec())
    }
}

impl Sampler for FourierImage {
    fn sample_on(&self, k_grid: &Grid) -> Result<GridWavefunction> {
        self.derivative_on(k_grid, 0)
    }
}

/// Magnitude of a transform at large wavenumber, cross-checked by direct quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TailSample {
    pub k: f64,
    /// Largest `|F psi|` over `[k - 2, k + 2]` on the transform grid.
    pub spectral: f64,
    /// Same window maximum from direct quadrature of the closed form.
    pub quadrature: f64,
    /// Sign changes of `Re F psi` over the window.
    pub sign_changes: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FourierClosureReport {
    pub profile: AnalyticProfile,
    /// Battery run on the transform.
    pub transform: SchwartzReport,
    /// `||F h_n - (-i)^n h_n||` for Hermite inputs.
    pub eigen_residual: Option<f64>,
    /// Large-k samples for compactly supported inputs.
    pub tails: Vec<TailSample>,
}

/// Wavenumbers probed for transform tails.
pub const TAIL_WAVENUMBERS: [f64; 5] = [10.0, 20.0, 40.0, 80.0, 160.0];

pub fn fourier_closure_check(
    profile: AnalyticProfile,
    max_index: u32,
    config: &BatteryConfig,
) -> Result<FourierClosureReport> {
    profile.validate()?;
    let transform = classify_fourier_image(profile, max_index, &DEFAULT_RADII, config)?;

    let eigen_residual = match profile {
        AnalyticProfile::Gaussian | AnalyticProfile::Hermite(_) => {
            let n = match profile {
                AnalyticProfile::Hermite(n) => n,
                _ => 0,
            };
            let g = Grid::new(16.0, 1024)?;
            let h = profile.sample(&g)?;
            let f = h.fourier_transform();
            let phase = Complex64::new(0.0, -1.0).powu(n as u32);
            let expected = GridWavefunction::from_fn(*f.grid(), |k| profile.evaluate(k) * phase);
            Some(f.sub(&expected)?.norm())
        }
        _ => None,
    };

    let tails = match profile {
        AnalyticProfile::Bump { radius } => transform_tails(radius)?,
        _ => Vec::new(),
    };
    Ok(FourierClosureReport { profile, transform, eigen_residual, tails })
}

fn transform_tails(radius: f64) -> Result<Vec<TailSample>> {
    let profile = AnalyticProfile::Bump { radius };
    // Resolve wavenumbers up to ~2x the largest probe.
    let dx = PI / (2.0 * TAIL_WAVENUMBERS[TAIL_WAVENUMBERS.len() - 1]);
    let grid = Grid::with_spacing(16.0 * radius, dx)?;
    let f = profile.sample(&grid)?.fourier_transform();
    let kg = *f.grid();
    TAIL_WAVENUMBERS
        .iter()
        .map(|&k| {
            let (mut spectral, mut quadrature): (f64, f64) = (0.0, 0.0);
            let mut signs = Vec::new();
            for (j, kj) in kg.points().enumerate() {
                if (kj - k).abs() <= 2.0 {
                    spectral = spectral.max(f.samples()[j].norm());
                    signs.push(f.samples()[j].re);
                    // The bump is even, so its transform is (2/sqrt(2 pi)) int_0^r cos(kx) psi dx.
                    let q = simpson_interval(0.0, radius, 20_000, |x| (kj * x).cos() * profile.evaluate_real(x)) * 2.0
                        / (2.0 * PI).sqrt();
                    quadrature = quadrature.max(q.abs());
                }
            }
            let sign_changes = signs.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
            Ok(TailSample { k, spectral, quadrature, sign_changes })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Distinction {
    /// First fingerprint entry (in degree order) differing by more than the tolerance.
    Separated {
        n: u32,
        m: u32,
        gap: f64,
        left: f64,
        right: f64,
    },
    Indistinguishable {
        max_gap: f64,
    },
}

pub const DISTINGUISH_TOLERANCE: f64 = 1e-4;

pub fn moment_distinguish(
    left: &GridWavefunction,
    right: &GridWavefunction,
    max_total_degree: u32,
) -> Result<Distinction> {
    left.inner_product(right)?; // grid check
    let mut max_gap: f64 = 0.0;
    for (n, m) in fingerprint_indices(max_total_degree) {
        let obs = PolynomialObservable::new(n, m)?;
        let l = expectation(left, obs)?.value;
        let r = expectation(right, obs)?.value;
        let gap = (l - r).abs();
        if gap > DISTINGUISH_TOLERANCE {
            return Ok(Distinction::Separated { n, m, gap, left: l, right: r });
        }
        max_gap = max_gap.max(gap);
    }
    Ok(Distinction::Indistinguishable { max_gap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seminorm_examples() {
        let g = Grid::new(8.0, 1024).unwrap();
        let gauss = AnalyticProfile::Gaussian.sample(&g).unwrap();
        assert!((seminorm(&gauss, 0, 0).unwrap().value - PI.powf(-0.25)).abs() < 1e-12);
        let bump = AnalyticProfile::Bump { radius: 1.0 }.sample(&g).unwrap();
        let s = seminorm(&bump, 5, 0).unwrap();
        assert!(s.value > 0.0 && s.value < 1.0);
        assert!(seminorm(&gauss, 9, 0).is_err());
    }

    #[test]
    fn cauchy_seminorm_grows_linearly() {
        let values: Vec<f64> = [8.0, 16.0, 32.0]
            .iter()
            .map(|&l| {
                let psi = AnalyticProfile::CauchySqrt.sample(&Grid::with_spacing(l, 0.25).unwrap()).unwrap();
                seminorm(&psi, 2, 0).unwrap().value
            })
            .collect();
        for (v, l) in values.iter().zip([8.0f64, 16.0, 32.0]) {
            let exact = l * l / (PI * (l * l + 1.0)).sqrt();
            assert!((v - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn taper_shape() {
        assert_eq!(taper(0.0, 8.0, 1.0), 1.0);
        assert_eq!(taper(7.0, 8.0, 1.0), 1.0);
        assert_eq!(taper(-8.0, 8.0, 1.0), 0.0);
        assert!((taper(7.5, 8.0, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sequence_preconditions() {
        let g = sequence_grid(&[8.0, 16.0], 1.0).unwrap();
        assert!(matches!(build_truncated_sequence(&[8.0, 16.0], 0.1, &g), Err(Error::UnresolvedTaper { .. })));
        assert!(build_truncated_sequence(&[16.0, 8.0], 1.0, &g).is_err());
        assert!(build_truncated_sequence(&[8.0, 400.0], 1.0, &g).is_err());
    }

    #[test]
    fn distinguish_is_grid_checked() {
        let a = AnalyticProfile::Gaussian.sample(&Grid::new(8.0, 256).unwrap()).unwrap();
        let b = AnalyticProfile::Gaussian.sample(&Grid::new(8.0, 512).unwrap()).unwrap();
        assert!(matches!(moment_distinguish(&a, &b, 2), Err(Error::GridMismatch { .. })));
    }
}
