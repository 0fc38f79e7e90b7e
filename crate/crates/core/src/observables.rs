//! Expectation values of symmetrized polynomial observables
//! `(X^n P^m + P^m X^n) / 2` and their behavior under growing truncation radius.

use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridWavefunction};
use crate::profile::Sampler;

/// Largest supported `n + m`.
pub const MAX_TOTAL_DEGREE: u32 = 12;

/// The observable `(X^n P^m + P^m X^n) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolynomialObservable {
    n: u32,
    m: u32,
}

impl PolynomialObservable {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n + m > MAX_TOTAL_DEGREE {
            return Err(Error::ObservableTooLarge { n, m });
        }
        Ok(Self { n, m })
    }

    /// `X^n`.
    pub fn position(n: u32) -> Result<Self> {
        Self::new(n, 0)
    }

    /// `P^m`.
    pub fn momentum(m: u32) -> Result<Self> {
        Self::new(0, m)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn total_degree(&self) -> u32 {
        self.n + self.m
    }
}

/// Result of a single expectation evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Expectation {
    /// Real part of the symmetrized bracket.
    pub value: f64,
    /// `|Im|` of the symmetrized bracket; small for resolved states.
    pub imaginary_residual: f64,
    /// The unsymmetrized bracket `<psi| X^n P^m |psi>`.
    pub unsymmetrized: Complex64,
    /// `int |x|^n |psi| |P^m psi| dx`, an upper bound for `|value|`.
    pub absolute: f64,
    /// Set when `m > 0` and the samples have not decayed at the grid edges,
    /// so the spectral derivative sees a periodic discontinuity.
    pub truncation_dominated: bool,
}

/// `<psi| (X^n P^m + P^m X^n)/2 |psi>` with `hbar = 1`.
///
/// The state is used as given; callers normalize when they want a
/// probability-weighted average.
pub fn expectation(psi: &GridWavefunction, obs: PolynomialObservable) -> Result<Expectation> {
    expectation_with_hbar(psi, obs, 1.0)
}

pub fn expectation_with_hbar(psi: &GridWavefunction, obs: PolynomialObservable, hbar: f64) -> Result<Expectation> {
    let grid = *psi.grid();
    let n = obs.n as i32;
    let m = obs.m as usize;
    // (-i hbar)^m
    let prefactor = Complex64::new(0.0, -hbar).powu(obs.m);

    if m == 0 {
        let a = grid.simpson(|k, x| psi.at(k).norm_sqr() * Complex64::new(x.powi(n), 0.0));
        let absolute = grid.simpson(|k, x| Complex64::new(x.abs().powi(n) * psi.at(k).norm_sqr(), 0.0)).re;
        return Ok(Expectation {
            value: a.re,
            imaginary_residual: a.im.abs(),
            unsymmetrized: a,
            absolute,
            truncation_dominated: false,
        });
    }

    let p_psi = psi.derivative(m)?.scale(prefactor);
    let x_psi = psi.map(|x, z| z * x.powi(n));
    let p_x_psi = x_psi.derivative(m)?.scale(prefactor);

    let a = grid.simpson(|k, x| psi.at(k).conj() * p_psi.at(k) * x.powi(n));
    let b = grid.simpson(|k, _| psi.at(k).conj() * p_x_psi.at(k));
    let sym = (a + b) * 0.5;
    let absolute = grid.simpson(|k, x| Complex64::new(x.abs().powi(n) * psi.at(k).norm() * p_psi.at(k).norm(), 0.0)).re;
    Ok(Expectation {
        value: sym.re,
        imaginary_residual: sym.im.abs(),
        unsymmetrized: a,
        absolute,
        truncation_dominated: !psi.edges_decayed(),
    })
}

/// Sweep settings. The spacing stays fixed while the radius grows, so the
/// point count scales with `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepConfig {
    pub dx: f64,
    pub hbar: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { dx: 0.25, hbar: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepPoint {
    pub radius: f64,
    pub points: usize,
    pub estimate: f64,
    pub absolute: f64,
    pub imaginary_residual: f64,
    pub truncation_dominated: bool,
}

/// Expectation estimates of one observable across truncation radii.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepData {
    pub observable: PolynomialObservable,
    pub dx: f64,
    pub points: Vec<SweepPoint>,
}

impl SweepData {
    pub fn radii(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.radius).collect()
    }

    pub fn estimates(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.estimate).collect()
    }

    pub fn absolutes(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.absolute).collect()
    }
}

/// Evaluate `obs` on freshly sampled grids of half-width `L` for each radius.
/// States are not renormalized on each window.
pub fn truncation_sweep<S: Sampler + ?Sized>(
    sampler: &S,
    obs: PolynomialObservable,
    radii: &[f64],
    config: &SweepConfig,
) -> Result<SweepData> {
    check_radii(radii)?;
    let mut points = Vec::with_capacity(radii.len());
    for &radius in radii {
        let grid = Grid::with_spacing(radius, config.dx)?;
        let psi = sampler.sample_on(&grid)?;
        let e = expectation_with_hbar(&psi, obs, config.hbar)?;
        points.push(SweepPoint {
            radius,
            points: grid.len(),
            estimate: e.value,
            absolute: e.absolute,
            imaginary_residual: e.imaginary_residual,
            truncation_dominated: e.truncation_dominated,
        });
    }
    Ok(SweepData { observable: obs, dx: config.dx, points })
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.len() < 4 {
        return Err(Error::InvalidSweep(alloc::format!("need at least 4 radii, got {}", radii.len())));
    }
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidSweep(String::from("radii must be positive, finite and strictly increasing")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Verdict {
    Convergent { limit: f64 },
    Divergent { growth_exponent: f64 },
    Undetermined,
}

impl Verdict {
    pub fn is_convergent(&self) -> bool {
        matches!(self, Verdict::Convergent { .. })
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Verdict::Divergent { .. })
    }
}

/// Thresholds for [`classify_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassifierConfig {
    /// Largest relative spread over the fit window still called convergent.
    pub spread_tolerance: f64,
    /// Smallest log-log slope called divergent.
    pub exponent_threshold: f64,
    /// Magnitude at or below which a whole window counts as zero.
    pub zero_floor: f64,
    /// Like `zero_floor`, relative to the absolute-integrand magnitude, so
    /// roundoff left over from cancelling large contributions counts as zero.
    pub relative_floor: f64,
    /// Number of trailing points used for both tests.
    pub window: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self { spread_tolerance: 1e-4, exponent_threshold: 0.1, zero_floor: 1e-10, relative_floor: 1e-9, window: 3 }
    }
}

/// Classify a sequence of estimates taken at increasing radii.
///
/// Convergent when the trailing window is within the zero floor or has
/// relative spread within tolerance.
/// Divergent when `|value|` grows strictly across the whole sweep and the
/// trailing log-log slope exceeds the threshold. Anything else is Undetermined.
pub fn classify_series(radii: &[f64], values: &[f64], config: &ClassifierConfig) -> Verdict {
    classify_series_scaled(radii, values, None, config)
}

/// [`classify_series`] with per-point magnitudes (typically the absolute
/// integrals) that raise the zero floor to `relative_floor * magnitude`.
pub fn classify_series_scaled(
    radii: &[f64],
    values: &[f64],
    magnitudes: Option<&[f64]>,
    config: &ClassifierConfig,
) -> Verdict {
    let w = config.window.max(2);
    if radii.len() != values.len() || values.len() < w || values.iter().any(|v| !v.is_finite()) {
        return Verdict::Undetermined;
    }
    let tail = &values[values.len() - w..];
    let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut floor = config.zero_floor;
    if let Some(mags) = magnitudes {
        let tail_mag = mags[mags.len().saturating_sub(w)..].iter().cloned().fold(0.0, f64::max);
        floor = floor.max(config.relative_floor * tail_mag);
    }
    let peak = tail.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if peak <= floor || (hi - lo) / peak <= config.spread_tolerance {
        return Verdict::Convergent { limit: values[values.len() - 1] };
    }

    let growing = values.windows(2).all(|p| p[1].abs() > p[0].abs()) && values.iter().all(|v| *v != 0.0);
    if !growing {
        return Verdict::Undetermined;
    }
    let xs: Vec<f64> = radii[radii.len() - w..].iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|v| v.abs().ln()).collect();
    let slope = least_squares_slope(&xs, &ys);
    if slope > config.exponent_threshold {
        Verdict::Divergent { growth_exponent: slope }
    } else {
        Verdict::Undetermined
    }
}

/// Slope of the least-squares line through `(xs, ys)`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Verdicts on the signed estimates and on the absolute-integrand sweep.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DivergenceVerdict {
    pub verdict: Verdict,
    pub absolute_verdict: Verdict,
    /// Signed estimates settle (by cancellation under symmetric truncation)
    /// while the absolute integrand diverges.
    pub conditionally_convergent: bool,
    pub sweep: SweepData,
}

pub fn classify_divergence(sweep: &SweepData) -> Result<DivergenceVerdict> {
    classify_divergence_with(sweep, &ClassifierConfig::default())
}

pub fn classify_divergence_with(sweep: &SweepData, config: &ClassifierConfig) -> Result<DivergenceVerdict> {
    if sweep.points.len() < 4 {
        return Err(Error::InvalidSweep(alloc::format!("need at least 4 sweep points, got {}", sweep.points.len())));
    }
    let radii = sweep.radii();
    let absolutes = sweep.absolutes();
    let verdict = classify_series_scaled(&radii, &sweep.estimates(), Some(&absolutes), config);
    let absolute_verdict = classify_series(&radii, &absolutes, config);
    Ok(DivergenceVerdict {
        verdict,
        absolute_verdict,
        conditionally_convergent: verdict.is_convergent() && absolute_verdict.is_divergent(),
        sweep: sweep.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MomentEntry {
    pub n: u32,
    pub m: u32,
    pub value: f64,
}

/// All symmetrized moments with `n + m <= max_total_degree`, evaluated on one grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MomentTable {
    pub max_total_degree: u32,
    pub grid: Grid,
    /// Ordered by total degree, then by descending `n`.
    pub entries: Vec<MomentEntry>,
}

impl MomentTable {
    pub fn get(&self, n: u32, m: u32) -> Option<f64> {
        self.entries.iter().find(|e| e.n == n && e.m == m).map(|e| e.value)
    }
}

/// Index pairs `(n, m)` with `n + m <= max_total_degree` in fingerprint order.
pub fn fingerprint_indices(max_total_degree: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 0..=max_total_degree {
        for n in (0..=d).rev() {
            out.push((n, d - n));
        }
    }
    out
}

pub fn moment_fingerprint(psi: &GridWavefunction, max_total_degree: u32) -> Result<MomentTable> {
    let mut entries = Vec::new();
    for (n, m) in fingerprint_indices(max_total_degree) {
        let obs = PolynomialObservable::new(n, m)?;
        entries.push(MomentEntry { n, m, value: expectation(psi, obs)?.value });
    }
    Ok(MomentTable { max_total_degree, grid: *psi.grid(), entries })
}
