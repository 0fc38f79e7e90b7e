//! Coordinate changes of the line, the unitaries they induce on
//! wavefunctions, and the oscillating evolution family built from the
//! Gaussian-to-Cauchy map.
//!
//! A monotone map `f` acts on states by
//! `(U psi)(y) = psi(f^-1(y)) |f'(f^-1(y))|^{-1/2}`, which preserves the
//! probability carried by every interval.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{simpson_interval, Grid, GridWavefunction};
use crate::math::special::{erf, erf_inv, erfc, erfc_inv};
use crate::observables::{classify_divergence, truncation_sweep, DivergenceVerdict, PolynomialObservable, SweepConfig};
use crate::profile::{AnalyticProfile, Sampler};

/// Forward values beyond this magnitude are refused.
pub const OVERFLOW_GUARD: f64 = 1e8;
/// Working half-range of the Gaussian-to-Cauchy map.
pub const GAUSS_TO_CAUCHY_RANGE: f64 = 2.5;
/// Cap on the adaptive working half-range of evolution maps.
pub const EVOLUTION_RANGE_CAP: f64 = 20.0;
/// Working half-range for affine maps and the identity.
pub const AFFINE_RANGE: f64 = 1e6;
pub const MIN_MONOTONICITY_SAMPLES: usize = 1000;
pub const DEFAULT_MONOTONICITY_SAMPLES: usize = 4001;
/// Derivatives at or below this count as violations of monotonicity.
const MONOTONE_FLOOR: f64 = 1e-12;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// `tan((pi/2) erf(x))`, evaluated as `cot((pi/2) erfc(|x|))` away from the
/// origin so the tails keep full relative precision.
pub fn tan_half_pi_erf(x: f64) -> f64 {
    let a = x.abs();
    let v = if a < 0.5 { (FRAC_PI_2 * erf(a)).tan() } else { 1.0 / (FRAC_PI_2 * erfc(a)).tan() };
    v.copysign(x)
}

/// `ln((1 + g^2) sqrt(pi) exp(-x^2))`, the log-derivative of [`tan_half_pi_erf`].
fn ln_tan_half_pi_erf_derivative(x: f64) -> f64 {
    let g = tan_half_pi_erf(x).abs();
    let ln_one_plus_g2 = if g > 1.0 { 2.0 * g.ln() + (1.0 / (g * g)).ln_1p() } else { (g * g).ln_1p() };
    ln_one_plus_g2 + SQRT_PI.ln() - x * x
}

/// `(2/pi) atan(y)` inverted through `erf`; uses `erfc` in the tails.
fn inverse_tan_half_pi_erf(y: f64) -> f64 {
    let a = y.abs();
    let x = if a <= 1.0 { erf_inv(a.atan() / FRAC_PI_2) } else { erfc_inv((1.0 / a).atan() / FRAC_PI_2) };
    x.copysign(y)
}

/// Closed-form monotone (or candidate) maps of the line.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CoordinateMap {
    Identity,
    /// `scale * x + shift`.
    Affine {
        scale: f64,
        shift: f64,
    },
    /// `tan((pi/2) erf(x))`.
    GaussToCauchy,
    /// `cos(omega t) x + sin(omega t) tan((pi/2) erf(x))`.
    Evolution {
        omega: f64,
        t: f64,
    },
    /// `outer(inner(x))`.
    Compose(Box<CoordinateMap>, Box<CoordinateMap>),
    Inverse(Box<CoordinateMap>),
}

impl CoordinateMap {
    pub fn compose(outer: CoordinateMap, inner: CoordinateMap) -> Self {
        CoordinateMap::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn inverted(self) -> Self {
        match self {
            CoordinateMap::Inverse(inner) => *inner,
            other => CoordinateMap::Inverse(Box::new(other)),
        }
    }

    /// `(cos, sin)` of `omega t` with values below `1e-15` snapped to zero,
    /// so quarter and half periods are exact.
    fn evolution_coefficients(omega: f64, t: f64) -> (f64, f64) {
        let snap = |v: f64| if v.abs() <= 1e-15 { 0.0 } else { v };
        let (s, c) = (omega * t).sin_cos();
        (snap(c), snap(s))
    }

    pub fn forward(&self, x: f64) -> Result<f64> {
        let y = match self {
            CoordinateMap::Identity => x,
            CoordinateMap::Affine { scale, shift } => scale * x + shift,
            CoordinateMap::GaussToCauchy => tan_half_pi_erf(x),
            CoordinateMap::Evolution { omega, t } => {
                let (c, s) = Self::evolution_coefficients(*omega, *t);
                if s == 0.0 {
                    c * x
                } else {
                    c * x + s * tan_half_pi_erf(x)
                }
            }
            CoordinateMap::Compose(outer, inner) => outer.forward(inner.forward(x)?)?,
            CoordinateMap::Inverse(inner) => inner.inverse(x)?,
        };
        if !(y.abs() <= OVERFLOW_GUARD) {
            return Err(Error::Overflow(x));
        }
        Ok(y)
    }

    /// `df/dx` at `x`.
    pub fn jacobian(&self, x: f64) -> Result<f64> {
        Ok(match self {
            CoordinateMap::Identity => 1.0,
            CoordinateMap::Affine { scale, .. } => *scale,
            CoordinateMap::GaussToCauchy => ln_tan_half_pi_erf_derivative(x).exp(),
            CoordinateMap::Evolution { omega, t } => {
                let (c, s) = Self::evolution_coefficients(*omega, *t);
                if s == 0.0 {
                    c
                } else {
                    c + s * ln_tan_half_pi_erf_derivative(x).exp()
                }
            }
            CoordinateMap::Compose(outer, inner) => outer.jacobian(inner.forward(x)?)? * inner.jacobian(x)?,
            CoordinateMap::Inverse(inner) => 1.0 / inner.jacobian(inner.inverse(x)?)?,
        })
    }

    /// `f^-1(y)`; exact where a closed form exists, bisection otherwise.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        match self {
            CoordinateMap::Identity => Ok(y),
            CoordinateMap::Affine { scale, shift } => {
                if *scale == 0.0 {
                    return Err(Error::NotMonotone { x: 0.0, derivative: 0.0 });
                }
                Ok((y - shift) / scale)
            }
            CoordinateMap::GaussToCauchy => Ok(inverse_tan_half_pi_erf(y)),
            CoordinateMap::Evolution { omega, t } => {
                let (c, s) = Self::evolution_coefficients(*omega, *t);
                if s == 0.0 {
                    if c == 0.0 {
                        return Err(Error::NotMonotone { x: 0.0, derivative: 0.0 });
                    }
                    return Ok(y / c);
                }
                if c == 0.0 {
                    return Ok(inverse_tan_half_pi_erf(y / s));
                }
                self.bisect_inverse(y, self.working_range())
            }
            CoordinateMap::Compose(outer, inner) => inner.inverse(outer.inverse(y)?),
            CoordinateMap::Inverse(inner) => inner.forward(y),
        }
    }

    /// Bisection for an increasing map on `[-r, r]`, run to full precision.
    fn bisect_inverse(&self, y: f64, r: f64) -> Result<f64> {
        let (mut lo, mut hi) = (-r, r);
        let (f_lo, f_hi) = (self.forward(lo)?, self.forward(hi)?);
        if !(f_lo <= y && y <= f_hi) {
            return Err(Error::OutOfRange { value: y, lo: f_lo, hi: f_hi });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.forward(mid)? < y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Symmetric half-range `[-x_max, x_max]` on which the map is evaluated.
    pub fn working_range(&self) -> f64 {
        match self {
            CoordinateMap::Identity | CoordinateMap::Affine { .. } => AFFINE_RANGE,
            CoordinateMap::GaussToCauchy => GAUSS_TO_CAUCHY_RANGE,
            CoordinateMap::Evolution { omega, t } => {
                let (c, s) = Self::evolution_coefficients(*omega, *t);
                evolution_range(c, s)
            }
            CoordinateMap::Compose(outer, inner) => {
                // Keep the inner range, shrunk until the outer map accepts the image.
                let mut r = inner.working_range();
                let outer_r = outer.working_range();
                for _ in 0..200 {
                    let ok = [-r, r].iter().all(|&x| inner.forward(x).map(|y| y.abs() <= outer_r).unwrap_or(false));
                    if ok {
                        break;
                    }
                    r *= 0.9;
                }
                r
            }
            CoordinateMap::Inverse(inner) => {
                let r = inner.working_range();
                let lo = inner.forward(-r).map(f64::abs).unwrap_or(OVERFLOW_GUARD);
                let hi = inner.forward(r).map(f64::abs).unwrap_or(OVERFLOW_GUARD);
                lo.min(hi)
            }
        }
    }
}

/// Largest `x <= 20` with `|c| x + |s| |tan((pi/2) erf x)| <= 1e8`, a
/// monotone bound on `|z(+-x)|`.
fn evolution_range(c: f64, s: f64) -> f64 {
    let bound = |x: f64| c.abs() * x + s.abs() * tan_half_pi_erf(x);
    if bound(EVOLUTION_RANGE_CAP) <= OVERFLOW_GUARD {
        return EVOLUTION_RANGE_CAP;
    }
    let (mut lo, mut hi) = (0.0, EVOLUTION_RANGE_CAP);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if bound(mid) <= OVERFLOW_GUARD {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Outcome of a dense derivative scan.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Certificate {
    Monotone,
    /// First sampled point whose derivative is at or below `1e-12`.
    NonMonotone {
        witness: f64,
        derivative: f64,
    },
    Unchecked,
}

impl Certificate {
    pub fn is_monotone(&self) -> bool {
        matches!(self, Certificate::Monotone)
    }
}

/// Scan `df/dx` on `sample_count` evenly spaced points of `[-x_max, x_max]`.
pub fn check_monotonicity(map: &CoordinateMap, x_max: f64, sample_count: usize) -> Result<Certificate> {
    if sample_count < MIN_MONOTONICITY_SAMPLES {
        return Err(Error::Precondition(alloc::format!(
            "monotonicity scan needs at least {MIN_MONOTONICITY_SAMPLES} samples, got {sample_count}"
        )));
    }
    let step = 2.0 * x_max / (sample_count - 1) as f64;
    for i in 0..sample_count {
        let x = -x_max + i as f64 * step;
        let d = map.jacobian(x).unwrap_or(f64::NAN);
        if !(d > MONOTONE_FLOOR) {
            return Ok(Certificate::NonMonotone { witness: x, derivative: d });
        }
    }
    Ok(Certificate::Monotone)
}

/// A coordinate map together with its working range and monotonicity certificate.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diffeomorphism {
    map: CoordinateMap,
    x_max: f64,
    certificate: Certificate,
}

impl Diffeomorphism {
    /// Certify on the map's own working range.
    pub fn certified(map: CoordinateMap) -> Result<Self> {
        let x_max = map.working_range();
        Self::certified_on(map, x_max)
    }

    pub fn certified_on(map: CoordinateMap, x_max: f64) -> Result<Self> {
        let certificate = check_monotonicity(&map, x_max, DEFAULT_MONOTONICITY_SAMPLES)?;
        Ok(Self { map, x_max, certificate })
    }

    pub fn unchecked(map: CoordinateMap) -> Self {
        let x_max = map.working_range();
        Self { map, x_max, certificate: Certificate::Unchecked }
    }

    pub fn map(&self) -> &CoordinateMap {
        &self.map
    }

    pub fn working_range(&self) -> f64 {
        self.x_max
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn forward(&self, x: f64) -> Result<f64> {
        self.map.forward(x)
    }

    pub fn inverse(&self, y: f64) -> Result<f64> {
        self.map.inverse(y)
    }

    pub fn jacobian(&self, x: f64) -> Result<f64> {
        self.map.jacobian(x)
    }

    /// `[f(-x_max), f(x_max)]`.
    pub fn image(&self) -> Result<(f64, f64)> {
        Ok((self.forward(-self.x_max)?, self.forward(self.x_max)?))
    }

    /// Certified inverse map on the image of the working range.
    pub fn inverted(&self) -> Result<Diffeomorphism> {
        self.require_monotone()?;
        let (lo, hi) = self.image()?;
        Diffeomorphism::certified_on(self.map.clone().inverted(), lo.abs().min(hi.abs()))
    }

    fn require_monotone(&self) -> Result<()> {
        match self.certificate {
            Certificate::Monotone => Ok(()),
            Certificate::NonMonotone { witness, derivative } => Err(Error::NotMonotone { x: witness, derivative }),
            Certificate::Unchecked => match check_monotonicity(&self.map, self.x_max, DEFAULT_MONOTONICITY_SAMPLES)? {
                Certificate::NonMonotone { witness, derivative } => Err(Error::NotMonotone { x: witness, derivative }),
                _ => Ok(()),
            },
        }
    }

    /// `psi(f^-1(y)) / sqrt(f'(f^-1(y)))` for a pointwise source amplitude.
    fn pull_back(&self, y: f64, source: impl Fn(f64) -> Complex64) -> Result<Complex64> {
        let x = self.inverse(y)?;
        let j = self.jacobian(x)?;
        Ok(source(x) / j.sqrt())
    }
}

/// `tan((pi/2) erf(x))`, certified on `|x| <= 2.5`.
pub fn gauss_to_cauchy_map() -> Result<Diffeomorphism> {
    Diffeomorphism::certified(CoordinateMap::GaussToCauchy)
}

/// The map `z(., t)` of the evolution family with angular frequency `omega`,
/// certified on its adaptive working range. A non-monotone `z` is returned
/// with its certificate rather than as an error.
pub fn evolution_map(omega: f64, t: f64) -> Result<Diffeomorphism> {
    if !(omega.is_finite() && omega > 0.0) || !t.is_finite() {
        return Err(Error::Precondition(alloc::format!("need omega > 0 and finite t, got omega = {omega}, t = {t}")));
    }
    Diffeomorphism::certified(CoordinateMap::Evolution { omega, t })
}

/// Apply the induced unitary to sampled `psi`, resampling onto `target`.
/// Source values between grid points come from cubic interpolation.
pub fn induced_unitary_apply(f: &Diffeomorphism, psi: &GridWavefunction, target: &Grid) -> Result<GridWavefunction> {
    f.require_monotone()?;
    check_target(f, target)?;
    let samples = target.points().map(|y| f.pull_back(y, |x| psi.interpolate(x))).collect::<Result<Vec<_>>>()?;
    GridWavefunction::new(*target, samples)
}

fn check_target(f: &Diffeomorphism, target: &Grid) -> Result<()> {
    let (lo, hi) = f.image()?;
    let l = target.half_width();
    for value in [-l, l] {
        if value < lo || value > hi {
            return Err(Error::OutOfRange { value, lo, hi });
        }
    }
    Ok(())
}

/// Norm bookkeeping for one application of an induced unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UnitarityReport {
    pub output_norm: f64,
    /// Norm of the source restricted to the preimage of the target window.
    pub preimage_norm: f64,
    pub source_norm: f64,
    /// `|output_norm - preimage_norm|`.
    pub defect: f64,
}

/// Compare `||U psi||` on the target window with the source norm over the
/// window's preimage; the two agree exactly in the continuum.
pub fn unitarity_check(f: &Diffeomorphism, psi: &GridWavefunction, target: &Grid) -> Result<UnitarityReport> {
    let out = induced_unitary_apply(f, psi, target)?;
    let a = f.inverse(-target.half_width())?;
    let b = f.inverse(target.half_width())?;
    let mass = simpson_interval(a, b, 8192, |x| psi.interpolate(x).norm_sqr());
    let output_norm = out.norm();
    let preimage_norm = mass.max(0.0).sqrt();
    Ok(UnitarityReport {
        output_norm,
        preimage_norm,
        source_norm: psi.norm(),
        defect: (output_norm - preimage_norm).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CdfPoint {
    pub x: f64,
    pub y: f64,
    /// `int_{f(0)}^{f(x)} |U psi|^2 dy`.
    pub pushed: f64,
    /// `int_0^x |psi|^2 dx`.
    pub source: f64,
}

impl CdfPoint {
    pub fn gap(&self) -> f64 {
        (self.pushed - self.source).abs()
    }
}

/// Cumulative-probability comparison between `psi` and its image under `f`
/// at each of `xs`.
pub fn pushforward_density_check(f: &Diffeomorphism, psi: &GridWavefunction, xs: &[f64]) -> Result<Vec<CdfPoint>> {
    f.require_monotone()?;
    let y0 = f.forward(0.0)?;
    xs.iter()
        .map(|&x| {
            let y = f.forward(x)?;
            let intervals = ((y - y0).abs() * 64.0).max(2048.0) as usize;
            let mut err = None;
            let pushed = simpson_interval(y0, y, intervals, |v| match f.pull_back(v, |u| psi.interpolate(u)) {
                Ok(z) => z.norm_sqr(),
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            let source = simpson_interval(0.0, x, 4096, |u| psi.interpolate(u).norm_sqr());
            Ok(CdfPoint { x, y, pushed, source })
        })
        .collect()
}

/// Image of an analytic state under an induced unitary, evaluated pointwise
/// from the closed form. Points outside the image of the working range get 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PushforwardSampler {
    pub map: Diffeomorphism,
    pub source: AnalyticProfile,
}

impl PushforwardSampler {
    pub fn evaluate(&self, y: f64) -> Result<Complex64> {
        let (lo, hi) = self.map.image()?;
        if y < lo || y > hi {
            return Ok(Complex64::new(0.0, 0.0));
        }
        self.map.pull_back(y, |x| self.source.evaluate(x))
    }
}

impl Sampler for PushforwardSampler {
    fn sample_on(&self, grid: &Grid) -> Result<GridWavefunction> {
        self.map.require_monotone()?;
        self.source.validate()?;
        let samples = grid.points().map(|y| self.evaluate(y)).collect::<Result<Vec<_>>>()?;
        GridWavefunction::new(*grid, samples)
    }
}

/// Verdicts for every tracked observable at one time.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrackPoint {
    pub t: f64,
    pub working_range: f64,
    pub verdicts: Vec<(PolynomialObservable, DivergenceVerdict)>,
}

/// Evolve an analytic state through the family at each time and classify
/// every observable by a truncation sweep. All times must give monotone maps.
pub fn evolve_and_track(
    omega: f64,
    source: AnalyticProfile,
    times: &[f64],
    observables: &[PolynomialObservable],
    radii: &[f64],
    config: &SweepConfig,
) -> Result<Vec<TrackPoint>> {
    let maps = times.iter().map(|&t| evolution_map(omega, t)).collect::<Result<Vec<_>>>()?;
    let bad: Vec<f64> =
        times.iter().zip(&maps).filter(|(_, m)| !m.certificate().is_monotone()).map(|(t, _)| *t).collect();
    if !bad.is_empty() {
        return Err(Error::NonMonotoneTimes(bad));
    }
    times
        .iter()
        .zip(maps)
        .map(|(&t, map)| {
            let working_range = map.working_range();
            let sampler = PushforwardSampler { map, source };
            let verdicts = observables
                .iter()
                .map(|&obs| {
                    let sweep = truncation_sweep(&sampler, obs, radii, config)?;
                    Ok((obs, classify_divergence(&sweep)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TrackPoint { t, working_range, verdicts })
        })
        .collect()
}

/// `|| U_t U_s psi - U_{t+s} psi ||` on `grid` for a Gaussian source. The
/// family is not claimed to be a one-parameter group; this measures how far
/// it is from one.
pub fn group_law_residual(omega: f64, t: f64, s: f64, grid: &Grid) -> Result<f64> {
    let source = AnalyticProfile::Gaussian;
    let us = PushforwardSampler { map: evolution_map(omega, s)?, source }.sample_on(grid)?;
    let ut = evolution_map(omega, t)?;
    let direct = PushforwardSampler { map: evolution_map(omega, t + s)?, source }.sample_on(grid)?;
    let composed = grid
        .points()
        .map(|y| {
            let (lo, hi) = ut.image()?;
            if y < lo || y > hi {
                return Ok(Complex64::new(0.0, 0.0));
            }
            ut.pull_back(y, |x| us.interpolate(x))
        })
        .collect::<Result<Vec<_>>>()?;
    let composed = GridWavefunction::new(*grid, composed)?;
    Ok(composed.sub(&direct)?.norm())
}

/// `omega t` values in `[0, pi/2]`, evenly spaced, converted to times.
pub fn quarter_period_times(omega: f64, count: usize) -> Vec<f64> {
    let count = count.max(2);
    (0..count).map(|i| FRAC_PI_2 * i as f64 / (count - 1) as f64 / omega).collect()
}

/// Value of `omega t` above which `z(., t)` stops being monotone:
/// `pi - atan(1 / sqrt(pi))`, where `cos(omega t) + sqrt(pi) sin(omega t)`
/// (the derivative at the origin) changes sign.
pub fn monotonicity_threshold() -> f64 {
    PI - (1.0 / SQRT_PI).atan()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_to_cauchy_values() {
        let f = gauss_to_cauchy_map().unwrap();
        assert!(f.certificate().is_monotone());
        assert_eq!(f.forward(0.0).unwrap(), 0.0);
        assert!((f.inverse(f.forward(1.0).unwrap()).unwrap() - 1.0).abs() < 1e-9);
        let y2 = f.forward(2.0).unwrap();
        assert!((y2 - (FRAC_PI_2 * erf(2.0)).tan()).abs() < 1e-9 * y2);
        assert!((y2 - 136.0933).abs() < 1e-3);
        assert!(matches!(f.forward(4.5), Err(Error::Overflow(_))));
    }

    #[test]
    fn gauss_to_cauchy_round_trips_across_range() {
        let f = gauss_to_cauchy_map().unwrap();
        for i in -250..=250 {
            let x = i as f64 / 100.0;
            let y = f.forward(x).unwrap();
            assert!((f.inverse(y).unwrap() - x).abs() <= 1e-9 * x.abs().max(1.0), "x = {x}");
            assert!((f.forward(f.inverse(y).unwrap()).unwrap() - y).abs() <= 1e-8 * y.abs().max(1.0));
        }
    }

    #[test]
    fn jacobian_matches_difference_quotient() {
        let maps = [
            CoordinateMap::GaussToCauchy,
            CoordinateMap::Evolution { omega: 1.0, t: 0.7 },
            CoordinateMap::compose(CoordinateMap::Affine { scale: 2.0, shift: 0.5 }, CoordinateMap::GaussToCauchy),
            CoordinateMap::GaussToCauchy.inverted(),
        ];
        for map in &maps {
            for &x in &[-1.3, -0.2, 0.0, 0.4, 1.1] {
                let h = 1e-5;
                let fd = (map.forward(x + h).unwrap() - map.forward(x - h).unwrap()) / (2.0 * h);
                let j = map.jacobian(x).unwrap();
                assert!((fd - j).abs() <= 1e-6 * j.abs().max(1.0), "{map:?} at {x}: {fd} vs {j}");
            }
        }
    }

    #[test]
    fn evolution_special_times() {
        let id = evolution_map(1.0, 0.0).unwrap();
        assert!(id.certificate().is_monotone());
        assert_eq!(id.forward(1.7).unwrap(), 1.7);

        let quarter = evolution_map(2.0, FRAC_PI_2 / 2.0).unwrap();
        assert!(quarter.certificate().is_monotone());
        for &x in &[-2.0, -0.3, 0.9, 2.5] {
            assert_eq!(quarter.forward(x).unwrap(), tan_half_pi_erf(x));
        }

        let half = evolution_map(1.0, PI).unwrap();
        assert!(matches!(half.certificate(), Certificate::NonMonotone { derivative, .. } if derivative == -1.0));
        assert_eq!(half.forward(0.8).unwrap(), -0.8);
    }

    #[test]
    fn evolution_inverse_by_bisection() {
        let f = evolution_map(1.0, 0.6).unwrap();
        for &x in &[-3.0, -1.0, 0.0, 0.25, 2.0, 3.5] {
            let y = f.forward(x).unwrap();
            let back = f.inverse(y).unwrap();
            assert!((back - x).abs() <= 1e-10, "x = {x}: {back}");
        }
    }

    #[test]
    fn monotonicity_threshold_location() {
        let th = monotonicity_threshold();
        let range = GAUSS_TO_CAUCHY_RANGE;
        let before = CoordinateMap::Evolution { omega: 1.0, t: th - 0.01 };
        let after = CoordinateMap::Evolution { omega: 1.0, t: th + 0.01 };
        assert!(check_monotonicity(&before, range, 4001).unwrap().is_monotone());
        assert!(!check_monotonicity(&after, range, 4001).unwrap().is_monotone());
        assert!(check_monotonicity(&CoordinateMap::Identity, 1.0, 999).is_err());
    }

    #[test]
    fn affine_dilation_halves_density() {
        let g = Grid::new(10.0, 1024).unwrap();
        let psi = AnalyticProfile::Gaussian.sample(&g).unwrap();
        let f = Diffeomorphism::certified(CoordinateMap::Affine { scale: 2.0, shift: 0.0 }).unwrap();
        let target = Grid::new(16.0, 2048).unwrap();
        let out = induced_unitary_apply(&f, &psi, &target).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-6);
        for (k, y) in target.points().enumerate().step_by(97) {
            let exact = AnalyticProfile::Gaussian.evaluate_real(y / 2.0) / 2f64.sqrt();
            assert!((out.samples()[k].re - exact).abs() < 1e-7);
        }
    }

    #[test]
    fn refuses_non_monotone_and_out_of_range() {
        let g = Grid::new(8.0, 256).unwrap();
        let psi = AnalyticProfile::Gaussian.sample(&g).unwrap();
        let half = evolution_map(1.0, PI).unwrap();
        assert!(matches!(induced_unitary_apply(&half, &psi, &g), Err(Error::NotMonotone { .. })));
        let f = gauss_to_cauchy_map().unwrap();
        let huge = Grid::new(5000.0, 256).unwrap();
        assert!(matches!(induced_unitary_apply(&f, &psi, &huge), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn quarter_period_grid() {
        let ts = quarter_period_times(2.0, 5);
        assert_eq!(ts.len(), 5);
        assert_eq!(ts[0], 0.0);
        assert!((ts[4] - PI / 4.0).abs() < 1e-15);
    }
}
