//! Closed-form reference states and the [`Sampler`] abstraction used by sweeps.

use alloc::format;
use alloc::string::String;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridWavefunction};

pub const MAX_HERMITE_ORDER: usize = 60;

/// Anything that can produce its samples on a requested grid.
///
/// Truncation sweeps resample the state at every radius, so they work with
/// samplers rather than with a single [`GridWavefunction`].
pub trait Sampler {
    fn sample_on(&self, grid: &Grid) -> Result<GridWavefunction>;
}

/// Catalog of analytic states with exact pointwise evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AnalyticProfile {
    /// `sqrt(exp(-x^2) / sqrt(pi))`.
    Gaussian,
    /// `sqrt(1 / (pi (x^2 + 1)))`; finite norm, divergent even moments.
    CauchySqrt,
    /// Normalized harmonic-oscillator eigenfunction of the given order.
    Hermite(usize),
    /// `exp(-1 / (1 - (x/r)^2))` inside `|x| < r`, zero elsewhere. Not normalized.
    Bump { radius: f64 },
}

impl AnalyticProfile {
    pub fn validate(&self) -> Result<()> {
        match *self {
            AnalyticProfile::Hermite(n) if n > MAX_HERMITE_ORDER => Err(Error::HermiteOrderTooLarge(n)),
            AnalyticProfile::Bump { radius } if !(radius.is_finite() && radius > 0.0) => {
                Err(Error::InvalidProfile(format!("bump radius {radius} must be finite and positive")))
            }
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        Complex64::new(self.evaluate_real(x), 0.0)
    }

    pub fn evaluate_real(&self, x: f64) -> f64 {
        match *self {
            AnalyticProfile::Gaussian => (-x * x / 2.0).exp() / PI.powf(0.25),
            AnalyticProfile::CauchySqrt => (1.0 / (PI * (x * x + 1.0))).sqrt(),
            AnalyticProfile::Hermite(n) => hermite_function(n, x),
            AnalyticProfile::Bump { radius } => bump(x / radius),
        }
    }

    pub fn sample(&self, grid: &Grid) -> Result<GridWavefunction> {
        self.validate()?;
        Ok(GridWavefunction::from_real_fn(*grid, |x| self.evaluate_real(x)))
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match self {
            AnalyticProfile::Gaussian => "gaussian".into(),
            AnalyticProfile::CauchySqrt => "cauchy-sqrt".into(),
            AnalyticProfile::Hermite(n) => format!("hermite({n})"),
            AnalyticProfile::Bump { radius } => format!("bump({radius})"),
        }
    }
}

impl Sampler for AnalyticProfile {
    fn sample_on(&self, grid: &Grid) -> Result<GridWavefunction> {
        self.sample(grid)
    }
}

/// Sampler backed by an arbitrary closed-form function.
#[derive(Clone, Copy)]
pub struct FnSampler<F>(pub F);

impl<F: Fn(f64) -> Complex64> Sampler for FnSampler<F> {
    fn sample_on(&self, grid: &Grid) -> Result<GridWavefunction> {
        Ok(GridWavefunction::from_fn(*grid, &self.0))
    }
}

impl<S: Sampler + ?Sized> Sampler for &S {
    fn sample_on(&self, grid: &Grid) -> Result<GridWavefunction> {
        (**self).sample_on(grid)
    }
}

/// `n`-th normalized Hermite function by the stable three-term recurrence
/// `h_{k+1} = sqrt(2/(k+1)) x h_k - sqrt(k/(k+1)) h_{k-1}`.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let h0 = (-x * x / 2.0).exp() / PI.powf(0.25);
    if n == 0 {
        return h0;
    }
    let mut prev = h0;
    let mut cur = 2f64.sqrt() * x * h0;
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Standard bump `exp(-1/(1 - t^2))` on `|t| < 1`.
pub fn bump(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - t * t)).exp()
    }
}

/// Infinitely smooth step: 0 for `t <= 0`, 1 for `t >= 1`.
pub fn smooth_step(t: f64) -> f64 {
    let g = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = g(t);
        a / (a + g(1.0 - t))
    }
}
