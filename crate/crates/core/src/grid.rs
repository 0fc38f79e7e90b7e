//! Wavefunctions sampled on uniform, truncated, periodic grids.
//!
//! A [`Grid`] covers `[-L, L)` with `N` (even) points `x_k = -L + k dx`,
//! `dx = 2L / N`; the right endpoint is the periodic image of the left one.
//! Integrals use composite Simpson over the closed interval `[-L, L]`: the
//! wavefunction at `x = L` is taken from the periodic wrap while coordinate
//! factors are evaluated at the true endpoint, so odd moments of symmetric
//! states cancel exactly.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::math::fft::{fft_in_place, Direction};

/// Samples smaller than this at both grid edges count as decayed.
pub const EDGE_DECAY_THRESHOLD: f64 = 1e-8;

/// Highest supported spectral derivative order.
pub const MAX_DERIVATIVE_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Grid {
    half_width: f64,
    points: usize,
}

impl Grid {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!("half width {half_width} must be finite and positive")));
        }
        if points < 16 || !points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!("point count {points} must be even and at least 16")));
        }
        Ok(Self { half_width, points })
    }

    /// Grid of half-width `half_width` whose spacing is as close to `dx` as an
    /// even point count allows.
    pub fn with_spacing(half_width: f64, dx: f64) -> Result<Self> {
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::InvalidGrid(format!("spacing {dx} must be finite and positive")));
        }
        let raw = (2.0 * half_width / dx).round();
        if !(raw.is_finite() && raw < 1e9) {
            return Err(Error::InvalidGrid(format!("spacing {dx} gives an unusable point count")));
        }
        let mut n = raw as usize;
        n += n % 2;
        Self::new(half_width, n.max(16))
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    /// `x_k` for `k` in `0..=N`; `k = N` is the right endpoint `L`.
    pub fn point(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.dx()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |k| self.point(k))
    }

    /// Conjugate (wavenumber) grid: half-width `pi / dx`, same point count.
    pub fn conjugate(&self) -> Grid {
        Grid { half_width: PI / self.dx(), points: self.points }
    }

    /// Angular wavenumber attached to DFT bin `j`.
    fn wavenumber(&self, j: usize) -> f64 {
        let n = self.points as isize;
        let j = j as isize;
        let signed = if j < n / 2 { j } else { j - n };
        2.0 * PI * signed as f64 / (self.points as f64 * self.dx())
    }

    /// Composite Simpson over `[-L, L]`. `integrand(k, x)` is called for
    /// `k in 0..=N`; callers wrap sample indices with `k % N`.
    pub fn simpson(&self, mut integrand: impl FnMut(usize, f64) -> Complex64) -> Complex64 {
        let n = self.points;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=n {
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += integrand(k, self.point(k)) * w;
        }
        acc * (self.dx() / 3.0)
    }

    fn check_same(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left_l: self.half_width,
                left_n: self.points,
                right_l: other.half_width,
                right_n: other.points,
            })
        }
    }
}

/// Composite Simpson rule for `f` on `[a, b]`; `intervals` is rounded up to even.
pub fn simpson_interval(a: f64, b: f64, intervals: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    let m = (intervals.max(2) + 1) & !1;
    let h = (b - a) / m as f64;
    let mut acc = f(a) + f(b);
    for k in 1..m {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

/// Complex samples of a state on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridWavefunction {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl GridWavefunction {
    pub fn new(grid: Grid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} samples supplied for a grid of {} points",
                samples.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64) -> Complex64) -> Self {
        let samples = grid.points().map(&mut f).collect();
        Self { grid, samples }
    }

    pub fn from_real_fn(grid: Grid, mut f: impl FnMut(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Sample at `x_k`, with `k = N` wrapping to `k = 0`.
    pub fn at(&self, k: usize) -> Complex64 {
        self.samples[k % self.samples.len()]
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &GridWavefunction) -> Result<Complex64> {
        self.grid.check_same(&other.grid)?;
        Ok(self.grid.simpson(|k, _| self.at(k).conj() * other.at(k)))
    }

    pub fn norm(&self) -> f64 {
        self.grid.simpson(|k, _| Complex64::new(self.at(k).norm_sqr(), 0.0)).re.max(0.0).sqrt()
    }

    pub fn normalize(&self) -> Result<GridWavefunction> {
        let norm = self.norm();
        if !(norm > 1e-12) {
            return Err(Error::DegenerateState(norm));
        }
        Ok(self.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> GridWavefunction {
        self.map(|_, z| z * factor)
    }

    /// Pointwise map `(x_k, psi_k) -> value`.
    pub fn map(&self, mut f: impl FnMut(f64, Complex64) -> Complex64) -> GridWavefunction {
        let samples = self.samples.iter().enumerate().map(|(k, z)| f(self.grid.point(k), *z)).collect();
        GridWavefunction { grid: self.grid, samples }
    }

    pub fn add(&self, other: &GridWavefunction) -> Result<GridWavefunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridWavefunction) -> Result<GridWavefunction> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &GridWavefunction, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let samples = self.samples.iter().zip(&other.samples).map(|(a, b)| f(*a, *b)).collect();
        Ok(GridWavefunction { grid: self.grid, samples })
    }

    /// Largest sample magnitude at the two grid edges.
    pub fn edge_magnitude(&self) -> f64 {
        self.samples[0].norm().max(self.samples[self.samples.len() - 1].norm())
    }

    pub fn edges_decayed(&self) -> bool {
        self.edge_magnitude() <= EDGE_DECAY_THRESHOLD
    }

    /// Largest `|psi_k|`.
    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral derivative of the given order, via the Fourier multiplier
    /// `(ik)^order`. The Nyquist bin is dropped for odd orders.
    pub fn derivative(&self, order: usize) -> Result<GridWavefunction> {
        if order > MAX_DERIVATIVE_ORDER {
            return Err(Error::DerivativeOrderTooLarge(order));
        }
        if order == 0 {
            return Ok(self.clone());
        }
        if !self.edges_decayed() {
            log::warn!(
                "spectral derivative of a state with edge magnitude {:e} (threshold {:e})",
                self.edge_magnitude(),
                EDGE_DECAY_THRESHOLD
            );
        }
        let n = self.samples.len();
        let mut spectrum = self.samples.clone();
        fft_in_place(&mut spectrum, Direction::Forward);
        for (j, c) in spectrum.iter_mut().enumerate() {
            if j == n / 2 && order % 2 == 1 {
                *c = Complex64::new(0.0, 0.0);
                continue;
            }
            let ik = Complex64::new(0.0, self.grid.wavenumber(j));
            *c *= ik.powu(order as u32);
        }
        fft_in_place(&mut spectrum, Direction::Inverse);
        let inv_n = 1.0 / n as f64;
        for c in spectrum.iter_mut() {
            *c *= inv_n;
        }
        Ok(GridWavefunction { grid: self.grid, samples: spectrum })
    }

    /// Pointwise accuracy bound for [`derivative`](Self::derivative) of this
    /// order: roundoff on the full spectrum plus everything carried by the
    /// upper half of the band, which the grid does not resolve reliably.
    pub fn derivative_noise_floor(&self, order: usize) -> f64 {
        if order == 0 {
            return 0.0;
        }
        let n = self.samples.len();
        let mut spectrum = self.samples.clone();
        fft_in_place(&mut spectrum, Direction::Forward);
        let k_max = PI / self.grid.dx();
        let (mut all, mut upper) = (0.0, 0.0);
        for (j, c) in spectrum.iter().enumerate() {
            let k = self.grid.wavenumber(j).abs();
            let w = c.norm() * k.powi(order as i32);
            all += w;
            if k > 0.5 * k_max {
                upper += w;
            }
        }
        (16.0 * f64::EPSILON * all + upper) / n as f64
    }

    /// Unitary Fourier transform `(2 pi)^{-1/2} int exp(-ikx) psi(x) dx`,
    /// sampled on the conjugate grid.
    pub fn fourier_transform(&self) -> GridWavefunction {
        if !self.edges_decayed() {
            log::warn!("Fourier transform of a state with edge magnitude {:e}", self.edge_magnitude());
        }
        self.transform(Direction::Forward)
    }

    /// Inverse of [`fourier_transform`](Self::fourier_transform): maps samples
    /// on a wavenumber grid back to the position grid whose conjugate it is.
    pub fn inverse_fourier_transform(&self) -> GridWavefunction {
        self.transform(Direction::Inverse)
    }

    fn transform(&self, direction: Direction) -> GridWavefunction {
        let n = self.samples.len();
        let out_grid = self.grid.conjugate();
        let flip = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        // exp(-+ i K L) with K L = pi N / 2.
        let phase = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut data: Vec<Complex64> = self.samples.iter().enumerate().map(|(k, z)| z * flip(k)).collect();
        fft_in_place(&mut data, direction);
        let scale = self.grid.dx() / (2.0 * PI).sqrt() * phase;
        for (j, z) in data.iter_mut().enumerate() {
            *z *= scale * flip(j);
        }
        GridWavefunction { grid: out_grid, samples: data }
    }

    /// Cubic Lagrange interpolation at an arbitrary `x`; zero outside the
    /// sampled interval `[x_0, x_{N-1}]`.
    pub fn interpolate(&self, x: f64) -> Complex64 {
        let n = self.samples.len();
        let dx = self.grid.dx();
        let s = (x - self.grid.point(0)) / dx;
        if !(s >= 0.0 && s <= (n - 1) as f64) {
            return Complex64::new(0.0, 0.0);
        }
        let base = (s.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
        let t = s - base as f64;
        let nodes = [0.0, 1.0, 2.0, 3.0];
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, xi) in nodes.iter().enumerate() {
            let mut w = 1.0;
            for (j, xj) in nodes.iter().enumerate() {
                if i != j {
                    w *= (t - xj) / (xi - xj);
                }
            }
            acc += self.samples[base + i] * w;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::AnalyticProfile;

    fn grid() -> Grid {
        Grid::new(8.0, 1024).unwrap()
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(0.0, 64).is_err());
        assert!(Grid::new(f64::INFINITY, 64).is_err());
        assert!(Grid::new(8.0, 15).is_err());
        assert!(Grid::new(8.0, 30).is_ok());
        assert!(Grid::new(8.0, 31).is_err());
    }

    #[test]
    fn grid_points_follow_layout() {
        let g = grid();
        assert_eq!(g.dx(), 1.0 / 64.0);
        assert_eq!(g.point(0), -8.0);
        assert_eq!(g.point(1024), 8.0);
        assert_eq!(g.points().count(), 1024);
    }

    #[test]
    fn gaussian_is_normalized() {
        let psi = AnalyticProfile::Gaussian.sample(&grid()).unwrap();
        let ip = psi.inner_product(&psi).unwrap();
        assert!((ip.re - 1.0).abs() < 1e-8 && ip.im.abs() < 1e-15);
    }

    #[test]
    fn mismatched_grids_are_reported() {
        let a = AnalyticProfile::Gaussian.sample(&grid()).unwrap();
        let b = AnalyticProfile::Gaussian.sample(&Grid::new(8.0, 512).unwrap()).unwrap();
        match a.inner_product(&b) {
            Err(Error::GridMismatch { left_n: 1024, right_n: 512, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hermite_parity_orthogonality() {
        let h0 = AnalyticProfile::Hermite(0).sample(&grid()).unwrap();
        let h1 = AnalyticProfile::Hermite(1).sample(&grid()).unwrap();
        assert!(h0.inner_product(&h1).unwrap().norm() < 1e-10);
    }

    #[test]
    fn norm_and_normalize() {
        let g = AnalyticProfile::Gaussian.sample(&grid()).unwrap();
        let twice = g.scale(Complex64::new(2.0, 0.0));
        assert!((twice.norm() - 2.0).abs() < 1e-8);
        let back = twice.normalize().unwrap();
        for (a, b) in back.samples().iter().zip(g.samples()) {
            assert!((a - b).norm() < 1e-10);
        }
        let h5 = AnalyticProfile::Hermite(5).sample(&grid()).unwrap();
        assert!((h5.norm() - 1.0).abs() < 1e-8);
        let zero = g.scale(Complex64::new(0.0, 0.0));
        assert!(matches!(zero.normalize(), Err(Error::DegenerateState(_))));
    }

    #[test]
    fn derivative_identities() {
        let g = grid();
        let h0 = AnalyticProfile::Hermite(0).sample(&g).unwrap();
        assert_eq!(h0.derivative(0).unwrap(), h0);
        let d1 = h0.derivative(1).unwrap();
        assert!(d1.samples()[512].norm() < 1e-8, "x = 0 sample");
        let d2 = h0.derivative(2).unwrap();
        for (k, x) in g.points().enumerate() {
            let expected = (x * x - 1.0) * h0.samples()[k].re;
            assert!((d2.samples()[k].re - expected).abs() < 1e-6);
        }
        let twice = d1.derivative(1).unwrap();
        for (a, b) in twice.samples().iter().zip(d2.samples()) {
            assert!((a - b).norm() < 1e-6);
        }
        assert!(matches!(h0.derivative(9), Err(Error::DerivativeOrderTooLarge(9))));
    }

    #[test]
    fn fourier_of_hermite_functions() {
        let g = grid();
        let k_grid = g.conjugate();
        for n in 0..=10usize {
            let h = AnalyticProfile::Hermite(n).sample(&g).unwrap();
            let fh = h.fourier_transform();
            assert_eq!(fh.grid(), &k_grid);
            let factor = Complex64::new(0.0, -1.0).powu(n as u32);
            for (j, k) in k_grid.points().enumerate() {
                let expected = factor * AnalyticProfile::Hermite(n).evaluate(k);
                assert!((fh.samples()[j] - expected).norm() < 1e-6, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn inverse_fourier_round_trip() {
        let h3 = AnalyticProfile::Hermite(3).sample(&Grid::new(10.0, 600).unwrap()).unwrap();
        let back = h3.fourier_transform().inverse_fourier_transform();
        assert_eq!(back.grid(), h3.grid());
        for (a, b) in back.samples().iter().zip(h3.samples()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn quadrature_converges_under_refinement() {
        let mut previous = None;
        for n in [512usize, 1024, 2048, 4096] {
            let psi = AnalyticProfile::Gaussian.sample(&Grid::new(8.0, n).unwrap()).unwrap();
            let value = psi.inner_product(&psi).unwrap().re;
            if let Some(p) = previous {
                let delta: f64 = value - p;
                assert!(delta.abs() <= 1e-9);
            }
            previous = Some(value);
        }
    }

    #[test]
    fn interpolation_is_accurate_for_smooth_states() {
        let g = grid();
        let psi = AnalyticProfile::Hermite(2).sample(&g).unwrap();
        for i in 0..200 {
            let x = -7.9 + i as f64 * 0.0791;
            let err = (psi.interpolate(x) - AnalyticProfile::Hermite(2).evaluate(x)).norm();
            assert!(err < 1e-7, "x = {x}: {err}");
        }
        assert_eq!(psi.interpolate(9.0), Complex64::new(0.0, 0.0));
    }
}
