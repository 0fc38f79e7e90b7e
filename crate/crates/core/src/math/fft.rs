//! Discrete Fourier transforms of arbitrary length.
//!
//! Power-of-two lengths use an iterative radix-2 kernel; every other length is
//! routed through Bluestein's chirp-z convolution on a padded power-of-two
//! buffer. Both directions are unnormalized:
//!
//! ```text
//! forward: X_j = sum_n x_n exp(-2 pi i j n / N)
//! inverse: x_n = sum_j X_j exp(+2 pi i j n / N)
//! ```

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        }
    }
}

/// Transform `data` in place.
pub fn fft_in_place(data: &mut [Complex64], direction: Direction) {
    let n = data.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(data, direction);
    } else {
        bluestein(data, direction);
    }
}

pub fn fft(data: &[Complex64], direction: Direction) -> Vec<Complex64> {
    let mut out = data.to_vec();
    fft_in_place(&mut out, direction);
    out
}

fn twiddle(k: usize, n: usize, sign: f64) -> Complex64 {
    let angle = sign * 2.0 * PI * (k as f64) / (n as f64);
    Complex64::new(angle.cos(), angle.sin())
}

fn radix2(data: &mut [Complex64], direction: Direction) {
    let n = data.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = direction.sign();
    // Twiddles for the largest stage; smaller stages stride through them.
    let table: Vec<Complex64> = (0..n / 2).map(|k| twiddle(k, n, sign)).collect();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = table[k * stride];
                let a = data[start + k];
                let b = data[start + k + half] * w;
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

fn bluestein(data: &mut [Complex64], direction: Direction) {
    let n = data.len();
    let sign = direction.sign();
    let m = (2 * n - 1).next_power_of_two();
    // chirp_k = exp(sign * i pi k^2 / n), with k^2 reduced mod 2n for accuracy.
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = (k as u128 * k as u128) % (2 * n as u128);
            let angle = sign * PI * (k2 as f64) / (n as f64);
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = data[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        let c = chirp[k].conj();
        b[k] = c;
        b[m - k] = c;
    }
    radix2(&mut a, Direction::Forward);
    radix2(&mut b, Direction::Forward);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= *y;
    }
    radix2(&mut a, Direction::Inverse);
    let scale = 1.0 / m as f64;
    for k in 0..n {
        data[k] = a[k] * chirp[k] * scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(data: &[Complex64], direction: Direction) -> Vec<Complex64> {
        let n = data.len();
        (0..n)
            .map(|j| data.iter().enumerate().map(|(k, x)| x * twiddle((j * k) % n, n, direction.sign())).sum())
            .collect()
    }

    fn sample(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| {
                let t = k as f64;
                Complex64::new((0.3 * t).sin() + 0.1 * t, (1.7 * t).cos() - 0.05 * t * t / n as f64)
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft_for_mixed_lengths() {
        for &n in &[1usize, 2, 3, 8, 12, 16, 30, 64, 100, 257] {
            let x = sample(n);
            for dir in [Direction::Forward, Direction::Inverse] {
                let fast = fft(&x, dir);
                let slow = naive(&x, dir);
                for (a, b) in fast.iter().zip(&slow) {
                    assert!((a - b).norm() < 1e-9 * n as f64, "n = {n}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn round_trip_recovers_input() {
        for &n in &[16usize, 24, 1280] {
            let x = sample(n);
            let back = fft(&fft(&x, Direction::Forward), Direction::Inverse);
            for (a, b) in back.iter().zip(&x) {
                assert!((a / n as f64 - b).norm() < 1e-12);
            }
        }
    }
}
