//! Error function and its inverses.

use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Inverse of `erf` on (-1, 1). Returns +-infinity at +-1.
pub fn erf_inv(p: f64) -> f64 {
    if p.is_nan() || p.abs() > 1.0 {
        return f64::NAN;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    if p == -1.0 {
        return f64::NEG_INFINITY;
    }
    if p.abs() <= 0.5 {
        refine_erf(giles_guess(p, (1.0 - p) * (1.0 + p)), p)
    } else if p > 0.0 {
        erfc_inv(1.0 - p)
    } else {
        -erfc_inv(1.0 + p)
    }
}

/// Inverse of `erfc` on (0, 2).
pub fn erfc_inv(q: f64) -> f64 {
    if q.is_nan() || !(0.0..=2.0).contains(&q) {
        return f64::NAN;
    }
    if q == 0.0 {
        return f64::INFINITY;
    }
    if q == 2.0 {
        return f64::NEG_INFINITY;
    }
    if q > 1.0 {
        return -erfc_inv(2.0 - q);
    }
    let mut x = giles_guess(1.0 - q, q * (2.0 - q));
    if q < 1e-8 {
        // Asymptotic start; the polynomial guess loses accuracy deep in the tail.
        let l = -q.ln();
        x = (l - 0.5 * (PI * l).ln()).max(1.0).sqrt();
    }
    // Newton on ln erfc(x) = ln q, which stays well behaved in the far tail.
    let target = q.ln();
    for _ in 0..40 {
        let e = erfc(x);
        if e <= 0.0 {
            break;
        }
        let step = (e.ln() - target) * e * 0.5 * PI.sqrt() * (x * x).exp();
        if !step.is_finite() {
            break;
        }
        x += step;
        if step.abs() <= 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

fn refine_erf(mut x: f64, p: f64) -> f64 {
    for _ in 0..4 {
        let step = (erf(x) - p) * 0.5 * PI.sqrt() * (x * x).exp();
        x -= step;
        if step.abs() <= 1e-17 {
            break;
        }
    }
    x
}

/// Single-precision approximation of erf^-1(p), taking `one_minus_p2 = (1 - p)(1 + p)`
/// computed by the caller so tiny tails keep their precision.
fn giles_guess(p: f64, one_minus_p2: f64) -> f64 {
    let mut w = -one_minus_p2.ln();
    let poly = if w < 5.0 {
        w -= 2.5;
        [
            2.810_226_36e-08,
            3.432_739_39e-07,
            -3.523_387_7e-06,
            -4.391_506_54e-06,
            0.000_218_580_87,
            -0.001_253_725_03,
            -0.004_177_681_64,
            0.246_640_727,
            1.501_409_41,
        ]
        .iter()
        .fold(0.0, |acc, c| c + acc * w)
    } else {
        w = w.sqrt() - 3.0;
        [
            -0.000_200_214_257,
            0.000_100_950_558,
            0.001_349_343_22,
            -0.003_673_428_44,
            0.005_739_507_73,
            -0.007_622_461_3,
            0.009_438_870_47,
            1.001_674_06,
            2.832_976_82,
        ]
        .iter()
        .fold(0.0, |acc, c| c + acc * w)
    };
    poly * p
}
