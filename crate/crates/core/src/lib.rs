//! Numerical core for studying how wavefunction moments behave under
//! truncation, coordinate changes and time evolution, together with the
//! density-operator geometry that ties superposition and overlap to mixtures.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, reports and the
//! command line live in the `wavelab` companion crate. Float functions come
//! from `num_traits::Float` (backed by libm); when std is linked its inherent
//! `f64` methods take precedence, hence the `allow(unused_imports)` on those
//! imports.
#![no_std]
// `!(x > tol)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod grid;
pub mod math;
pub mod mixtures;
pub mod observables;
pub mod profile;
pub mod schwartz;
pub mod transforms;

pub use error::{Error, Result};
pub use grid::{Grid, GridWavefunction};
pub use num_complex::Complex64;
pub use profile::{AnalyticProfile, Sampler};
