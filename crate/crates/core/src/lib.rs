//! Long-memory sequence generation and symmetric-beta shape estimation.
//!
//! Three generators produce long-memory sequences whose power spectra follow
//! a `k|f|^-β` trend:
//!
//! * fractionally differenced ARFIMA(0,d,0) noise ([`generators::simulate_arfima`]),
//! * Timmer–König spectral synthesis ([`generators::simulate_tk95`]),
//! * a circulant (Wold) convolution `y = C·ε` ([`circulant::simulate_wold`]).
//!
//! After min-max normalization the marginal distribution of an ensemble of
//! such sequences is a symmetric beta distribution on `[0, 1]`. Its shape
//! `α` follows from the variance to squared range ratio through
//! `σ²/(b−a)² = 1/(8α + 4)` ([`analysis::alpha_from_ratio`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front-end and parallel ensembles live in the `lmbeta` crate.

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod circulant;
mod error;
pub mod fft;
pub mod generators;
mod model;
pub mod rng;

pub use error::{Error, Result};
pub use model::{EnsembleSpec, Model, ModelKind, PsdTrend, SeedRule, Sequence, SequenceMeta};
