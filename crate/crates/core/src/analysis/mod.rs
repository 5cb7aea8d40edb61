//! Ensemble normalization, variance-ratio shape estimation, kernel density
//! estimation and the periodogram slope fit.

mod ensemble;
mod kde;
mod moments;
mod periodogram;

pub use ensemble::{run_ensemble, run_ensemble_with, EnsembleAccumulator, EnsembleOutcome, ReplicateSource};
pub use kde::{kde, KernelDensity, DEFAULT_GRID_POINTS};
pub use moments::{
    alpha_from_ratio, min_max_normalize, ratio_from_alpha, ratio_var_range2, variance,
    BetaShapeReport, VarianceMode, POPOVICIU_BOUND, POPOVICIU_SLACK,
};
pub use periodogram::{periodogram, periodogram_slope, MIN_PERIODOGRAM_LEN};
