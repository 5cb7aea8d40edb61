use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fft::forward_real;
use crate::model::Sequence;

/// Shortest series accepted by [`periodogram_slope`].
pub const MIN_PERIODOGRAM_LEN: usize = 64;

/// Raw periodogram `|X_j|²/n` at the Fourier frequencies `j/n`, `j = 1..=n/2`.
///
/// Returns `(frequency, power)` pairs; frequency 0 is left out.
pub fn periodogram(x: &[f64]) -> Vec<(f64, f64)> {
    let n = x.len();
    let spectrum = forward_real(x);
    (1..=n / 2)
        .map(|j| (j as f64 / n as f64, spectrum[j].norm_sqr() / n as f64))
        .collect()
}

/// Least-squares slope of `ln P` against `ln f` over the periodogram.
///
/// For a `k|f|^-β` spectrum this estimates `−β`. Frequencies with zero power
/// are skipped.
pub fn periodogram_slope(x: &Sequence) -> Result<f64> {
    let n = x.len();
    if n < MIN_PERIODOGRAM_LEN {
        return Err(Error::TooShort {
            needed: MIN_PERIODOGRAM_LEN,
            found: n,
        });
    }
    let points: Vec<(f64, f64)> = periodogram(x.values())
        .into_iter()
        .filter(|&(_, p)| p > 0.0)
        .map(|(f, p)| (libm::log(f), libm::log(p)))
        .collect();
    if points.len() < 2 {
        return Err(Error::ConstantSequence);
    }
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), &(lx, ly)| {
        let dx = lx - mean_x;
        (sxy + dx * (ly - mean_y), sxx + dx * dx)
    });
    Ok(sxy / sxx)
}
