//! Fractionally differenced ARFIMA(0,d,0) noise and Timmer–König power-law noise.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::FftPlan;
use crate::model::{check_beta, Model, PsdTrend, Sequence, SequenceMeta};
use crate::rng::{normal_deviates, NormalStream};

/// Parameters of ARFIMA(0, d, 0) with `d = dint + dfrac`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArfimaParams {
    dfrac: f64,
    dint: u32,
    sigma2: f64,
}

impl ArfimaParams {
    /// Requires `|dfrac| < 0.5` and a finite `sigma2 > 0`.
    pub fn new(dfrac: f64, dint: u32, sigma2: f64) -> Result<Self> {
        check_dfrac(dfrac)?;
        if !(sigma2.is_finite() && sigma2 > 0.0) {
            return Err(Error::invalid("sigma2", "innovation variance must be finite and > 0"));
        }
        Ok(Self { dfrac, dint, sigma2 })
    }

    /// Fractional part of `d`.
    pub fn dfrac(&self) -> f64 {
        self.dfrac
    }

    /// Number of cumulative summations.
    pub fn dint(&self) -> u32 {
        self.dint
    }

    /// Innovation variance.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Total differencing order `dint + dfrac`.
    pub fn d(&self) -> f64 {
        self.dint as f64 + self.dfrac
    }
}

fn check_dfrac(dfrac: f64) -> Result<()> {
    if dfrac.is_finite() && dfrac.abs() < 0.5 {
        Ok(())
    } else {
        Err(Error::invalid("dfrac", format!("|dfrac| must be < 0.5, got {dfrac}")))
    }
}

/// First `m` weights of the MA(∞) expansion of `(1 − B)^-d`.
///
/// `ψ_0 = 1`, `ψ_j = ψ_{j−1}·(j − 1 + d)/j`. Any finite `d` is accepted;
/// `d = 1` gives the all-ones cumulative-sum filter.
pub fn psi_coefficients(d: f64, m: usize) -> Vec<f64> {
    let mut psi = Vec::with_capacity(m);
    let mut current = 1.0;
    for j in 0..m {
        if j > 0 {
            current *= (j as f64 - 1.0 + d) / j as f64;
        }
        psi.push(current);
    }
    psi
}

/// One-sided convolution `out[t] = Σ_{j=0}^{t} ψ_j·ε_{t−j}`.
///
/// Output has `innovations.len()` elements; `psi` must be at least that long.
pub fn filter_innovations(psi: &[f64], innovations: &[f64]) -> Vec<f64> {
    assert!(psi.len() >= innovations.len(), "filter shorter than input");
    (0..innovations.len())
        .map(|t| {
            psi[..=t]
                .iter()
                .zip(innovations[..=t].iter().rev())
                .map(|(p, e)| p * e)
                .sum()
        })
        .collect()
}

/// Fractional noise of length `n`: unit-variance normal innovations passed
/// through the truncated `(1 − B)^-dfrac` filter. No burn-in is discarded.
pub fn fractional_noise(dfrac: f64, n: usize, seed: u64) -> Result<Sequence> {
    let params = ArfimaParams::new(dfrac, 0, 1.0)?;
    simulate_arfima(&params, n, seed)
}

/// Applies cumulative summation `times` times.
pub fn integrate(x: &Sequence, times: u32) -> Result<Sequence> {
    let mut values = x.values().to_vec();
    cumulative_sum(&mut values, times);
    x.with_values(values)
}

fn cumulative_sum(values: &mut [f64], times: u32) {
    for _ in 0..times {
        let mut acc = 0.0;
        for v in values.iter_mut() {
            acc += *v;
            *v = acc;
        }
    }
}

/// ARFIMA(0, dint + dfrac, 0) of length `n`: fractional noise with innovation
/// variance `sigma2`, integrated `dint` times.
pub fn simulate_arfima(params: &ArfimaParams, n: usize, seed: u64) -> Result<Sequence> {
    if n == 0 {
        return Err(Error::invalid("n", "length must be >= 1"));
    }
    let scale = libm::sqrt(params.sigma2);
    let innovations: Vec<f64> = normal_deviates(seed, n).into_iter().map(|e| e * scale).collect();
    let psi = psi_coefficients(params.dfrac, n);
    let mut values = filter_innovations(&psi, &innovations);
    cumulative_sum(&mut values, params.dint);
    let model = Model::Arfima(*params);
    Sequence::new(
        values,
        SequenceMeta {
            model: model.kind(),
            params: model.params(),
            seed: Some(seed),
        },
    )
}

pub(crate) fn check_tk95_len(n: usize) -> Result<()> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(Error::invalid("n", format!("TK95 length must be even and >= 8, got {n}")));
    }
    Ok(())
}

/// Timmer–König power-law noise of even length `n >= 8`.
///
/// At `f_j = j/n`, `j = 1..n/2`, the Fourier coefficient is
/// `√(½·f_j^-β)·(g₁ + i·g₂)` with standard-normal `g`'s. The Nyquist
/// coefficient is real, `√(f^-β)·g`. The zero-frequency coefficient is 0, so
/// the output has zero mean. The spectrum is made Hermitian and inverse
/// transformed; the real part is returned.
pub fn simulate_tk95(beta: f64, n: usize, seed: u64) -> Result<Sequence> {
    check_beta(beta)?;
    check_tk95_len(n)?;
    let trend = PsdTrend::unit(beta)?;
    let half = n / 2;
    let mut draws = NormalStream::new(seed);
    let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
    for j in 1..half {
        let f = j as f64 / n as f64;
        let amp = trend.amplitude(f) * core::f64::consts::FRAC_1_SQRT_2;
        let re = draws.next_normal();
        let im = draws.next_normal();
        spectrum[j] = Complex64::new(amp * re, amp * im);
        spectrum[n - j] = spectrum[j].conj();
    }
    spectrum[half] = Complex64::new(trend.amplitude(0.5) * draws.next_normal(), 0.0);
    FftPlan::new(n).inverse(&mut spectrum);
    let values = spectrum.into_iter().map(|c| c.re).collect();
    let model = Model::Tk95 { beta };
    Sequence::new(
        values,
        SequenceMeta {
            model: model.kind(),
            params: model.params(),
            seed: Some(seed),
        },
    )
}
