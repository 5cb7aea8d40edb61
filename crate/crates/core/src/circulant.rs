//! Circulant operators, the Wold convolution model `y = C·ε`, and the
//! normal-to-beta distribution transformation `F_B(y) = Φ(C⁻¹y)`.
//!
//! A circulant matrix is fixed by its first column `b`:
//! `C[i][j] = b[(i − j) mod m]`. The discrete Fourier transform diagonalizes
//! it, so `C·x = IDFT(λ ⊙ DFT(x))/m` with `λ = DFT(b)`, and `C⁻¹` divides by
//! `λ` instead.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::{inverse_real, FftPlan};
use crate::model::{check_beta, Model, PsdTrend, Sequence, SequenceMeta};
use crate::rng::normal_deviates;

/// Stand-in for the zero frequency in the Wold spectral grid, where
/// `|f|^-β/2` is singular.
pub const ZERO_FREQUENCY_SUBSTITUTE: f64 = 1e-5;

/// Relative singularity tolerance: eigenvalues with modulus at or below
/// `DEFAULT_RELATIVE_TOLERANCE · max|λ|` are treated as zero.
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-12;

/// An `m × m` circulant matrix held as its first column and its eigenvalues.
#[derive(Debug, Clone)]
pub struct CirculantOperator {
    column: Vec<f64>,
    eigenvalues: Vec<Complex64>,
    plan: FftPlan,
}

impl CirculantOperator {
    /// Builds the operator whose first column is `column`.
    pub fn new(column: Vec<f64>) -> Result<Self> {
        if column.is_empty() {
            return Err(Error::TooShort { needed: 1, found: 0 });
        }
        if let Some(i) = column.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let plan = FftPlan::new(column.len());
        let mut eigenvalues: Vec<Complex64> =
            column.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        plan.forward(&mut eigenvalues);
        Ok(Self {
            column,
            eigenvalues,
            plan,
        })
    }

    /// Dimension `m`.
    pub fn dim(&self) -> usize {
        self.column.len()
    }

    /// First column `b`.
    pub fn column(&self) -> &[f64] {
        &self.column
    }

    /// `DFT(b)`, the eigenvalues of `C`.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Matrix entry `C[i][j] = b[(i − j) mod m]`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let m = self.dim();
        self.column[(i % m + m - j % m) % m]
    }

    /// `C·x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        Ok(self.spectral_map(x, |v, lambda| v * lambda))
    }

    /// `C⁻¹·y` with the default relative tolerance.
    pub fn solve(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.solve_with_tolerance(y, DEFAULT_RELATIVE_TOLERANCE * self.max_eigenvalue_modulus())
    }

    /// `C⁻¹·y`, failing with [`Error::SingularOperator`] if any eigenvalue
    /// has modulus `<= tolerance`.
    pub fn solve_with_tolerance(&self, y: &[f64], tolerance: f64) -> Result<Vec<f64>> {
        self.check_dim(y.len())?;
        if let Some((index, lambda)) = self
            .eigenvalues
            .iter()
            .enumerate()
            .find(|(_, l)| !(l.norm() > tolerance))
        {
            return Err(Error::SingularOperator {
                index,
                magnitude: lambda.norm(),
                tolerance,
            });
        }
        Ok(self.spectral_map(y, |v, lambda| v / lambda))
    }

    /// Largest `|λ|`.
    pub fn max_eigenvalue_modulus(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }

    fn spectral_map(&self, x: &[f64], op: impl Fn(Complex64, Complex64) -> Complex64) -> Vec<f64> {
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.plan.forward(&mut buf);
        for (v, lambda) in buf.iter_mut().zip(&self.eigenvalues) {
            *v = op(*v, *lambda);
        }
        self.plan.inverse(&mut buf);
        let scale = self.dim() as f64;
        buf.into_iter().map(|v| v.re / scale).collect()
    }
}

pub(crate) fn check_wold_len(n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::invalid("n", format!("Wold length must be even and >= 2, got {n}")));
    }
    Ok(())
}

/// The `n + 1` point frequency grid `-1/2, …, -1/n, 1e-5, 1/n, …, 1/2`.
pub fn wold_frequencies(n: usize) -> Result<Vec<f64>> {
    check_wold_len(n)?;
    let half = (n / 2) as i64;
    Ok((0..=n as i64)
        .map(|k| {
            if k == half {
                ZERO_FREQUENCY_SUBSTITUTE
            } else {
                (k - half) as f64 / n as f64
            }
        })
        .collect())
}

/// First column of the Wold circulant for spectral exponent `beta`.
///
/// The amplitude `|f|^-β/2` is sampled on [`wold_frequencies`], passed through
/// the unnormalized inverse DFT, scaled by `n^-1/2`, and replaced by its
/// modulus. The result has `n + 1` entries.
pub fn build_wold_column(beta: f64, n: usize) -> Result<Vec<f64>> {
    check_beta(beta)?;
    let trend = PsdTrend::unit(beta)?;
    let amplitude: Vec<f64> = wold_frequencies(n)?
        .into_iter()
        .map(|f| trend.amplitude(f))
        .collect();
    let scale = 1.0 / libm::sqrt(n as f64);
    Ok(inverse_real(&amplitude)
        .into_iter()
        .map(|c| (c * scale).norm())
        .collect())
}

/// The circulant operator of [`build_wold_column`].
pub fn wold_operator(beta: f64, n: usize) -> Result<CirculantOperator> {
    CirculantOperator::new(build_wold_column(beta, n)?)
}

/// `y = C·ε` with `ε` the first `n + 1` standard-normal draws for `seed`.
pub fn simulate_wold(beta: f64, n: usize, seed: u64) -> Result<Sequence> {
    let op = wold_operator(beta, n)?;
    simulate_wold_with(&op, beta, seed)
}

/// [`simulate_wold`] with a prebuilt operator, for ensembles that reuse one `C`.
pub fn simulate_wold_with(op: &CirculantOperator, beta: f64, seed: u64) -> Result<Sequence> {
    let innovations = normal_deviates(seed, op.dim());
    let values = op.apply(&innovations)?;
    let model = Model::Wold { beta };
    Sequence::new(
        values,
        SequenceMeta {
            model: model.kind(),
            params: model.params(),
            seed: Some(seed),
        },
    )
}

/// Grid of the distribution transformation and the distribution function on it.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    /// Points `y` at which `F_B` was evaluated.
    pub y_grid: Vec<f64>,
    /// `F_B(y) = Φ((C⁻¹y)_k)`, each in `[0, 1]`.
    pub cdf_values: Vec<f64>,
}

/// `points` equally spaced values from `min` to `max` inclusive.
pub fn linear_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![min],
        _ => {
            let step = (max - min) / (points - 1) as f64;
            (0..points).map(|i| min + i as f64 * step).collect()
        }
    }
}

/// `-n, -n + 2, …, n`: `n + 1` points, `-1000..=1000` by 2 for `n = 1000`.
pub fn default_transform_grid(n: usize) -> Vec<f64> {
    linear_grid(-(n as f64), n as f64, n + 1)
}

/// Maps normal probabilities onto the beta-type distribution of the Wold
/// model: `F_B(y) = Φ(C⁻¹y)` element-wise on `y_grid` (length `n + 1`).
pub fn transform_cdf(beta: f64, n: usize, y_grid: &[f64]) -> Result<TransformResult> {
    let op = wold_operator(beta, n)?;
    let x = op.solve(y_grid)?;
    Ok(TransformResult {
        y_grid: y_grid.to_vec(),
        cdf_values: x.into_iter().map(normal_cdf).collect(),
    })
}

/// Standard normal distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * core::f64::consts::FRAC_1_SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn naive_apply(column: &[f64], x: &[f64]) -> Vec<f64> {
        let m = column.len();
        (0..m)
            .map(|i| (0..m).map(|j| column[(i + m - j) % m] * x[j]).sum())
            .collect()
    }

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_and_all_ones() {
        let x = [1.5, -2.0, 0.25, 7.0];
        let id = CirculantOperator::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(max_abs_diff(&id.apply(&x).unwrap(), &x) < 1e-14);

        let ones = CirculantOperator::new(vec![1.0; 4]).unwrap();
        let sum: f64 = x.iter().sum();
        assert!(ones.apply(&x).unwrap().iter().all(|v| (v - sum).abs() < 1e-12));
    }

    #[test]
    fn orientation_is_first_column() {
        let op = CirculantOperator::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(op.entry(1, 0), 2.0);
        assert_eq!(op.entry(0, 1), 3.0);
        let e0 = op.apply(&[1.0, 0.0, 0.0]).unwrap();
        assert!(max_abs_diff(&e0, &[1.0, 2.0, 3.0]) < 1e-14);
    }

    #[test]
    fn eigenvalues_are_dft_of_column() {
        let col: Vec<f64> = (0..7).map(|i| (i as f64 * 0.7).cos()).collect();
        let op = CirculantOperator::new(col.clone()).unwrap();
        for (k, lambda) in op.eigenvalues().iter().enumerate() {
            let direct: Complex64 = col
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    let a = -2.0 * core::f64::consts::PI * (j * k) as f64 / 7.0;
                    Complex64::new(b * a.cos(), b * a.sin())
                })
                .sum();
            assert!((lambda - direct).norm() < 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let op = CirculantOperator::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            op.apply(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
        assert!(op.solve(&[1.0; 4]).is_err());
    }

    #[test]
    fn scaled_identity_solve() {
        let op = CirculantOperator::new(vec![2.0, 0.0, 0.0, 0.0]).unwrap();
        let y = [3.0, -1.0, 8.0, 0.5];
        let x = op.solve(&y).unwrap();
        assert!(max_abs_diff(&x, &[1.5, -0.5, 4.0, 0.25]) < 1e-14);
    }

    #[test]
    fn rank_one_is_singular() {
        let op = CirculantOperator::new(vec![1.0; 4]).unwrap();
        match op.solve(&[1.0, 2.0, 3.0, 4.0]) {
            Err(Error::SingularOperator { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected SingularOperator, got {other:?}"),
        }
    }

    #[test]
    fn wold_roundtrip_m1001() {
        let op = wold_operator(0.75, 1000).unwrap();
        let y = default_transform_grid(1000);
        let x = op.solve(&y).unwrap();
        let back = op.apply(&x).unwrap();
        assert!(max_abs_diff(&back, &y) < 1e-8);
    }

    #[test]
    fn flat_spectrum_column_is_impulse() {
        let b = build_wold_column(0.0, 4).unwrap();
        assert_eq!(b.len(), 5);
        assert!((b[0] - 2.5).abs() < 1e-14);
        assert!(b[1..].iter().all(|v| v.abs() < 1e-14));
        assert!(build_wold_column(1.0, 5).is_err());
    }

    #[test]
    fn frequency_grid_layout() {
        let f = wold_frequencies(4).unwrap();
        assert_eq!(f, vec![-0.5, -0.25, ZERO_FREQUENCY_SUBSTITUTE, 0.25, 0.5]);
        assert_eq!(wold_frequencies(1000).unwrap().len(), 1001);
    }

    #[test]
    fn wold_column_peaks_at_lag_zero() {
        let b = build_wold_column(2.87, 1000).unwrap();
        assert_eq!(b.len(), 1001);
        assert!(b.iter().all(|v| v.is_finite()));
        let max = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(b[0], max);
        assert_eq!(b, build_wold_column(2.87, 1000).unwrap());
    }

    #[test]
    fn wold_flat_spectrum_is_scaled_noise() {
        let x = simulate_wold(0.0, 1000, 207).unwrap();
        assert_eq!(x.len(), 1001);
        let c = 1001.0 / 1000f64.sqrt();
        let eps = normal_deviates(207, 1001);
        for (v, e) in x.values().iter().zip(&eps) {
            assert!((v - c * e).abs() < 1e-9);
        }
    }

    #[test]
    fn wold_is_linear_in_innovations() {
        let op = wold_operator(2.17, 200).unwrap();
        let eps = normal_deviates(3, 201);
        let doubled: Vec<f64> = eps.iter().map(|e| 2.0 * e).collect();
        let single = op.apply(&eps).unwrap();
        let double = op.apply(&doubled).unwrap();
        for (a, b) in single.iter().zip(&double) {
            assert_eq!(2.0 * a, *b);
        }
        assert_eq!(simulate_wold_with(&op, 2.17, 3).unwrap().values(), &single[..]);
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        // 50-digit references
        let refs = [
            (0.5, 0.691_462_461_274_013_1),
            (1.0, 0.841_344_746_068_542_9),
            (2.0, 0.977_249_868_051_820_8),
            (5.0, 0.999_999_713_348_428_1),
            (-3.0, 0.001_349_898_031_630_094_5),
        ];
        for (z, p) in refs {
            assert!((normal_cdf(z) - p).abs() < 1e-15, "z={z}");
        }
        assert!((normal_cdf(1.959964) - 0.975).abs() < 1e-6);
        assert!((normal_cdf(1.959964) - 0.975_000_000_903_557_6).abs() < 1e-15);
        for z in [0.5, 1.0, 2.0, 5.0] {
            assert!((normal_cdf(-z) - (1.0 - normal_cdf(z))).abs() < 1e-15);
        }
        assert!(normal_cdf(-40.0) >= 0.0 && normal_cdf(40.0) <= 1.0);
    }

    #[test]
    fn flat_transform_is_scaled_normal_cdf() {
        let y = default_transform_grid(1000);
        let t = transform_cdf(0.0, 1000, &y).unwrap();
        let c = 1001.0 / 1000f64.sqrt();
        assert!((t.cdf_values[500] - 0.5).abs() < 1e-12);
        for (yv, p) in y.iter().zip(&t.cdf_values) {
            assert!((p - normal_cdf(yv / c)).abs() < 1e-9);
        }
    }

    #[test]
    fn transform_shape() {
        let y = default_transform_grid(1000);
        assert_eq!(y.len(), 1001);
        assert_eq!((y[0], y[1], y[1000]), (-1000.0, -998.0, 1000.0));
        for beta in [0.75, 0.84, 1.1] {
            let t = transform_cdf(beta, 1000, &y).unwrap();
            let p = &t.cdf_values;
            assert!(p.iter().all(|v| (0.0..=1.0).contains(v)));
            for i in 101..901 {
                assert!(p[i + 1] >= p[i] - 1e-9, "beta={beta} i={i}");
            }
            assert!((p[500] - 0.5).abs() < 0.02);
            for k in 1..400 {
                assert!((p[500 + k] + p[500 - k] - 1.0).abs() < 0.02);
            }
        }
        assert!(matches!(
            transform_cdf(0.75, 1000, &y[..1000]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn apply_matches_naive(
            m in 1usize..300,
            seed in 0u64..1000,
        ) {
            let column = normal_deviates(seed, m);
            let x = normal_deviates(seed + 10_000, m);
            let op = CirculantOperator::new(column.clone()).unwrap();
            prop_assert!(max_abs_diff(&op.apply(&x).unwrap(), &naive_apply(&column, &x)) < 1e-8);
        }

        #[test]
        fn solve_then_apply(m in 1usize..300, seed in 0u64..1000) {
            // diagonally dominant column keeps every eigenvalue away from zero
            let mut column = normal_deviates(seed, m);
            column[0] += 3.0 * m as f64;
            let y = normal_deviates(seed + 1, m);
            let op = CirculantOperator::new(column).unwrap();
            let back = op.apply(&op.solve(&y).unwrap()).unwrap();
            let scale = y.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            prop_assert!(max_abs_diff(&back, &y) < 1e-8 * scale.max(1.0));
        }
    }
}
