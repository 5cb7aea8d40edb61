use core::fmt;

use crate::error::{Error, Result};
use crate::model::Sequence;

/// Upper bound of `σ²/(b − a)²` for any distribution on `[a, b]`.
pub const POPOVICIU_BOUND: f64 = 0.25;

/// Rounding slack allowed on top of [`POPOVICIU_BOUND`].
pub const POPOVICIU_SLACK: f64 = 1e-12;

/// Divisor convention for the variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarianceMode {
    /// Divide by `n − 1`.
    #[default]
    Sample,
    /// Divide by `n`.
    Population,
}

impl VarianceMode {
    /// `"sample"` or `"population"`.
    pub fn as_str(self) -> &'static str {
        match self {
            VarianceMode::Sample => "sample",
            VarianceMode::Population => "population",
        }
    }
}

impl fmt::Display for VarianceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(x − min)/(max − min)`. The result has minimum exactly 0 and maximum exactly 1.
pub fn min_max_normalize(x: &Sequence) -> Result<Sequence> {
    let min = x.min();
    let range = x.max() - min;
    if !(range > 0.0) {
        return Err(Error::ConstantSequence);
    }
    let values = x.values().iter().map(|v| (v - min) / range).collect();
    x.with_values(values)
}

/// Variance of `values` under `mode`.
pub fn variance(values: &[f64], mode: VarianceMode) -> Result<f64> {
    let n = values.len();
    let needed = match mode {
        VarianceMode::Sample => 2,
        VarianceMode::Population => 1,
    };
    if n < needed {
        return Err(Error::TooShort { needed, found: n });
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    Ok(match mode {
        VarianceMode::Sample => ss / (n - 1) as f64,
        VarianceMode::Population => ss / n as f64,
    })
}

/// `σ²/(max − min)²`; unchanged by shifting or rescaling `x`.
pub fn ratio_var_range2(x: &Sequence, mode: VarianceMode) -> Result<f64> {
    let range = x.range();
    if !(range > 0.0) {
        return Err(Error::ConstantSequence);
    }
    Ok(variance(x.values(), mode)? / (range * range))
}

/// Symmetric-beta shape from the variance ratio: `α = (1/r − 4)/8`.
///
/// Requires `0 < r <= 1/4`.
pub fn alpha_from_ratio(r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= POPOVICIU_BOUND) {
        return Err(Error::RatioOutOfRange(r));
    }
    Ok((1.0 / r - 4.0) / 8.0)
}

/// Variance ratio of a symmetric beta with shape `alpha`: `1/(8α + 4)`.
pub fn ratio_from_alpha(alpha: f64) -> f64 {
    1.0 / (8.0 * alpha + 4.0)
}

/// Variance-ratio summary and symmetric-beta shape estimate of a sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaShapeReport {
    /// `variance / range²`.
    pub ratio: f64,
    /// `(1/ratio − 4)/8`, or `None` when the ratio lies outside `(0, 1/4]`.
    pub alpha_hat: Option<f64>,
    /// Variance under `variance_mode`.
    pub variance: f64,
    /// `max − min`.
    pub range: f64,
    /// Population ratio is at most `1/4` (plus rounding slack).
    pub popoviciu_ok: bool,
    /// Divisor used for `variance` and `ratio`.
    pub variance_mode: VarianceMode,
}

impl BetaShapeReport {
    /// Summarizes `x`. Fails on constant input or too few values for `mode`.
    pub fn from_sequence(x: &Sequence, mode: VarianceMode) -> Result<Self> {
        let range = x.range();
        if !(range > 0.0) {
            return Err(Error::ConstantSequence);
        }
        let var = variance(x.values(), mode)?;
        let ratio = var / (range * range);
        let population = match mode {
            VarianceMode::Population => ratio,
            VarianceMode::Sample => ratio_var_range2(x, VarianceMode::Population)?,
        };
        Ok(Self {
            ratio,
            alpha_hat: alpha_from_ratio(ratio).ok(),
            variance: var,
            range,
            popoviciu_ok: population <= POPOVICIU_BOUND + POPOVICIU_SLACK,
            variance_mode: mode,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::NormalStream;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn seq(v: &[f64]) -> Sequence {
        Sequence::from_values(v.to_vec()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(min_max_normalize(&seq(&[2.0, 4.0, 6.0])).unwrap().values(), &[0.0, 0.5, 1.0]);
        assert_eq!(min_max_normalize(&seq(&[1.0, 1.0, 1.0])), Err(Error::ConstantSequence));
        assert_eq!(min_max_normalize(&seq(&[5.0])), Err(Error::ConstantSequence));
    }

    #[test]
    fn variance_examples() {
        assert_eq!(variance(&[0.0, 1.0], VarianceMode::Population).unwrap(), 0.25);
        assert_eq!(variance(&[0.0, 1.0], VarianceMode::Sample).unwrap(), 0.5);
        assert_eq!(variance(&[3.0], VarianceMode::Population).unwrap(), 0.0);
        assert!(matches!(variance(&[3.0], VarianceMode::Sample), Err(Error::TooShort { .. })));
        assert!(variance(&[], VarianceMode::Population).is_err());
    }

    #[test]
    fn uniform_variance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let u: Vec<f64> = (0..1_000_000).map(|_| rng.random::<f64>()).collect();
        let v = variance(&u, VarianceMode::Sample).unwrap();
        assert!((v - 1.0 / 12.0).abs() < 0.001, "{v}");
    }

    #[test]
    fn ratio_two_point_extreme() {
        assert_eq!(ratio_var_range2(&seq(&[0.0, 1.0]), VarianceMode::Population).unwrap(), 0.25);
        assert_eq!(ratio_var_range2(&seq(&[2.0, 2.0]), VarianceMode::Sample), Err(Error::ConstantSequence));
    }

    #[test]
    fn alpha_reference_shapes() {
        assert_eq!(alpha_from_ratio(1.0 / 8.0).unwrap(), 0.5);
        assert!((alpha_from_ratio(1.0 / 12.0).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(alpha_from_ratio(1.0 / 16.0).unwrap(), 1.5);
        assert_eq!(alpha_from_ratio(0.25).unwrap(), 0.0);
        assert_eq!(alpha_from_ratio(0.0), Err(Error::RatioOutOfRange(0.0)));
        assert!(alpha_from_ratio(-0.1).is_err());
        assert!(alpha_from_ratio(0.25 + 1e-9).is_err());
        assert!(alpha_from_ratio(f64::NAN).is_err());
    }

    #[test]
    fn ratio_from_alpha_examples() {
        assert_eq!(ratio_from_alpha(0.0), 0.25);
        assert!((ratio_from_alpha(1.0) - 1.0 / 12.0).abs() < 1e-16);
    }

    #[test]
    fn report_fields() {
        let r = BetaShapeReport::from_sequence(&seq(&[0.0, 1.0]), VarianceMode::Population).unwrap();
        assert_eq!(r.ratio, 0.25);
        assert_eq!(r.alpha_hat, Some(0.0));
        assert!(r.popoviciu_ok);
        // sample-mode ratio can exceed 1/4 for tiny n; Popoviciu is judged on population moments
        let r = BetaShapeReport::from_sequence(&seq(&[0.0, 1.0]), VarianceMode::Sample).unwrap();
        assert_eq!(r.ratio, 0.5);
        assert_eq!(r.alpha_hat, None);
        assert!(r.popoviciu_ok);
        assert_eq!(r.range, 1.0);
    }

    #[test]
    fn scale_invariance_twelve_decades() {
        let x: Vec<f64> = NormalStream::new(4).take(500).collect();
        let base = ratio_var_range2(&seq(&x), VarianceMode::Population).unwrap();
        for e in -6..=6 {
            let t = 10f64.powi(e);
            let scaled: Vec<f64> = x.iter().map(|v| t * v).collect();
            let r = ratio_var_range2(&seq(&scaled), VarianceMode::Population).unwrap();
            assert!(((r - base) / base).abs() < 1e-10, "t={t}");
        }
    }

    proptest! {
        #[test]
        fn alpha_roundtrip(alpha in 0.0f64..100.0) {
            let back = alpha_from_ratio(ratio_from_alpha(alpha)).unwrap();
            prop_assert!((back - alpha).abs() < 1e-12);
        }

        #[test]
        fn normalize_is_affine_invariant(
            x in proptest::collection::vec(-1e3f64..1e3, 2..100),
            a in -1e3f64..1e3,
            t in 1e-3f64..1e3,
        ) {
            let s = seq(&x);
            prop_assume!(s.range() > 1e-6);
            let moved: Vec<f64> = x.iter().map(|v| a + t * v).collect();
            let n1 = min_max_normalize(&seq(&moved)).unwrap();
            let n0 = min_max_normalize(&s).unwrap();
            // rounding in a + t·x is the only source of difference
            let tol = 8.0 * f64::EPSILON * (1.0 + a.abs() / (t * s.range()) + s.max().abs().max(s.min().abs()) / s.range());
            for (p, q) in n1.values().iter().zip(n0.values()) {
                prop_assert!((p - q).abs() <= tol, "{} vs {} (tol {})", p, q, tol);
            }
        }

        #[test]
        fn normalized_bounds(x in proptest::collection::vec(-1e6f64..1e6, 2..200)) {
            let s = seq(&x);
            prop_assume!(s.range() > 0.0);
            let n = min_max_normalize(&s).unwrap();
            prop_assert_eq!(n.min(), 0.0);
            prop_assert_eq!(n.max(), 1.0);
        }

        #[test]
        fn popoviciu_holds(x in proptest::collection::vec(-1e6f64..1e6, 2..200)) {
            let s = seq(&x);
            prop_assume!(s.range() > 0.0);
            prop_assert!(ratio_var_range2(&s, VarianceMode::Population).unwrap() <= POPOVICIU_BOUND + POPOVICIU_SLACK);
        }

        #[test]
        fn location_invariance(x in proptest::collection::vec(-10.0f64..10.0, 2..200), c in -100.0f64..100.0) {
            let s = seq(&x);
            prop_assume!(s.range() > 1e-3);
            let moved = seq(&x.iter().map(|v| v + c).collect::<Vec<_>>());
            let r0 = ratio_var_range2(&s, VarianceMode::Sample).unwrap();
            let r1 = ratio_var_range2(&moved, VarianceMode::Sample).unwrap();
            prop_assert!(((r1 - r0) / r0).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_affine_normalization_examples() {
        // exactly representable affine images normalize bit-for-bit identically;
        // otherwise rounding in a + t·x itself perturbs the input
        let x = vec![3.0, -17.0, 22.5, 0.0, 95.0];
        let base = min_max_normalize(&seq(&x)).unwrap();
        for (a, t) in [(3.0, 5.0), (-2.0, 0.5), (0.0, 4.0), (100.0, 1.0), (-7.25, 1024.0)] {
            let y: Vec<f64> = x.iter().map(|v| a + t * v).collect();
            assert_eq!(min_max_normalize(&seq(&y)).unwrap(), base, "a={a} t={t}");
        }
    }
}
