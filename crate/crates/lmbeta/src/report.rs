//! JSON reports printed by the commands.
//!
//! Reports go through [`serde_json::Value`], whose maps are sorted by key,
//! so documents have a stable key order. The schema is in
//! `docs/report-schema.json`.

use std::collections::BTreeMap;

use serde::Serialize;

use lmbeta_core::analysis::BetaShapeReport;

/// Summary of a `generate` or `ensemble` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    /// `"generate"` or `"ensemble"`.
    pub command: String,
    /// Generator identifier.
    pub model: String,
    /// Generator parameters.
    pub params: BTreeMap<String, f64>,
    /// Length parameter.
    pub n: usize,
    /// Number of values each replicate has (`n + 1` for the circulant model).
    pub replicate_len: usize,
    /// Replicate count (1 for `generate`).
    pub replicates: usize,
    /// Seeds used, replicate 1 first.
    pub seeds: Seeds,
    /// Kernel bandwidth, ensembles only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<f64>,
    /// Variance under `variance_mode`.
    pub variance: f64,
    /// `variance / range²`.
    pub ratio: f64,
    /// Shape estimate, `null` when the ratio is outside `(0, 1/4]`.
    pub alpha_hat: Option<f64>,
    /// Range of the summarized data.
    pub range: f64,
    /// Population ratio is at most 1/4.
    pub popoviciu_ok: bool,
    /// `"sample"` or `"population"`.
    pub variance_mode: String,
    /// Constant replicates dropped from the ensemble.
    pub skipped_replicates: usize,
    /// Mean periodogram slope over replicates, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodogram_slope: Option<f64>,
    /// Files written.
    pub outputs: Vec<String>,
}

/// Seed echo: a single seed or an affine rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Seeds {
    /// One replicate.
    Single(u64),
    /// `offset + i·stride`, `i = 1..=replicates`.
    Rule {
        /// Seed offset.
        offset: u64,
        /// Seed stride.
        stride: u64,
    },
}

/// Output of `estimate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeReport {
    /// Number of values read.
    pub n: usize,
    /// Variance under `variance_mode`.
    pub variance: f64,
    /// `variance / range²`.
    pub ratio: f64,
    /// Shape estimate, `null` when the ratio is outside `(0, 1/4]`.
    pub alpha_hat: Option<f64>,
    /// `max − min`.
    pub range: f64,
    /// Population ratio is at most 1/4.
    pub popoviciu_ok: bool,
    /// `"sample"` or `"population"`.
    pub variance_mode: String,
    /// Periodogram slope, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodogram_slope: Option<f64>,
}

impl ShapeReport {
    /// Copies the fields of a core report.
    pub fn new(n: usize, r: &BetaShapeReport, periodogram_slope: Option<f64>) -> Self {
        Self {
            n,
            variance: r.variance,
            ratio: r.ratio,
            alpha_hat: r.alpha_hat,
            range: r.range,
            popoviciu_ok: r.popoviciu_ok,
            variance_mode: r.variance_mode.as_str().to_string(),
            periodogram_slope,
        }
    }
}

/// Output of `transform`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformReport {
    /// Spectral exponent.
    pub beta: f64,
    /// Length parameter; the grid has `n + 1` points.
    pub n: usize,
    /// First grid point.
    pub grid_min: f64,
    /// Last grid point.
    pub grid_max: f64,
    /// Number of grid points.
    pub points: usize,
    /// Smallest and largest distribution-function value.
    pub cdf_min: f64,
    /// See `cdf_min`.
    pub cdf_max: f64,
    /// Files written.
    pub outputs: Vec<String>,
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports contain only finite numbers");
    let mut s = serde_json::to_string_pretty(&value).expect("serializing a Value cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let r = TransformReport {
            beta: 0.75,
            n: 4,
            grid_min: -4.0,
            grid_max: 4.0,
            points: 5,
            cdf_min: 0.1,
            cdf_max: 0.9,
            outputs: vec!["t.csv".into()],
        };
        let s = to_json(&r);
        let keys: Vec<&str> = s
            .lines()
            .filter_map(|l| l.trim().strip_prefix('"'))
            .filter_map(|l| l.split('"').next())
            .filter(|k| !k.ends_with(".csv"))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(s.ends_with("}\n"));
    }

    #[test]
    fn seed_echo_shapes() {
        assert_eq!(serde_json::to_string(&Seeds::Single(7)).unwrap(), r#"{"single":7}"#);
        assert_eq!(
            serde_json::to_value(Seeds::Rule { offset: 200, stride: 7 }).unwrap(),
            serde_json::json!({"rule": {"offset": 200, "stride": 7}})
        );
    }
}
