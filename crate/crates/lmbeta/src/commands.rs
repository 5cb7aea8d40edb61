//! The four commands: `generate`, `ensemble`, `estimate`, `transform`.
//!
//! Defaults follow the reference R listings: `n = 1000`, bandwidth 0.01,
//! 200 replicates seeded `7i` for ARFIMA/TK95 and 100 seeded `200 + 7i` for
//! the circulant model, ARFIMA `dfrac = 0.22, dint = 2, sigma2 = 1`.

use std::path::{Path, PathBuf};

use lmbeta_core::analysis::{periodogram_slope, BetaShapeReport, VarianceMode, DEFAULT_GRID_POINTS};
use lmbeta_core::circulant::{linear_grid, transform_cdf};
use lmbeta_core::generators::ArfimaParams;
use lmbeta_core::{EnsembleSpec, Model, ModelKind, SeedRule, Sequence};

use crate::format::{read_values, render_csv, render_values, write_file, Column};
use crate::parallel;
use crate::report::{RunReport, Seeds, ShapeReport, TransformReport};
use crate::CliError;

/// Default length parameter.
pub const DEFAULT_N: usize = 1000;
/// Default kernel bandwidth.
pub const DEFAULT_BANDWIDTH: f64 = 0.01;
/// Default ARFIMA fractional order.
pub const DEFAULT_DFRAC: f64 = 0.22;
/// Default ARFIMA integration order.
pub const DEFAULT_DINT: u32 = 2;
/// Default TK95 spectral exponent.
pub const DEFAULT_TK95_BETA: f64 = 8.0;
/// Default circulant-model spectral exponent.
pub const DEFAULT_WOLD_BETA: f64 = 2.87;
/// Default transformation exponent.
pub const DEFAULT_TRANSFORM_BETA: f64 = 0.75;

/// Model flags as given on the command line; unset fields take defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModelFlags {
    /// Spectral exponent (tk95, wold).
    pub beta: Option<f64>,
    /// Fractional order (arfima).
    pub dfrac: Option<f64>,
    /// Integration order (arfima).
    pub dint: Option<u32>,
    /// Innovation variance (arfima).
    pub sigma2: Option<f64>,
}

impl ModelFlags {
    /// Resolves the flags for `kind`, rejecting flags that do not apply.
    pub fn resolve(&self, kind: ModelKind) -> Result<Model, CliError> {
        let arfima_only = self.dfrac.is_some() || self.dint.is_some() || self.sigma2.is_some();
        match kind {
            ModelKind::Arfima => {
                if self.beta.is_some() {
                    return Err(CliError::Invalid("--beta does not apply to arfima (use --dfrac/--dint)".into()));
                }
                let p = ArfimaParams::new(
                    self.dfrac.unwrap_or(DEFAULT_DFRAC),
                    self.dint.unwrap_or(DEFAULT_DINT),
                    self.sigma2.unwrap_or(1.0),
                )?;
                Ok(Model::Arfima(p))
            }
            ModelKind::Tk95 | ModelKind::Wold => {
                if arfima_only {
                    return Err(CliError::Invalid(format!(
                        "--dfrac/--dint/--sigma2 do not apply to {kind}"
                    )));
                }
                let beta = self.beta.unwrap_or(if kind == ModelKind::Tk95 {
                    DEFAULT_TK95_BETA
                } else {
                    DEFAULT_WOLD_BETA
                });
                Ok(if kind == ModelKind::Tk95 {
                    Model::Tk95 { beta }
                } else {
                    Model::Wold { beta }
                })
            }
            ModelKind::External => Err(CliError::Invalid("no generator for external data".into())),
        }
    }
}

/// Arguments of [`cmd_generate`].
#[derive(Debug, Clone)]
pub struct GenerateArgs {
    /// Generator.
    pub model: ModelKind,
    /// Generator parameters.
    pub flags: ModelFlags,
    /// Length parameter.
    pub n: usize,
    /// Innovation seed.
    pub seed: u64,
    /// Value file to write.
    pub out: PathBuf,
}

/// Generates one sequence and writes it one value per line.
pub fn cmd_generate(args: &GenerateArgs) -> Result<RunReport, CliError> {
    let model = args.flags.resolve(args.model)?;
    model.validate(args.n)?;
    let x = model.generate(args.n, args.seed)?;
    write_file(&args.out, &render_values(x.values()))?;
    let stats = BetaShapeReport::from_sequence(&x, VarianceMode::Sample)?;
    Ok(RunReport {
        command: "generate".into(),
        model: model.kind().to_string(),
        params: model.params(),
        n: args.n,
        replicate_len: x.len(),
        replicates: 1,
        seeds: Seeds::Single(args.seed),
        bandwidth: None,
        variance: stats.variance,
        ratio: stats.ratio,
        alpha_hat: stats.alpha_hat,
        range: stats.range,
        popoviciu_ok: stats.popoviciu_ok,
        variance_mode: stats.variance_mode.to_string(),
        skipped_replicates: 0,
        periodogram_slope: None,
        outputs: vec![display(&args.out)],
    })
}

/// Arguments of [`cmd_ensemble`].
#[derive(Debug, Clone)]
pub struct EnsembleArgs {
    /// Generator.
    pub model: ModelKind,
    /// Generator parameters.
    pub flags: ModelFlags,
    /// Length parameter.
    pub n: usize,
    /// Replicate count; model default when `None`.
    pub replicates: Option<usize>,
    /// Seed offset; model default when `None`.
    pub seed_offset: Option<u64>,
    /// Seed stride; model default when `None`.
    pub seed_stride: Option<u64>,
    /// Kernel bandwidth.
    pub bandwidth: f64,
    /// Density grid size.
    pub grid_points: usize,
    /// Also report the mean periodogram slope of the raw replicates.
    pub with_slope: bool,
    /// Output prefix for `<prefix>_density.csv` and `<prefix>_report.json`.
    pub out_prefix: PathBuf,
    /// Worker count; all cores when `None`.
    pub threads: Option<usize>,
}

impl EnsembleArgs {
    /// Defaults for `model` writing to `out_prefix`.
    pub fn new(model: ModelKind, flags: ModelFlags, out_prefix: impl Into<PathBuf>) -> Self {
        Self {
            model,
            flags,
            n: DEFAULT_N,
            replicates: None,
            seed_offset: None,
            seed_stride: None,
            bandwidth: DEFAULT_BANDWIDTH,
            grid_points: DEFAULT_GRID_POINTS,
            with_slope: false,
            out_prefix: out_prefix.into(),
            threads: None,
        }
    }

    /// Resolved ensemble specification.
    pub fn spec(&self) -> Result<EnsembleSpec, CliError> {
        let model = self.flags.resolve(self.model)?;
        let (replicates, rule) = model.default_ensemble();
        let rule = SeedRule::new(
            self.seed_offset.unwrap_or(rule.offset()),
            self.seed_stride.unwrap_or(rule.stride()),
        )?;
        Ok(EnsembleSpec::new(model, self.n, self.replicates.unwrap_or(replicates), rule)?)
    }

    /// `<prefix>_density.csv`.
    pub fn density_path(&self) -> PathBuf {
        suffixed(&self.out_prefix, "_density.csv")
    }

    /// `<prefix>_report.json`.
    pub fn report_path(&self) -> PathBuf {
        suffixed(&self.out_prefix, "_report.json")
    }
}

/// Runs an ensemble and writes its density CSV and JSON report.
pub fn cmd_ensemble(args: &EnsembleArgs) -> Result<RunReport, CliError> {
    if !(args.bandwidth.is_finite() && args.bandwidth > 0.0) {
        return Err(CliError::Invalid(format!("bandwidth must be > 0, got {}", args.bandwidth)));
    }
    let spec = args.spec()?;
    let replicates = parallel::generate_replicates(&spec, args.threads)?;
    let slope = if args.with_slope {
        let mut total = 0.0;
        for r in &replicates {
            total += periodogram_slope(r)?;
        }
        Some(total / replicates.len() as f64)
    } else {
        None
    };
    let outcome = parallel::summarize(&replicates, args.bandwidth, args.grid_points)?;

    let density_path = args.density_path();
    let report_path = args.report_path();
    write_file(
        &density_path,
        &render_csv(&["grid", "density"], &[&outcome.density.grid, &outcome.density.values]),
    )?;
    let model = spec.model();
    let rule = spec.seed_rule();
    let stats = &outcome.report;
    let report = RunReport {
        command: "ensemble".into(),
        model: model.kind().to_string(),
        params: model.params(),
        n: spec.n(),
        replicate_len: replicates[0].len(),
        replicates: spec.replicates(),
        seeds: Seeds::Rule {
            offset: rule.offset(),
            stride: rule.stride(),
        },
        bandwidth: Some(args.bandwidth),
        variance: stats.variance,
        ratio: stats.ratio,
        alpha_hat: stats.alpha_hat,
        range: stats.range,
        popoviciu_ok: stats.popoviciu_ok,
        variance_mode: stats.variance_mode.to_string(),
        skipped_replicates: outcome.skipped_replicates,
        periodogram_slope: slope,
        outputs: vec![display(&density_path), display(&report_path)],
    };
    write_file(&report_path, &crate::report::to_json(&report))?;
    Ok(report)
}

/// Arguments of [`cmd_estimate`].
#[derive(Debug, Clone)]
pub struct EstimateArgs {
    /// Value file or CSV.
    pub input: PathBuf,
    /// Column of a multi-column file.
    pub column: Column,
    /// Variance divisor.
    pub mode: VarianceMode,
    /// Also report the periodogram slope.
    pub with_slope: bool,
}

/// Estimates the variance ratio and shape of externally supplied data.
pub fn cmd_estimate(args: &EstimateArgs) -> Result<ShapeReport, CliError> {
    let values = read_values(&args.input, &args.column)?;
    if values.len() < 2 {
        return Err(CliError::Invalid(format!(
            "{}: need at least 2 values, found {}",
            args.input.display(),
            values.len()
        )));
    }
    let x = Sequence::from_values(values)?;
    let report = BetaShapeReport::from_sequence(&x, args.mode).map_err(|e| match e {
        lmbeta_core::Error::ConstantSequence => {
            CliError::Invalid(format!("{}: all values are equal", args.input.display()))
        }
        other => other.into(),
    })?;
    let slope = if args.with_slope {
        Some(periodogram_slope(&x)?)
    } else {
        None
    };
    Ok(ShapeReport::new(x.len(), &report, slope))
}

/// Arguments of [`cmd_transform`].
#[derive(Debug, Clone)]
pub struct TransformArgs {
    /// Spectral exponent of the circulant.
    pub beta: f64,
    /// Length parameter; the grid needs `n + 1` points.
    pub n: usize,
    /// First grid point.
    pub grid_min: f64,
    /// Last grid point.
    pub grid_max: f64,
    /// Grid spacing; derived from `n` when `None`.
    pub step: Option<f64>,
    /// CSV to write.
    pub out: PathBuf,
}

impl TransformArgs {
    /// Defaults: `β = 0.75`, `n = 1000`, grid `-1000..=1000` by 2.
    pub fn new(out: impl Into<PathBuf>) -> Self {
        Self {
            beta: DEFAULT_TRANSFORM_BETA,
            n: DEFAULT_N,
            grid_min: -(DEFAULT_N as f64),
            grid_max: DEFAULT_N as f64,
            step: None,
            out: out.into(),
        }
    }

    /// The evaluation grid; fails unless it has exactly `n + 1` points.
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        if !(self.grid_min.is_finite() && self.grid_max.is_finite() && self.grid_min < self.grid_max) {
            return Err(CliError::Invalid(format!(
                "grid bounds must be finite with min < max, got [{}, {}]",
                self.grid_min, self.grid_max
            )));
        }
        let points = self.n + 1;
        if let Some(step) = self.step {
            if !(step.is_finite() && step > 0.0) {
                return Err(CliError::Invalid(format!("--step must be > 0, got {step}")));
            }
            let span = (self.grid_max - self.grid_min) / step;
            let count = span.round() as usize + 1;
            if (span - span.round()).abs() > 1e-9 * span.max(1.0) || count != points {
                return Err(CliError::Invalid(format!(
                    "grid {}..={} by {step} does not have n + 1 = {points} points",
                    self.grid_min, self.grid_max
                )));
            }
        }
        Ok(linear_grid(self.grid_min, self.grid_max, points))
    }
}

/// Writes `(y, F_B(y))` pairs of the normal-to-beta transformation.
pub fn cmd_transform(args: &TransformArgs) -> Result<TransformReport, CliError> {
    let grid = args.grid()?;
    let result = transform_cdf(args.beta, args.n, &grid)?;
    write_file(&args.out, &render_csv(&["y", "cdf"], &[&result.y_grid, &result.cdf_values]))?;
    let cdf_min = result.cdf_values.iter().copied().fold(f64::INFINITY, f64::min);
    let cdf_max = result.cdf_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(TransformReport {
        beta: args.beta,
        n: args.n,
        grid_min: args.grid_min,
        grid_max: args.grid_max,
        points: grid.len(),
        cdf_min,
        cdf_max,
        outputs: vec![display(&args.out)],
    })
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_resolution() {
        let f = ModelFlags::default();
        assert_eq!(f.resolve(ModelKind::Tk95).unwrap(), Model::Tk95 { beta: 8.0 });
        assert_eq!(f.resolve(ModelKind::Wold).unwrap(), Model::Wold { beta: 2.87 });
        match f.resolve(ModelKind::Arfima).unwrap() {
            Model::Arfima(p) => assert_eq!((p.dfrac(), p.dint(), p.sigma2()), (0.22, 2, 1.0)),
            m => panic!("{m:?}"),
        }
        let bad = ModelFlags { dfrac: Some(0.6), ..f };
        assert_eq!(bad.resolve(ModelKind::Arfima).unwrap_err().exit_code(), 2);
        let mixed = ModelFlags { beta: Some(1.0), ..f };
        assert!(mixed.resolve(ModelKind::Arfima).is_err());
        let mixed = ModelFlags { dint: Some(1), ..f };
        assert!(mixed.resolve(ModelKind::Wold).is_err());
    }

    #[test]
    fn transform_grid_rules() {
        let args = TransformArgs::new("x.csv");
        let g = args.grid().unwrap();
        assert_eq!((g.len(), g[0], g[1], g[1000]), (1001, -1000.0, -998.0, 1000.0));
        let with_step = TransformArgs { step: Some(2.0), ..args.clone() };
        assert_eq!(with_step.grid().unwrap(), g);
        let wrong = TransformArgs { step: Some(1.0), ..args.clone() };
        assert_eq!(wrong.grid().unwrap_err().exit_code(), 2);
        let inverted = TransformArgs { grid_min: 5.0, grid_max: -5.0, ..args };
        assert!(inverted.grid().is_err());
    }

    #[test]
    fn output_paths() {
        let a = EnsembleArgs::new(ModelKind::Tk95, ModelFlags::default(), "/tmp/run1");
        assert_eq!(a.density_path(), PathBuf::from("/tmp/run1_density.csv"));
        assert_eq!(a.report_path(), PathBuf::from("/tmp/run1_report.json"));
        let spec = a.spec().unwrap();
        assert_eq!((spec.replicates(), spec.seed_rule().stride()), (200, 7));
    }
}
