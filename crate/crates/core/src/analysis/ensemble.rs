use alloc::vec::Vec;

use super::kde::{kde, KernelDensity, DEFAULT_GRID_POINTS};
use super::moments::{min_max_normalize, BetaShapeReport, VarianceMode};
use crate::circulant::{simulate_wold_with, wold_operator, CirculantOperator};
use crate::error::{Error, Result};
use crate::model::{EnsembleSpec, Model, Sequence};

/// Generates replicates of one model at a fixed length.
///
/// For the circulant model the operator is built once and shared. The source
/// is immutable, so one instance can serve concurrent workers.
#[derive(Debug, Clone)]
pub struct ReplicateSource {
    model: Model,
    n: usize,
    wold: Option<CirculantOperator>,
}

impl ReplicateSource {
    /// Validates `model` at length `n` and precomputes what replicates share.
    pub fn new(model: Model, n: usize) -> Result<Self> {
        model.validate(n)?;
        let wold = match model {
            Model::Wold { beta } => Some(wold_operator(beta, n)?),
            _ => None,
        };
        Ok(Self { model, n, wold })
    }

    /// Source for `spec`'s model and length.
    pub fn for_spec(spec: &EnsembleSpec) -> Result<Self> {
        Self::new(*spec.model(), spec.n())
    }

    /// One replicate for `seed`.
    pub fn replicate(&self, seed: u64) -> Result<Sequence> {
        match (&self.model, &self.wold) {
            (Model::Wold { beta }, Some(op)) => simulate_wold_with(op, *beta, seed),
            (model, _) => model.generate(self.n, seed),
        }
    }
}

/// Collects min-max normalized replicates in the order they are pushed.
#[derive(Debug, Clone, Default)]
pub struct EnsembleAccumulator {
    data: Vec<f64>,
    used: usize,
    skipped: usize,
}

impl EnsembleAccumulator {
    /// Empty accumulator.
    pub fn new() -> Self {
        Self::default()
    }

    /// Normalizes `replicate` and appends it. Constant replicates are counted
    /// as skipped and otherwise ignored.
    pub fn push(&mut self, replicate: &Sequence) -> Result<()> {
        match min_max_normalize(replicate) {
            Ok(z) => {
                self.data.extend_from_slice(z.values());
                self.used += 1;
                Ok(())
            }
            Err(Error::ConstantSequence) => {
                self.skipped += 1;
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    /// Concatenated normalized values.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Replicates appended so far.
    pub fn used(&self) -> usize {
        self.used
    }

    /// Constant replicates dropped so far.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    /// Sample-variance shape report and kernel density of the concatenation.
    pub fn finish(self, bandwidth: f64, grid_points: usize) -> Result<EnsembleOutcome> {
        if self.used == 0 {
            return Err(Error::ConstantSequence);
        }
        let data = Sequence::from_values(self.data)?;
        let report = BetaShapeReport::from_sequence(&data, VarianceMode::Sample)?;
        let density = kde(data.values(), bandwidth, grid_points)?;
        Ok(EnsembleOutcome {
            report,
            density,
            used_replicates: self.used,
            skipped_replicates: self.skipped,
            data: data.into_values(),
        })
    }
}

/// Result of an ensemble run.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleOutcome {
    /// Statistics of the concatenated normalized data (sample variance).
    pub report: BetaShapeReport,
    /// Kernel density of the concatenated normalized data.
    pub density: KernelDensity,
    /// Replicates that entered the concatenation.
    pub used_replicates: usize,
    /// Constant replicates that were dropped.
    pub skipped_replicates: usize,
    /// The concatenated normalized data, replicate 1 first.
    pub data: Vec<f64>,
}

/// Runs `spec` sequentially with a [`DEFAULT_GRID_POINTS`] density grid.
pub fn run_ensemble(spec: &EnsembleSpec, bandwidth: f64) -> Result<EnsembleOutcome> {
    run_ensemble_with(spec, bandwidth, DEFAULT_GRID_POINTS)
}

/// Generates replicates `1..=replicates` with seeds from the spec's rule,
/// min-max normalizes each, concatenates them in replicate order, and
/// summarizes the result.
pub fn run_ensemble_with(spec: &EnsembleSpec, bandwidth: f64, grid_points: usize) -> Result<EnsembleOutcome> {
    let source = ReplicateSource::for_spec(spec)?;
    let mut acc = EnsembleAccumulator::new();
    for seed in spec.seeds() {
        acc.push(&source.replicate(seed)?)?;
    }
    acc.finish(bandwidth, grid_points)
}
