//! Ensembles with replicates generated on a worker pool.
//!
//! Replicates are produced in parallel and concatenated in replicate order,
//! so results do not depend on the number of workers or on scheduling.

use rayon::prelude::*;

use lmbeta_core::analysis::{EnsembleAccumulator, EnsembleOutcome, ReplicateSource};
use lmbeta_core::{EnsembleSpec, Sequence};

use crate::CliError;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "LMBETA_THREADS";

/// Worker count from [`THREADS_ENV`], `None` when unset.
pub fn worker_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Invalid(format!(
                "{THREADS_ENV} must be a positive integer, got `{s}`"
            ))),
        },
    }
}

/// Generates every replicate of `spec`, in replicate order.
pub fn generate_replicates(spec: &EnsembleSpec, threads: Option<usize>) -> Result<Vec<Sequence>, CliError> {
    let source = ReplicateSource::for_spec(spec)?;
    let seeds: Vec<u64> = spec.seeds().collect();
    let work = || {
        seeds
            .par_iter()
            .map(|&seed| source.replicate(seed))
            .collect::<Result<Vec<_>, _>>()
    };
    let replicates = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Invalid(format!("cannot start {n} workers: {e}")))?
            .install(work),
        None => work(),
    }?;
    Ok(replicates)
}

/// Normalizes and concatenates `replicates` and summarizes the result.
pub fn summarize(replicates: &[Sequence], bandwidth: f64, grid_points: usize) -> Result<EnsembleOutcome, CliError> {
    let mut acc = EnsembleAccumulator::new();
    for r in replicates {
        acc.push(r)?;
    }
    Ok(acc.finish(bandwidth, grid_points)?)
}

/// [`lmbeta_core::analysis::run_ensemble_with`] on a worker pool.
pub fn run_ensemble(
    spec: &EnsembleSpec,
    bandwidth: f64,
    grid_points: usize,
    threads: Option<usize>,
) -> Result<EnsembleOutcome, CliError> {
    summarize(&generate_replicates(spec, threads)?, bandwidth, grid_points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lmbeta_core::analysis::run_ensemble_with;
    use lmbeta_core::{Model, SeedRule};

    #[test]
    fn matches_sequential_run() {
        let spec = EnsembleSpec::new(Model::Tk95 { beta: 2.9 }, 256, 12, SeedRule::new(0, 7).unwrap()).unwrap();
        let serial = run_ensemble_with(&spec, 0.01, 128).unwrap();
        for threads in [Some(1), Some(3), None] {
            assert_eq!(run_ensemble(&spec, 0.01, 128, threads).unwrap(), serial);
        }
    }
}
