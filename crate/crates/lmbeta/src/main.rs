use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lmbeta::commands::{
    cmd_ensemble, cmd_estimate, cmd_generate, cmd_transform, EnsembleArgs, EstimateArgs, GenerateArgs, ModelFlags,
    TransformArgs, DEFAULT_BANDWIDTH, DEFAULT_N, DEFAULT_TRANSFORM_BETA,
};
use lmbeta::core::analysis::{VarianceMode, DEFAULT_GRID_POINTS};
use lmbeta::core::ModelKind;
use lmbeta::format::Column;
use lmbeta::parallel::worker_count;
use lmbeta::report::to_json;
use lmbeta::CliError;

/// Long-memory sequences and their symmetric-beta marginal distributions.
#[derive(Debug, Parser)]
#[command(name = "lmbeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one sequence, one value per line.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Output value file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Normalize and concatenate a multi-seed ensemble; write density CSV and JSON report.
    Ensemble {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        /// Replicate count [default: 200, or 100 for wold].
        #[arg(long)]
        replicates: Option<usize>,
        /// Seed of replicate i is offset + i*stride [default: 0, or 200 for wold].
        #[arg(long)]
        seed_offset: Option<u64>,
        /// [default: 7]
        #[arg(long)]
        seed_stride: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BANDWIDTH)]
        bandwidth: f64,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid_points: usize,
        /// Also report the mean periodogram slope of the raw replicates.
        #[arg(long)]
        slope: bool,
        /// Writes <prefix>_density.csv and <prefix>_report.json.
        #[arg(long, default_value = "ensemble")]
        out_prefix: PathBuf,
    },
    /// Variance ratio and shape estimate of a value file or CSV column.
    Estimate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Column name or zero-based index for multi-column files [default: last].
        #[arg(long)]
        column: Option<Column>,
        #[arg(long, value_enum, default_value_t = Mode::Sample)]
        mode: Mode,
        /// Also report the periodogram slope.
        #[arg(long)]
        slope: bool,
    },
    /// Distribution function F_B(y) = Phi(C^-1 y) on an n+1 point grid, as CSV.
    ///
    /// For beta = 0 the curve is a steep S around y = 0; indices 450..550
    /// show it in detail.
    Transform {
        #[arg(long, default_value_t = DEFAULT_TRANSFORM_BETA)]
        beta: f64,
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        /// [default: -n]
        #[arg(long, allow_hyphen_values = true)]
        grid_min: Option<f64>,
        /// [default: n]
        #[arg(long, allow_hyphen_values = true)]
        grid_max: Option<f64>,
        /// Grid spacing; must give exactly n+1 points [default: (max-min)/n].
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelName,
    /// Spectral exponent [default: 8 for tk95, 2.87 for wold].
    #[arg(long)]
    beta: Option<f64>,
    /// ARFIMA fractional order, |dfrac| < 0.5 [default: 0.22].
    #[arg(long, allow_hyphen_values = true)]
    dfrac: Option<f64>,
    /// ARFIMA integration order [default: 2].
    #[arg(long)]
    dint: Option<u32>,
    /// ARFIMA innovation variance [default: 1].
    #[arg(long)]
    sigma2: Option<f64>,
}

impl ModelArgs {
    fn split(&self) -> (ModelKind, ModelFlags) {
        let kind = match self.model {
            ModelName::Arfima => ModelKind::Arfima,
            ModelName::Tk95 => ModelKind::Tk95,
            ModelName::Wold => ModelKind::Wold,
        };
        let flags = ModelFlags {
            beta: self.beta,
            dfrac: self.dfrac,
            dint: self.dint,
            sigma2: self.sigma2,
        };
        (kind, flags)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelName {
    Arfima,
    Tk95,
    Wold,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Sample,
    Population,
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Generate { model, n, seed, out } => {
            let (model, flags) = model.split();
            let report = cmd_generate(&GenerateArgs {
                model,
                flags,
                n,
                seed,
                out,
            })?;
            Ok(to_json(&report))
        }
        Command::Ensemble {
            model,
            n,
            replicates,
            seed_offset,
            seed_stride,
            bandwidth,
            grid_points,
            slope,
            out_prefix,
        } => {
            let (model, flags) = model.split();
            let args = EnsembleArgs {
                n,
                replicates,
                seed_offset,
                seed_stride,
                bandwidth,
                grid_points,
                with_slope: slope,
                threads: worker_count()?,
                ..EnsembleArgs::new(model, flags, out_prefix)
            };
            Ok(to_json(&cmd_ensemble(&args)?))
        }
        Command::Estimate {
            input,
            column,
            mode,
            slope,
        } => {
            let report = cmd_estimate(&EstimateArgs {
                input,
                column: column.unwrap_or_default(),
                mode: match mode {
                    Mode::Sample => VarianceMode::Sample,
                    Mode::Population => VarianceMode::Population,
                },
                with_slope: slope,
            })?;
            Ok(to_json(&report))
        }
        Command::Transform {
            beta,
            n,
            grid_min,
            grid_max,
            step,
            out,
        } => {
            let args = TransformArgs {
                beta,
                n,
                grid_min: grid_min.unwrap_or(-(n as f64)),
                grid_max: grid_max.unwrap_or(n as f64),
                step,
                out,
            };
            Ok(to_json(&cmd_transform(&args)?))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(json) => {
            print!("{json}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lmbeta: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
