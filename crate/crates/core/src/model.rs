use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::circulant;
use crate::error::{Error, Result};
use crate::generators::{self, ArfimaParams};

/// Which generator produced a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    /// Fractionally differenced ARFIMA(0,d,0).
    Arfima,
    /// Timmer–König power-law noise.
    Tk95,
    /// Circulant convolution of normal innovations.
    Wold,
    /// Data that did not come from a generator in this crate.
    External,
}

impl ModelKind {
    /// Lower-case identifier used in reports and on the command line.
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Arfima => "arfima",
            ModelKind::Tk95 => "tk95",
            ModelKind::Wold => "wold",
            ModelKind::External => "external",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Provenance attached to a [`Sequence`].
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceMeta {
    /// Generator identifier.
    pub model: ModelKind,
    /// Generator parameters by name.
    pub params: BTreeMap<String, f64>,
    /// Seed of the innovation stream, if any.
    pub seed: Option<u64>,
}

impl SequenceMeta {
    /// Metadata for data read from outside the crate.
    pub fn external() -> Self {
        Self {
            model: ModelKind::External,
            params: BTreeMap::new(),
            seed: None,
        }
    }
}

/// A finite, non-empty real series together with how it was generated.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    values: Vec<f64>,
    meta: SequenceMeta,
}

impl Sequence {
    /// Wraps `values`, rejecting empty input and non-finite elements.
    pub fn new(values: Vec<f64>, meta: SequenceMeta) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort { needed: 1, found: 0 });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { values, meta })
    }

    /// Wraps values with [`SequenceMeta::external`].
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::new(values, SequenceMeta::external())
    }

    /// The series.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of elements (always at least one).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always `false`; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Generation metadata.
    pub fn meta(&self) -> &SequenceMeta {
        &self.meta
    }

    /// Smallest element.
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest element.
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `max - min`.
    pub fn range(&self) -> f64 {
        self.max() - self.min()
    }

    /// Same metadata, new values. Values must stay finite.
    pub(crate) fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(values, self.meta.clone())
    }

    /// Consumes the sequence, returning its values.
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Power-law spectral trend `k·|f|^-β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdTrend {
    k: f64,
    beta: f64,
}

impl PsdTrend {
    /// Requires `k > 0` and `beta >= 0`, both finite.
    pub fn new(k: f64, beta: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::invalid("k", "scale must be finite and > 0"));
        }
        check_beta(beta)?;
        Ok(Self { k, beta })
    }

    /// Unit-scale trend `|f|^-β`.
    pub fn unit(beta: f64) -> Result<Self> {
        Self::new(1.0, beta)
    }

    /// Scale `k`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Spectral exponent `β`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Power at frequency `f`; infinite at `f = 0` when `β > 0`.
    pub fn power(&self, f: f64) -> f64 {
        self.k * libm::pow(libm::fabs(f), -self.beta)
    }

    /// Fourier amplitude `√power(f)`.
    pub fn amplitude(&self, f: f64) -> f64 {
        libm::sqrt(self.k) * libm::pow(libm::fabs(f), -self.beta / 2.0)
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("beta", "spectral exponent must be finite and >= 0"))
    }
}

/// A generator together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// ARFIMA(0, dint + dfrac, 0).
    Arfima(ArfimaParams),
    /// Timmer–König synthesis with spectral exponent `beta`.
    Tk95 {
        /// Spectral exponent.
        beta: f64,
    },
    /// Circulant convolution with spectral exponent `beta`.
    Wold {
        /// Spectral exponent.
        beta: f64,
    },
}

impl Model {
    /// Generator identifier.
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Arfima(_) => ModelKind::Arfima,
            Model::Tk95 { .. } => ModelKind::Tk95,
            Model::Wold { .. } => ModelKind::Wold,
        }
    }

    /// Parameters keyed by name, in the form stored in [`SequenceMeta`].
    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut map = BTreeMap::new();
        match *self {
            Model::Arfima(p) => {
                map.insert("dfrac".into(), p.dfrac());
                map.insert("dint".into(), p.dint() as f64);
                map.insert("sigma2".into(), p.sigma2());
            }
            Model::Tk95 { beta } | Model::Wold { beta } => {
                map.insert("beta".into(), beta);
            }
        }
        map
    }

    /// Checks the parameters and the length `n` against the generator's preconditions.
    pub fn validate(&self, n: usize) -> Result<()> {
        match *self {
            Model::Arfima(_) => {
                if n == 0 {
                    return Err(Error::invalid("n", "length must be >= 1"));
                }
                Ok(())
            }
            Model::Tk95 { beta } => {
                check_beta(beta)?;
                generators::check_tk95_len(n)
            }
            Model::Wold { beta } => {
                check_beta(beta)?;
                circulant::check_wold_len(n)
            }
        }
    }

    /// Generates one replicate. Wold output has `n + 1` elements, the others `n`.
    pub fn generate(&self, n: usize, seed: u64) -> Result<Sequence> {
        match *self {
            Model::Arfima(p) => generators::simulate_arfima(&p, n, seed),
            Model::Tk95 { beta } => generators::simulate_tk95(beta, n, seed),
            Model::Wold { beta } => circulant::simulate_wold(beta, n, seed),
        }
    }

    /// Replicate count and seed rule used by the reference ensembles:
    /// 200 replicates seeded `7i` for ARFIMA and TK95, 100 replicates seeded
    /// `200 + 7i` for the circulant model.
    pub fn default_ensemble(&self) -> (usize, SeedRule) {
        match self {
            Model::Wold { .. } => (100, SeedRule::new(200, 7).expect("nonzero stride")),
            _ => (200, SeedRule::new(0, 7).expect("nonzero stride")),
        }
    }
}

/// Affine replicate seeding `seed(i) = offset + i·stride`, `i = 1, 2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedRule {
    offset: u64,
    stride: u64,
}

impl SeedRule {
    /// `stride` must be nonzero so that replicates get distinct seeds.
    pub fn new(offset: u64, stride: u64) -> Result<Self> {
        if stride == 0 {
            return Err(Error::invalid("stride", "seed stride must be nonzero"));
        }
        Ok(Self { offset, stride })
    }

    /// Seed offset.
    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// Seed stride.
    pub fn stride(&self) -> u64 {
        self.stride
    }

    /// Seed of replicate `i` (1-based), wrapping on overflow.
    pub fn seed(&self, i: u64) -> u64 {
        self.offset.wrapping_add(i.wrapping_mul(self.stride))
    }
}

/// A multi-seed ensemble: `replicates` runs of `model` at length `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    model: Model,
    replicates: usize,
    n: usize,
    seed_rule: SeedRule,
}

impl EnsembleSpec {
    /// Validates the model at length `n` and requires `replicates >= 1`.
    pub fn new(model: Model, n: usize, replicates: usize, seed_rule: SeedRule) -> Result<Self> {
        if replicates == 0 {
            return Err(Error::invalid("replicates", "need at least one replicate"));
        }
        model.validate(n)?;
        Ok(Self {
            model,
            replicates,
            n,
            seed_rule,
        })
    }

    /// Spec using [`Model::default_ensemble`] for replicates and seeds.
    pub fn with_defaults(model: Model, n: usize) -> Result<Self> {
        let (replicates, rule) = model.default_ensemble();
        Self::new(model, n, replicates, rule)
    }

    /// Generator.
    pub fn model(&self) -> &Model {
        &self.model
    }

    /// Number of replicates.
    pub fn replicates(&self) -> usize {
        self.replicates
    }

    /// Length parameter passed to the generator.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Replicate seeding.
    pub fn seed_rule(&self) -> SeedRule {
        self.seed_rule
    }

    /// Seeds for replicates `1..=replicates`, in order.
    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.replicates as u64).map(move |i| self.seed_rule.seed(i))
    }
}
