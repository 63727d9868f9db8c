//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Validation and domain errors.
///
/// All constructors and operations validate their inputs eagerly; no
/// operation ever returns NaN or silently clamps an invalid argument.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Catalog must contain at least two items for any rank statistic.
    #[error("catalog size must be at least 2, got {0}")]
    CatalogTooSmall(u64),

    /// A predicted-rank set must contain at least one rank.
    #[error("predicted ranks must be nonempty")]
    EmptyRanks,

    /// Ranks are 1-based positions within the catalog.
    #[error("rank {rank} out of range [1, {n}]")]
    RankOutOfRange { rank: u64, n: u64 },

    /// Each relevant item occupies a distinct position.
    #[error("duplicate rank {0}")]
    DuplicateRank(u64),

    /// Cutoffs are 1-based; `k = 0` selects nothing and is rejected.
    #[error("cutoff k must be at least 1")]
    CutoffTooSmall,

    /// Accuracy is defined as a top-1 metric.
    #[error("accuracy fixes the cutoff at 1, got k = {0}")]
    AccuracyCutoff(u64),

    /// Reciprocal rank is only defined for a single relevant item.
    #[error("reciprocal rank requires exactly one relevant item, got {0}")]
    ReciprocalRankArity(usize),

    /// AUC compares relevant against irrelevant items; with none of the
    /// latter its denominator vanishes.
    #[error("AUC is undefined when all {0} items are relevant")]
    AucAllRelevant(u64),

    /// Sampling draws at least one irrelevant item.
    #[error("sample count m must be at least 1")]
    SampleCountZero,

    /// Without replacement there are only `n - |R|` distinct irrelevant
    /// items available.
    #[error("cannot sample {m} distinct irrelevant items, only {available} exist")]
    SampleCountTooLarge { m: u64, available: u64 },

    /// CDF argument must lie within the support `0..=m+1`.
    #[error("cdf argument {k} out of range [0, {max}]")]
    CdfOutOfRange { k: u64, max: u64 },

    /// Probability vectors must be a valid distribution.
    #[error("invalid probability mass function: {0}")]
    InvalidPmf(String),

    /// Dataset lookups by algorithm name.
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),

    /// Instance ids are unique per algorithm.
    #[error("duplicate instance {instance:?} for algorithm {algorithm:?}")]
    DuplicateInstance { algorithm: String, instance: String },

    /// The analytic expectation engine handles single-relevant-item
    /// instances only; multi-relevant instances need simulation.
    #[error("analytic expected metrics require exactly one relevant item, got {0}")]
    MultiRelevantUnsupported(usize),

    /// Sweeps need at least one sample count and strictly increasing values.
    #[error("sweep sample counts must be nonempty and strictly increasing")]
    InvalidSweepGrid,

    /// Monte Carlo estimates below this repetition count are too noisy to
    /// bracket analytic values.
    #[error("monte carlo estimate requires at least 100 repetitions, got {0}")]
    TooFewRepetitions(u64),

    /// Enumeration oracles refuse instances beyond their size guards.
    #[error("oracle size guard exceeded: {0}")]
    OracleGuard(String),
}
