//! Ranking metrics under negative-item sampling.
//!
//! Offline evaluation of top-N ranking ranks one or more withheld
//! relevant items within an `n`-item catalog and summarizes the outcome
//! with a metric — AUC, Precision@k, Recall@k, average precision, or
//! NDCG. A widespread shortcut ranks the relevant item against only `m`
//! randomly sampled irrelevant items instead of the whole catalog. This
//! crate computes, exactly and analytically, what that shortcut does to
//! the numbers:
//!
//! * [`metrics`] — exact metrics from predicted ranks, in both the
//!   general multi-item form and the single-item closed forms.
//! * [`dataset`] — named algorithms over instance sets and mean metrics.
//! * [`sampling`] — the exact law of the sampled rank (binomial with
//!   replacement, hypergeometric without) plus seeded samplers.
//! * [`expected`] — analytic expected sampled metrics: the general
//!   summation engine, the AUC/Recall/AP closed forms, and the one-sample
//!   linearization that collapses every metric onto the AUC ordering.
//! * [`consistency`] — whether sampling preserves pairwise algorithm
//!   orderings, sweeps over sample counts, and crossover detection.
//! * [`oracle`] — brute-force enumeration references used by the tests.
//!
//! ```
//! use sampled_metrics::{expected, MetricSpec, SamplingScheme};
//!
//! // A relevant item at rank 100 of 10,000 has average precision 0.01,
//! // but ranked against 99 random negatives it scores 0.64 in expectation.
//! let spec: MetricSpec = "ap".parse()?;
//! let scheme = SamplingScheme::with_replacement(99)?;
//! let sampled = expected::expected_metric(100, 10_000, &scheme, &spec)?;
//! assert!((sampled - 0.6366).abs() < 1e-4);
//! # Ok::<(), sampled_metrics::Error>(())
//! ```
//!
//! The accompanying book under `book/` walks through each concept; its
//! code snippets compile and run as part of this crate's doctests.

pub mod consistency;
pub mod dataset;
mod error;
pub mod expected;
pub mod metrics;
mod numeric;
pub mod oracle;
pub mod sampling;

pub use dataset::{EvalDataset, Instance};
pub use error::{Error, Result};
pub use metrics::{exact_metric, simplified_metric, MetricKind, MetricSpec, PredictedRanks};
pub use sampling::{RankPmf, Replacement, RngStream, SamplingScheme};

/// Keeps every code block in the book compiling and passing under
/// `cargo test`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-metrics.md")]
    mod exact_metrics {}
    #[doc = include_str!("../../../book/src/rank-distribution.md")]
    mod rank_distribution {}
    #[doc = include_str!("../../../book/src/expected-metrics.md")]
    mod expected_metrics {}
    #[doc = include_str!("../../../book/src/consistency.md")]
    mod consistency {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

#[cfg(test)]
pub(crate) mod testutil {
    use crate::{EvalDataset, PredictedRanks};

    /// The three-algorithm example used throughout the tests: algorithms
    /// A, B, C with five single-relevant-item instances each over a
    /// 10,000-item catalog.
    pub(crate) fn example_dataset() -> EvalDataset {
        let mut d = EvalDataset::new();
        let table: &[(&str, &[u64])] = &[
            ("A", &[100, 100, 100, 100, 100]),
            ("B", &[40, 40, 8437, 9266, 4482]),
            ("C", &[212, 2, 743, 5342, 1548]),
        ];
        for (algo, ranks) in table {
            for (i, &r) in ranks.iter().enumerate() {
                d.add_instance(algo, &format!("x{}", i + 1), PredictedRanks::single(10_000, r).unwrap())
                    .unwrap();
            }
        }
        d
    }
}
