//! Does sampled evaluation preserve the ordering of algorithms?
//!
//! A metric is consistent under a sampling scheme when, for every pair of
//! algorithms, the sign of the difference of their mean exact metrics
//! equals the sign of the difference of their mean *expected* sampled
//! metrics. [`check_consistency`] evaluates that analytically — it is a
//! statement about expectations, so no Monte Carlo is involved.
//! [`sweep_m`] traces the expected means across sample counts, and
//! [`crossover_points`] locates where the pairwise ordering flips.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::dataset::EvalDataset;
use crate::error::{Error, Result};
use crate::expected::expected_mean_metric;
use crate::metrics::MetricSpec;
use crate::sampling::{Replacement, SamplingScheme};

/// Differences smaller than this are ties: exactly equal means must not
/// be reported as inversions, and the ordering predicate uses strict
/// inequality with no tolerance of its own.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Three-way ordering of two mean metric values with the tie tolerance
/// applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderRel {
    Less,
    Equal,
    Greater,
}

impl OrderRel {
    fn from_delta(delta: f64) -> Self {
        if delta.abs() < TIE_TOLERANCE {
            OrderRel::Equal
        } else if delta > 0.0 {
            OrderRel::Greater
        } else {
            OrderRel::Less
        }
    }

    fn flipped(self) -> Self {
        match self {
            OrderRel::Less => OrderRel::Greater,
            OrderRel::Equal => OrderRel::Equal,
            OrderRel::Greater => OrderRel::Less,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            OrderRel::Less => "<",
            OrderRel::Equal => "=",
            OrderRel::Greater => ">",
        }
    }
}

/// Ordering of one algorithm pair under exact and expected-sampled means.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairComparison {
    pub first: String,
    pub second: String,
    /// Ordering of `first` vs `second` on mean exact metrics.
    pub exact: OrderRel,
    /// Ordering of `first` vs `second` on mean expected sampled metrics.
    pub sampled: OrderRel,
    /// True iff the two orderings agree.
    pub consistent: bool,
}

/// Full pairwise comparison of a dataset under one metric and scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub spec: MetricSpec,
    pub scheme: SamplingScheme,
    /// Mean exact metric per algorithm.
    pub exact_means: BTreeMap<String, f64>,
    /// Mean expected sampled metric per algorithm.
    pub expected_means: BTreeMap<String, f64>,
    /// One entry per unordered pair, names in lexicographic order.
    pub pairs: Vec<PairComparison>,
}

impl ComparisonReport {
    /// Pair lookup in either name order; the orderings flip accordingly.
    pub fn pair(&self, a: &str, b: &str) -> Option<PairComparison> {
        self.pairs.iter().find_map(|p| {
            if p.first == a && p.second == b {
                Some(p.clone())
            } else if p.first == b && p.second == a {
                Some(PairComparison {
                    first: b.to_string(),
                    second: a.to_string(),
                    exact: p.exact.flipped(),
                    sampled: p.sampled.flipped(),
                    consistent: p.consistent,
                })
            } else {
                None
            }
        })
    }

    /// Whether the pair keeps its ordering, in either name order.
    pub fn consistent(&self, a: &str, b: &str) -> Option<bool> {
        self.pair(a, b).map(|p| p.consistent)
    }

    /// Pairs whose ordering the sampled expectation inverts.
    pub fn inversions(&self) -> impl Iterator<Item = &PairComparison> {
        self.pairs.iter().filter(|p| !p.consistent)
    }

    pub fn all_consistent(&self) -> bool {
        self.pairs.iter().all(|p| p.consistent)
    }
}

/// Compares every algorithm pair's exact ordering against its expected
/// sampled ordering. All instances must have one relevant item.
pub fn check_consistency(
    dataset: &EvalDataset,
    spec: &MetricSpec,
    scheme: &SamplingScheme,
) -> Result<ComparisonReport> {
    let mut exact_means = BTreeMap::new();
    let mut expected_means = BTreeMap::new();
    for algo in dataset.algorithms() {
        exact_means.insert(algo.to_string(), crate::dataset::mean_metric(dataset, algo, spec)?);
        expected_means.insert(algo.to_string(), expected_mean_metric(dataset, algo, scheme, spec)?);
    }
    let names: Vec<&String> = exact_means.keys().collect();
    let mut pairs = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let exact = OrderRel::from_delta(exact_means[*a] - exact_means[*b]);
            let sampled = OrderRel::from_delta(expected_means[*a] - expected_means[*b]);
            pairs.push(PairComparison {
                first: (*a).clone(),
                second: (*b).clone(),
                exact,
                sampled,
                consistent: exact == sampled,
            });
        }
    }
    Ok(ComparisonReport {
        spec: *spec,
        scheme: *scheme,
        exact_means,
        expected_means,
        pairs,
    })
}

/// Expected mean metrics per algorithm traced over a grid of sample
/// counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: MetricSpec,
    pub replacement: Replacement,
    /// Strictly increasing sample counts.
    pub m_values: Vec<u64>,
    /// One expected mean per `m_values` entry, per algorithm.
    pub means: BTreeMap<String, Vec<f64>>,
}

/// Evaluates [`expected_mean_metric`] for every algorithm at every sample
/// count in `m_values`.
pub fn sweep_m(
    dataset: &EvalDataset,
    spec: &MetricSpec,
    m_values: &[u64],
    replacement: Replacement,
) -> Result<SweepResult> {
    if m_values.is_empty() || m_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSweepGrid);
    }
    let mut means: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for algo in dataset.algorithms() {
        let mut row = Vec::with_capacity(m_values.len());
        for &m in m_values {
            let scheme = SamplingScheme::new(m, replacement)?;
            row.push(expected_mean_metric(dataset, algo, &scheme, spec)?);
        }
        means.insert(algo.to_string(), row);
    }
    Ok(SweepResult { spec: *spec, replacement, m_values: m_values.to_vec(), means })
}

/// An ordering flip of one algorithm pair between two consecutive sample
/// counts of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossover {
    pub first: String,
    pub second: String,
    /// Sample count before the flip.
    pub m_before: u64,
    /// Sample count after the flip.
    pub m_after: u64,
}

/// Locates every consecutive pair of sweep points between which the sign
/// of a pairwise difference strictly flips. A stable ordering yields an
/// empty list.
pub fn crossover_points(sweep: &SweepResult) -> Vec<Crossover> {
    let names: Vec<&String> = sweep.means.keys().collect();
    let mut crossovers = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let row_a = &sweep.means[*a];
            let row_b = &sweep.means[*b];
            for w in 0..sweep.m_values.len().saturating_sub(1) {
                let before = OrderRel::from_delta(row_a[w] - row_b[w]);
                let after = OrderRel::from_delta(row_a[w + 1] - row_b[w + 1]);
                let flipped = matches!(
                    (before, after),
                    (OrderRel::Less, OrderRel::Greater) | (OrderRel::Greater, OrderRel::Less)
                );
                if flipped {
                    crossovers.push(Crossover {
                        first: (*a).clone(),
                        second: (*b).clone(),
                        m_before: sweep.m_values[w],
                        m_after: sweep.m_values[w + 1],
                    });
                }
            }
        }
    }
    crossovers
}
