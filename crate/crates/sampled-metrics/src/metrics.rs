//! Exact ranking metrics over predicted ranks.
//!
//! A ranking of an `n`-item catalog is summarized by the positions of the
//! relevant items within it ([`PredictedRanks`]). Every metric here is a
//! pure function of those positions. Two routes are provided:
//!
//! * [`exact_metric`] — the general definitions for any number of relevant
//!   items: AUC in closed form, Precision@k, Recall@k, AP@k, NDCG@k.
//! * [`simplified_metric`] — the single-relevant-item special cases
//!   (`AUC = (n-r)/(n-1)`, `AP = 1/r`, `NDCG = 1/log2(r+1)`, and the
//!   cutoff indicators), implemented independently so the two routes
//!   cross-check each other.
//!
//! All values lie in `[0, 1]`. Ranks and cutoffs are 1-based.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Positions of the relevant items within a ranking of an `n`-item catalog.
///
/// Ranks are 1-based, distinct, and stored sorted ascending. The
/// constructor accepts ranks in any order and sorts them; duplicates are
/// rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PredictedRanks {
    n: u64,
    ranks: Vec<u64>,
}

impl PredictedRanks {
    /// Validates and normalizes a set of predicted ranks.
    pub fn new(n: u64, ranks: impl Into<Vec<u64>>) -> Result<Self> {
        let mut ranks = ranks.into();
        if n < 2 {
            return Err(Error::CatalogTooSmall(n));
        }
        if ranks.is_empty() {
            return Err(Error::EmptyRanks);
        }
        ranks.sort_unstable();
        for pair in ranks.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateRank(pair[0]));
            }
        }
        for &r in &ranks {
            if r < 1 || r > n {
                return Err(Error::RankOutOfRange { rank: r, n });
            }
        }
        Ok(Self { n, ranks })
    }

    /// A single relevant item at position `r`.
    pub fn single(n: u64, r: u64) -> Result<Self> {
        Self::new(n, vec![r])
    }

    /// Catalog size `n`.
    pub fn catalog_size(&self) -> u64 {
        self.n
    }

    /// The sorted, distinct relevant positions.
    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    /// Number of relevant items.
    pub fn num_relevant(&self) -> usize {
        self.ranks.len()
    }

    /// The rank when there is exactly one relevant item.
    pub fn single_rank(&self) -> Option<u64> {
        match self.ranks.as_slice() {
            [r] => Some(*r),
            _ => None,
        }
    }
}

/// Which ranking metric to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    /// Probability that a random relevant item outranks a random
    /// irrelevant one. Ignores the cutoff.
    Auc,
    /// Fraction of the top `k` positions holding relevant items.
    Precision,
    /// Fraction of the relevant items recovered in the top `k`.
    Recall,
    /// Mean of the precision values at each relevant position within the
    /// top `k`.
    AveragePrecision,
    /// Inverse-log2 positional reward, normalized by the ideal ranking.
    Ndcg,
    /// `1/r` for the single relevant item; identical to unbounded average
    /// precision at one relevant item.
    ReciprocalRank,
    /// Indicator that the top position holds the relevant item; the same
    /// as Recall@1 and Precision@1.
    Accuracy,
}

impl MetricKind {
    /// Short lowercase name used by the CLI and CSV output.
    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::Auc => "auc",
            MetricKind::Precision => "precision",
            MetricKind::Recall => "recall",
            MetricKind::AveragePrecision => "ap",
            MetricKind::Ndcg => "ndcg",
            MetricKind::ReciprocalRank => "rr",
            MetricKind::Accuracy => "accuracy",
        }
    }
}

/// A metric kind plus an optional cutoff `k`.
///
/// An absent cutoff means the metric is evaluated over the whole ranking
/// (`k = n`). A cutoff larger than the catalog degrades gracefully to
/// `k = n`. AUC ignores the cutoff entirely; Accuracy fixes it at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetricSpec {
    kind: MetricKind,
    cutoff: Option<u64>,
}

impl MetricSpec {
    /// Validates the kind/cutoff combination.
    pub fn new(kind: MetricKind, cutoff: Option<u64>) -> Result<Self> {
        if cutoff == Some(0) {
            return Err(Error::CutoffTooSmall);
        }
        if kind == MetricKind::Accuracy {
            if let Some(k) = cutoff {
                if k != 1 {
                    return Err(Error::AccuracyCutoff(k));
                }
            }
        }
        Ok(Self { kind, cutoff })
    }

    pub fn auc() -> Self {
        Self { kind: MetricKind::Auc, cutoff: None }
    }

    pub fn precision(k: u64) -> Result<Self> {
        Self::new(MetricKind::Precision, Some(k))
    }

    pub fn recall(k: u64) -> Result<Self> {
        Self::new(MetricKind::Recall, Some(k))
    }

    /// Average precision, unbounded when `k` is `None`.
    pub fn average_precision(k: Option<u64>) -> Result<Self> {
        Self::new(MetricKind::AveragePrecision, k)
    }

    /// NDCG, unbounded when `k` is `None`.
    pub fn ndcg(k: Option<u64>) -> Result<Self> {
        Self::new(MetricKind::Ndcg, k)
    }

    pub fn reciprocal_rank() -> Self {
        Self { kind: MetricKind::ReciprocalRank, cutoff: None }
    }

    pub fn accuracy() -> Self {
        Self { kind: MetricKind::Accuracy, cutoff: None }
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    /// The cutoff as given; `None` means unbounded.
    pub fn cutoff(&self) -> Option<u64> {
        self.cutoff
    }

    /// The cutoff actually applied for a catalog of `n` items.
    fn effective_cutoff(&self, n: u64) -> u64 {
        match self.kind {
            MetricKind::Auc => n,
            MetricKind::Accuracy => 1,
            _ => self.cutoff.unwrap_or(n).min(n),
        }
    }
}

impl fmt::Display for MetricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.cutoff) {
            (MetricKind::Auc, _) | (_, None) => write!(f, "{}", self.kind.name()),
            (_, Some(k)) => write!(f, "{}@{}", self.kind.name(), k),
        }
    }
}

impl FromStr for MetricSpec {
    type Err = Error;

    /// Parses names like `auc`, `ap`, `ndcg@10`, `recall@10`, `rr`,
    /// `precision@5`, `accuracy`. `map` and `mrr` are accepted aliases.
    fn from_str(s: &str) -> Result<Self> {
        let (name, cutoff) = match s.split_once('@') {
            Some((name, k)) => {
                let k: u64 = k
                    .parse()
                    .map_err(|_| Error::InvalidPmf(format!("bad cutoff in metric {s:?}")))?;
                (name, Some(k))
            }
            None => (s, None),
        };
        let kind = match name.to_ascii_lowercase().as_str() {
            "auc" => MetricKind::Auc,
            "precision" | "prec" | "p" => MetricKind::Precision,
            "recall" | "hr" | "hitratio" => MetricKind::Recall,
            "ap" | "map" => MetricKind::AveragePrecision,
            "ndcg" => MetricKind::Ndcg,
            "rr" | "mrr" => MetricKind::ReciprocalRank,
            "accuracy" | "acc" => MetricKind::Accuracy,
            other => {
                return Err(Error::InvalidPmf(format!("unknown metric {other:?}")));
            }
        };
        MetricSpec::new(kind, cutoff)
    }
}

/// Inverse-log2 positional discount `1 / log2(pos + 1)`.
///
/// Shared by both metric routes so that their NDCG values agree bit for
/// bit. The base-2 logarithm is taken as a natural-log ratio, which makes
/// the discount at position 1 exactly 1.
fn log2_discount(pos: u64) -> f64 {
    std::f64::consts::LN_2 / ((pos + 1) as f64).ln()
}

/// Validates a spec against the arity of a rank set.
fn validate_arity(ranks: &PredictedRanks, spec: &MetricSpec) -> Result<()> {
    let n = ranks.catalog_size();
    let count = ranks.num_relevant();
    match spec.kind() {
        MetricKind::ReciprocalRank if count != 1 => Err(Error::ReciprocalRankArity(count)),
        MetricKind::Auc if count as u64 == n => Err(Error::AucAllRelevant(n)),
        _ => Ok(()),
    }
}

/// Computes a metric exactly from the full set of predicted ranks.
///
/// AUC uses the closed-form rank sum, not the pairwise double sum, so it
/// is linear in the number of relevant items.
pub fn exact_metric(ranks: &PredictedRanks, spec: &MetricSpec) -> Result<f64> {
    validate_arity(ranks, spec)?;
    let n = ranks.catalog_size();
    let count = ranks.num_relevant() as u64;
    let k = spec.effective_cutoff(n);
    let in_top_k = ranks.ranks().iter().filter(|&&r| r <= k).count() as u64;

    let value = match spec.kind() {
        MetricKind::Auc => {
            // (sum over R of (n - r)) - |R|(|R|-1)/2 pairs of relevant items
            // rank above each other and must not be counted.
            let above: u128 = ranks.ranks().iter().map(|&r| (n - r) as u128).sum();
            let numerator = above - (count as u128 * (count as u128 - 1)) / 2;
            let denominator = count as u128 * (n - count) as u128;
            numerator as f64 / denominator as f64
        }
        MetricKind::Precision => in_top_k as f64 / k as f64,
        MetricKind::Recall | MetricKind::Accuracy => in_top_k as f64 / count as f64,
        MetricKind::AveragePrecision | MetricKind::ReciprocalRank => {
            // The j-th relevant rank r_j contributes Prec@r_j = j / r_j.
            let hits: f64 = ranks
                .ranks()
                .iter()
                .enumerate()
                .filter(|(_, &r)| r <= k)
                .map(|(j, &r)| (j + 1) as f64 / r as f64)
                .sum();
            hits / count.min(k) as f64
        }
        MetricKind::Ndcg => {
            let gain: f64 = ranks
                .ranks()
                .iter()
                .filter(|&&r| r <= k)
                .map(|&r| log2_discount(r))
                .sum();
            let ideal: f64 = (1..=count.min(k)).map(log2_discount).sum();
            gain / ideal
        }
    };
    debug_assert!((0.0..=1.0).contains(&value), "metric out of range: {value}");
    Ok(value)
}

/// Computes a metric for a single relevant item at rank `r` in an
/// `n`-item catalog, using the closed single-item forms.
///
/// Equals `exact_metric` on the singleton rank set for every spec.
pub fn simplified_metric(r: u64, n: u64, spec: &MetricSpec) -> Result<f64> {
    if n < 2 {
        return Err(Error::CatalogTooSmall(n));
    }
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange { rank: r, n });
    }
    let k = spec.effective_cutoff(n);
    let hit = r <= k;
    let value = match spec.kind() {
        MetricKind::Auc => (n - r) as f64 / (n - 1) as f64,
        MetricKind::Precision => {
            if hit {
                1.0 / k as f64
            } else {
                0.0
            }
        }
        MetricKind::Recall | MetricKind::Accuracy => {
            if hit {
                1.0
            } else {
                0.0
            }
        }
        MetricKind::AveragePrecision | MetricKind::ReciprocalRank => {
            if hit {
                1.0 / r as f64
            } else {
                0.0
            }
        }
        MetricKind::Ndcg => {
            if hit {
                log2_discount(r)
            } else {
                0.0
            }
        }
    };
    Ok(value)
}
