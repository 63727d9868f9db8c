//! Analytic expectations of sampled metrics.
//!
//! With one relevant item at true rank `r`, the sampled rank follows the
//! law in [`crate::sampling`], and the expected sampled metric is the sum
//! of the metric over that law, evaluated within the `m + 1`-item sampled
//! ranking:
//!
//! ```text
//! E[M(sampled rank)] = sum over i of P(rank = i) * M_{m+1,k}(i)
//! ```
//!
//! [`expected_metric`] computes that sum for any metric. Three cases have
//! short closed forms: AUC collapses to the exact AUC for any sample
//! count ([`expected_auc_closed`]), Recall@k is a CDF value
//! ([`expected_recall_closed`]), and unbounded average precision has a
//! geometric-series form ([`expected_ap_closed`]). At `m = 1` every
//! metric degenerates to a straight line in the true rank
//! ([`linear_coefficients_m1`]), which is why tiny sample counts cannot
//! distinguish metrics from one another.
//!
//! Note on the average-precision denominator: the normalizer is
//! `p * (m + 1)` with `p = (r - 1)/(n - 1)`; the summation engine in this
//! module arbitrates that form to full precision.

use crate::dataset::EvalDataset;
use crate::error::{Error, Result};
use crate::metrics::{simplified_metric, MetricSpec};
use crate::numeric::CompensatedSum;
use crate::sampling::{sampled_rank_cdf, sampled_rank_pmf, RankPmf, SamplingScheme};

/// Expected value of a metric over an explicit rank PMF, with the metric
/// evaluated in the `m + 1`-item sampled ranking.
pub fn expected_metric_over(pmf: &RankPmf, spec: &MetricSpec) -> Result<f64> {
    let sampled_n = pmf.max_rank();
    let mut acc = CompensatedSum::default();
    for rank in 1..=sampled_n {
        acc.add(pmf.prob(rank) * simplified_metric(rank, sampled_n, spec)?);
    }
    Ok(acc.value())
}

/// Expected sampled metric for a relevant item at true rank `r` in an
/// `n`-item catalog. The cutoff applies within the sampled ranking.
pub fn expected_metric(r: u64, n: u64, scheme: &SamplingScheme, spec: &MetricSpec) -> Result<f64> {
    let pmf = sampled_rank_pmf(r, n, scheme)?;
    expected_metric_over(&pmf, spec)
}

/// Expected sampled AUC: `(n - r)/(n - 1)`, independent of the sample
/// count and the replacement mode.
///
/// Sampled AUC is linear in the sampled rank and both rank laws share the
/// mean `1 + m (r-1)/(n-1)`, so the expectation collapses to the exact
/// AUC — an unbiased estimator.
pub fn expected_auc_closed(r: u64, n: u64, m: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::SampleCountZero);
    }
    crate::sampling::success_probability(r, n)?;
    Ok((n - r) as f64 / (n - 1) as f64)
}

/// Expected sampled Recall@k under sampling with replacement: the
/// binomial CDF at `k - 1`, i.e. the probability that at most `k - 1`
/// samples outrank the relevant item.
///
/// Computed as the partial sum of the rank PMF, so it agrees with
/// [`expected_metric`] term for term.
pub fn expected_recall_closed(r: u64, n: u64, m: u64, k: u64) -> Result<f64> {
    let scheme = SamplingScheme::with_replacement(m)?;
    if k < 1 || k > m + 1 {
        return Err(Error::CdfOutOfRange { k, max: m + 1 });
    }
    sampled_rank_cdf(r, n, &scheme, k)
}

/// Expected unbounded average precision under sampling with replacement.
///
/// For `r = 1` the sampled rank is constantly 1 and the metric is exactly
/// 1. Otherwise, with `p = (r - 1)/(n - 1)`:
///
/// ```text
/// E[1 / sampled rank] = (1 - (1 - p)^(m+1)) / (p (m + 1))
/// ```
pub fn expected_ap_closed(r: u64, n: u64, m: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::SampleCountZero);
    }
    let p = crate::sampling::success_probability(r, n)?;
    if r == 1 {
        return Ok(1.0);
    }
    // (1-p)^(m+1) via exp((m+1) ln(1-p)); ln_1p keeps small p accurate.
    let q_pow = ((m + 1) as f64 * (-p).ln_1p()).exp();
    Ok((1.0 - q_pow) / (p * (m + 1) as f64))
}

/// Slope and intercept of the expected sampled metric at `m = 1` as a
/// function of the true rank `r`.
///
/// With a single sample the metric is evaluated among two items, so
/// `E[M] = M(1) + p (M(2) - M(1))` with `p = (r - 1)/(n - 1)` — a straight
/// line in `r`. Metrics with `M(1) = M(2)` (recall or precision at
/// `k >= 2`) become constants and carry no signal.
pub fn linear_coefficients_m1(spec: &MetricSpec, n: u64) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::CatalogTooSmall(n));
    }
    let top = simplified_metric(1, 2, spec)?;
    let second = simplified_metric(2, 2, spec)?;
    let slope = (second - top) / (n - 1) as f64;
    let intercept = (n as f64 * top - second) / (n - 1) as f64;
    Ok((slope, intercept))
}

/// Mean of [`expected_metric`] over one algorithm's instances.
///
/// Every instance must have exactly one relevant item; multi-relevant
/// instances need Monte Carlo simulation instead.
pub fn expected_mean_metric(
    dataset: &EvalDataset,
    algorithm: &str,
    scheme: &SamplingScheme,
    spec: &MetricSpec,
) -> Result<f64> {
    let instances = dataset.instances(algorithm)?;
    let mut sum = 0.0;
    for instance in instances {
        let r = instance
            .ranks
            .single_rank()
            .ok_or(Error::MultiRelevantUnsupported(instance.ranks.num_relevant()))?;
        sum += expected_metric(r, instance.ranks.catalog_size(), scheme, spec)?;
    }
    Ok(sum / instances.len() as f64)
}
