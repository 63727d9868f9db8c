//! Brute-force reference implementations.
//!
//! Everything here trades speed for independence: the PMFs are obtained
//! by exact integer counting over explicitly enumerated outcomes, so
//! their only error is the final normalization, and the Monte Carlo
//! estimator brackets analytic values stochastically. These routines back
//! the test suites and are never used on the fast paths.

use rand::Rng;

use crate::error::{Error, Result};
use crate::metrics::{simplified_metric, MetricSpec};
use crate::sampling::{draw_sampled_rank, RankPmf, SamplingScheme};

/// Largest catalog the subset enumerator accepts; C(14, 7) subsets is
/// still instant, beyond that the point of an oracle is lost.
const MAX_ENUM_CATALOG: u64 = 15;

/// Visits every k-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    debug_assert!(k >= 1 && k <= n);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// PMF of the sampled rank under uniform sampling without replacement,
/// by enumerating all C(n-1, m) subsets of the irrelevant items and
/// counting how many of each subset outrank `r`.
pub fn enumerate_without_replacement_pmf(r: u64, n: u64, m: u64) -> Result<RankPmf> {
    if n > MAX_ENUM_CATALOG {
        return Err(Error::OracleGuard(format!("catalog size {n} > {MAX_ENUM_CATALOG}")));
    }
    crate::sampling::success_probability(r, n)?;
    SamplingScheme::without_replacement(m)?.validate_for(n, 1)?;
    // Irrelevant items carry the catalog ranks {1..n} \ {r}.
    let pool: Vec<u64> = (1..=n).filter(|&x| x != r).collect();
    let mut counts = vec![0u64; (m + 1) as usize];
    for_each_combination(pool.len(), m as usize, |subset| {
        let outranking = subset.iter().filter(|&&i| pool[i] < r).count();
        counts[outranking] += 1;
    });
    let total: u64 = counts.iter().sum();
    RankPmf::new(counts.into_iter().map(|c| c as f64 / total as f64).collect())
}

/// PMF of the sampled rank under uniform sampling with replacement, by a
/// Pascal-style recurrence on exact integer outcome counts: after `m`
/// draws the count of sequences with `s` outranking items is
/// `C(m, s) (r-1)^s (n-r)^(m-s)` out of `(n-1)^m`, built without ever
/// forming a float until the single final normalization.
pub fn enumerate_with_replacement_pmf(r: u64, n: u64, m: u64) -> Result<RankPmf> {
    if n > MAX_ENUM_CATALOG {
        return Err(Error::OracleGuard(format!("catalog size {n} > {MAX_ENUM_CATALOG}")));
    }
    crate::sampling::success_probability(r, n)?;
    SamplingScheme::with_replacement(m)?;
    let succ = (r - 1) as u128;
    let fail = (n - r) as u128;
    let mut counts: Vec<u128> = vec![1];
    for _ in 0..m {
        let mut next = vec![0u128; counts.len() + 1];
        for (s, &c) in counts.iter().enumerate() {
            let keep = c.checked_mul(fail);
            let gain = c.checked_mul(succ);
            match (keep, gain) {
                (Some(keep), Some(gain)) => {
                    next[s] = next[s].checked_add(keep).ok_or_else(overflow)?;
                    next[s + 1] = next[s + 1].checked_add(gain).ok_or_else(overflow)?;
                }
                _ => return Err(overflow()),
            }
        }
        counts = next;
    }
    let total: u128 = counts.iter().try_fold(0u128, |acc, &c| acc.checked_add(c)).ok_or_else(overflow)?;
    RankPmf::new(counts.into_iter().map(|c| c as f64 / total as f64).collect())
}

fn overflow() -> Error {
    Error::OracleGuard("exact count overflowed 128 bits".into())
}

/// Seeded Monte Carlo estimate of an expected sampled metric, with its
/// standard error. Used to bracket analytic values at a few sigma.
pub fn mc_estimate(
    r: u64,
    n: u64,
    scheme: &SamplingScheme,
    spec: &MetricSpec,
    reps: u64,
    rng: &mut impl Rng,
) -> Result<(f64, f64)> {
    if reps < 100 {
        return Err(Error::TooFewRepetitions(reps));
    }
    let sampled_n = scheme.sample_count() + 1;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..reps {
        let rank = draw_sampled_rank(r, n, scheme, rng)?;
        let value = simplified_metric(rank, sampled_n, spec)?;
        sum += value;
        sum_sq += value * value;
    }
    let mean = sum / reps as f64;
    let variance = (sum_sq - sum * sum / reps as f64) / (reps - 1) as f64;
    let se = (variance.max(0.0) / reps as f64).sqrt();
    Ok((mean, se))
}
