//! The distribution of ranks under negative-item sampling.
//!
//! Instead of ranking a relevant item against the full catalog, sampled
//! evaluation ranks it against `m` randomly drawn irrelevant items. The
//! resulting rank is a random variable with a simple law:
//!
//! * sampling **with replacement**: `rank - 1 ~ Binomial(m, (r-1)/(n-1))`,
//! * sampling **without replacement**: `rank - 1` is hypergeometric with
//!   population `n - 1`, of which `r - 1` outrank the relevant item.
//!
//! This module computes that law exactly ([`sampled_rank_pmf`],
//! [`sampled_rank_cdf`]) and realizes it with seeded draws
//! ([`draw_sampled_rank`], [`monte_carlo_ranks`]). PMFs are evaluated in
//! log space via a mode-anchored multiplicative recurrence and
//! renormalized once, which stays stable for sample counts up to 10^5.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::PredictedRanks;
use crate::numeric::{compensated_sum, CompensatedSum};

/// Whether negative samples are drawn independently or as distinct items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Replacement {
    /// `m` i.i.d. uniform draws; duplicates each count as an independent
    /// above/below comparison.
    With,
    /// `m` distinct items drawn uniformly from the irrelevant pool.
    Without,
}

impl Replacement {
    pub fn name(&self) -> &'static str {
        match self {
            Replacement::With => "with",
            Replacement::Without => "without",
        }
    }
}

/// How many irrelevant items to sample and in which mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplingScheme {
    m: u64,
    replacement: Replacement,
}

impl SamplingScheme {
    pub fn new(m: u64, replacement: Replacement) -> Result<Self> {
        if m == 0 {
            return Err(Error::SampleCountZero);
        }
        Ok(Self { m, replacement })
    }

    pub fn with_replacement(m: u64) -> Result<Self> {
        Self::new(m, Replacement::With)
    }

    pub fn without_replacement(m: u64) -> Result<Self> {
        Self::new(m, Replacement::Without)
    }

    /// Number of sampled irrelevant items.
    pub fn sample_count(&self) -> u64 {
        self.m
    }

    pub fn replacement(&self) -> Replacement {
        self.replacement
    }

    /// Checks the scheme against a catalog of `n` items of which
    /// `num_relevant` are relevant. Without replacement at most
    /// `n - num_relevant` distinct irrelevant items exist.
    pub fn validate_for(&self, n: u64, num_relevant: u64) -> Result<()> {
        let available = n - num_relevant.min(n);
        if self.replacement == Replacement::Without && self.m > available {
            return Err(Error::SampleCountTooLarge { m: self.m, available });
        }
        Ok(())
    }
}

/// Probability mass of the sampled rank over the support `1..=m+1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankPmf {
    probs: Vec<f64>,
}

impl RankPmf {
    /// Validates an explicit probability vector: every entry in `[0, 1]`
    /// and total mass 1 within 1e-12.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidPmf("support must cover at least ranks 1 and 2".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidPmf(format!("probability {p} outside [0, 1]")));
        }
        let total = compensated_sum(probs.iter().copied());
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPmf(format!("mass sums to {total}, not 1")));
        }
        Ok(Self { probs })
    }

    /// Builds the PMF from unnormalized log weights (`NEG_INFINITY` marks
    /// zero mass). Exponentiates relative to the maximum and renormalizes.
    fn from_log_weights(log_weights: Vec<f64>) -> Self {
        let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut probs: Vec<f64> = log_weights.into_iter().map(|lw| (lw - max).exp()).collect();
        let total = compensated_sum(probs.iter().copied());
        for p in &mut probs {
            *p /= total;
        }
        Self { probs }
    }

    fn point_mass(len: usize, rank: u64) -> Self {
        let mut probs = vec![0.0; len];
        probs[(rank - 1) as usize] = 1.0;
        Self { probs }
    }

    /// Largest rank in the support, `m + 1`.
    pub fn max_rank(&self) -> u64 {
        self.probs.len() as u64
    }

    /// The sample count `m` the PMF was built for.
    pub fn sample_count(&self) -> u64 {
        self.max_rank() - 1
    }

    /// `P(rank = r)` for 1-based `r`; zero outside the support.
    pub fn prob(&self, rank: u64) -> f64 {
        if rank == 0 {
            return 0.0;
        }
        self.probs.get((rank - 1) as usize).copied().unwrap_or(0.0)
    }

    /// Probabilities for ranks `1..=m+1`.
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// `P(rank <= k)` for `k` in `0..=m+1`. Exactly 0 at `k = 0` and
    /// exactly 1 over the full support.
    pub fn cdf(&self, k: u64) -> Result<f64> {
        let max = self.max_rank();
        if k > max {
            return Err(Error::CdfOutOfRange { k, max });
        }
        if k == 0 {
            return Ok(0.0);
        }
        if k == max {
            return Ok(1.0);
        }
        Ok(compensated_sum(self.probs[..k as usize].iter().copied()))
    }

    /// Expected sampled rank.
    pub fn mean(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        for (i, &p) in self.probs.iter().enumerate() {
            acc.add(p * (i + 1) as f64);
        }
        acc.value()
    }
}

/// Deterministic ChaCha-based stream with cheap independent substreams.
///
/// Substream `i` of a master seed is an independent generator, so
/// parallel repetitions can each own `RngStream::substream(seed, i)` and
/// produce results that do not depend on thread scheduling. A stream is
/// owned by one task at a time; never share one across threads.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    /// The master stream for a seed; identical to `substream(seed, 0)`.
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    /// Independent stream `index` derived from `seed`.
    pub fn substream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

/// Probability that one uniformly sampled irrelevant item outranks the
/// relevant item at rank `r`: `(r - 1) / (n - 1)`.
///
/// The pool of candidates excludes the relevant item itself, hence the
/// `n - 1` denominator.
pub fn success_probability(r: u64, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::CatalogTooSmall(n));
    }
    if r < 1 || r > n {
        return Err(Error::RankOutOfRange { rank: r, n });
    }
    Ok((r - 1) as f64 / (n - 1) as f64)
}

fn validate_single(r: u64, n: u64, scheme: &SamplingScheme) -> Result<()> {
    success_probability(r, n)?;
    scheme.validate_for(n, 1)
}

/// Exact PMF of the sampled rank of a relevant item at true rank `r`.
pub fn sampled_rank_pmf(r: u64, n: u64, scheme: &SamplingScheme) -> Result<RankPmf> {
    validate_single(r, n, scheme)?;
    let m = scheme.sample_count();
    let len = (m + 1) as usize;
    match scheme.replacement() {
        Replacement::With => {
            if r == 1 {
                return Ok(RankPmf::point_mass(len, 1));
            }
            if r == n {
                return Ok(RankPmf::point_mass(len, m + 1));
            }
            // log of pmf(s+1)/pmf(s) = ((m-s)/(s+1)) * (p/(1-p)) with
            // p = (r-1)/(n-1); p/(1-p) = (r-1)/(n-r) in exact integers.
            let log_odds = ((r - 1) as f64).ln() - ((n - r) as f64).ln();
            let mode = (((m + 1) as f64 * (r - 1) as f64 / (n - 1) as f64) as u64).min(m);
            let mut logw = vec![0.0f64; len];
            for s in mode..m {
                logw[(s + 1) as usize] =
                    logw[s as usize] + ((m - s) as f64).ln() - ((s + 1) as f64).ln() + log_odds;
            }
            for s in (0..mode).rev() {
                logw[s as usize] =
                    logw[(s + 1) as usize] - (((m - s) as f64).ln() - ((s + 1) as f64).ln() + log_odds);
            }
            Ok(RankPmf::from_log_weights(logw))
        }
        Replacement::Without => {
            let population = n - 1;
            let successes = r - 1;
            let failures = population - successes;
            let lo = m.saturating_sub(failures);
            let hi = m.min(successes);
            if lo == hi {
                return Ok(RankPmf::point_mass(len, lo + 1));
            }
            let mode = (((m + 1) as u128 * (successes + 1) as u128 / (population + 2) as u128) as u64)
                .clamp(lo, hi);
            // log of pmf(s+1)/pmf(s) =
            // (successes-s)(m-s) / ((s+1)(failures-m+s+1)).
            let step = |s: u64| {
                ((successes - s) as f64).ln() + ((m - s) as f64).ln()
                    - ((s + 1) as f64).ln()
                    - ((failures + s + 1 - m) as f64).ln()
            };
            let mut logw = vec![f64::NEG_INFINITY; len];
            logw[mode as usize] = 0.0;
            for s in mode..hi {
                logw[(s + 1) as usize] = logw[s as usize] + step(s);
            }
            for s in (lo..mode).rev() {
                logw[s as usize] = logw[(s + 1) as usize] - step(s);
            }
            Ok(RankPmf::from_log_weights(logw))
        }
    }
}

/// `P(sampled rank <= k)` as the cumulative sum of [`sampled_rank_pmf`].
pub fn sampled_rank_cdf(r: u64, n: u64, scheme: &SamplingScheme, k: u64) -> Result<f64> {
    sampled_rank_pmf(r, n, scheme)?.cdf(k)
}

/// One realization of the sampled rank, distributed per
/// [`sampled_rank_pmf`]. Deterministic given the stream state.
pub fn draw_sampled_rank(r: u64, n: u64, scheme: &SamplingScheme, rng: &mut impl Rng) -> Result<u64> {
    validate_single(r, n, scheme)?;
    let m = scheme.sample_count();
    if r == 1 {
        return Ok(1);
    }
    if r == n {
        return Ok(m + 1);
    }
    let outranking = match scheme.replacement() {
        Replacement::With => {
            let p = (r - 1) as f64 / (n - 1) as f64;
            Binomial::new(m, p).expect("validated p").sample(rng)
        }
        Replacement::Without => {
            // Inverse transform over the exact PMF: one uniform per draw,
            // well defined at any population size.
            let pmf = sampled_rank_pmf(r, n, scheme)?;
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut last_nonzero = 0u64;
            let mut drawn = None;
            for (i, &p) in pmf.probabilities().iter().enumerate() {
                if p > 0.0 {
                    last_nonzero = i as u64;
                }
                acc += p;
                if u < acc {
                    drawn = Some(i as u64);
                    break;
                }
            }
            // Rounding can leave the total a few ulps short of 1.
            drawn.unwrap_or(last_nonzero)
        }
    };
    Ok(1 + outranking)
}

/// Positions of every relevant item after re-ranking against a fresh
/// sample of `m` irrelevant items.
///
/// Positions are distinct, lie in `[1, m + |R|]`, and preserve the
/// relative order of the relevant items. With replacement, duplicate
/// samples each occupy a position of their own.
pub fn monte_carlo_ranks(
    ranks: &PredictedRanks,
    scheme: &SamplingScheme,
    rng: &mut impl Rng,
) -> Result<Vec<u64>> {
    let n = ranks.catalog_size();
    let count = ranks.num_relevant() as u64;
    scheme.validate_for(n, count)?;
    if let Some(r) = ranks.single_rank() {
        return Ok(vec![draw_sampled_rank(r, n, scheme, rng)?]);
    }
    let m = scheme.sample_count();
    // Index the irrelevant pool 0..n-|R| by ascending catalog rank; the
    // j-th relevant rank r_j has exactly r_j - j irrelevant items below it.
    let pool = n - count;
    let mut sampled: Vec<u64> = match scheme.replacement() {
        Replacement::With => (0..m).map(|_| rng.random_range(0..pool)).collect(),
        Replacement::Without => rand::seq::index::sample(rng, pool as usize, m as usize)
            .into_iter()
            .map(|i| i as u64)
            .collect(),
    };
    sampled.sort_unstable();
    Ok(ranks
        .ranks()
        .iter()
        .enumerate()
        .map(|(j, &r)| {
            let below = r - (j as u64 + 1);
            let outranking = sampled.partition_point(|&idx| idx < below) as u64;
            (j as u64 + 1) + outranking
        })
        .collect())
}
