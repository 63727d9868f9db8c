//! Seeded draws follow the analytic rank law.
//!
//! Pearson chi-square goodness-of-fit at significance 0.001, with
//! low-expectation bins merged so the asymptotic is valid. Seeds are
//! fixed, so these tests are deterministic.

use sampled_metrics::{
    sampling::{draw_sampled_rank, monte_carlo_ranks, sampled_rank_pmf},
    PredictedRanks, RngStream, SamplingScheme,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Merges adjacent ranks until every bin expects at least `min_expected`
/// observations, then returns the chi-square statistic and the degrees
/// of freedom.
fn chi_square(observed: &[u64], expected: &[f64], min_expected: f64) -> (f64, usize) {
    let mut stat = 0.0;
    let mut bins = 0usize;
    let mut obs_acc = 0.0;
    let mut exp_acc = 0.0;
    for (&o, &e) in observed.iter().zip(expected) {
        obs_acc += o as f64;
        exp_acc += e;
        if exp_acc >= min_expected {
            stat += (obs_acc - exp_acc).powi(2) / exp_acc;
            bins += 1;
            obs_acc = 0.0;
            exp_acc = 0.0;
        }
    }
    // Fold any remainder into the last bin.
    if exp_acc > 0.0 && bins > 0 {
        stat += (obs_acc - exp_acc).powi(2) / exp_acc;
    }
    (stat, bins.saturating_sub(1).max(1))
}

fn assert_draws_follow_pmf(r: u64, n: u64, scheme: &SamplingScheme, seed: u64) {
    let draws = 200_000u64;
    let pmf = sampled_rank_pmf(r, n, scheme).unwrap();
    let mut observed = vec![0u64; pmf.max_rank() as usize];
    let mut rng = RngStream::new(seed);
    for _ in 0..draws {
        let rank = draw_sampled_rank(r, n, scheme, &mut rng).unwrap();
        observed[(rank - 1) as usize] += 1;
    }
    let expected: Vec<f64> = pmf.probabilities().iter().map(|p| p * draws as f64).collect();
    let (stat, dof) = chi_square(&observed, &expected, 5.0);
    let critical = ChiSquared::new(dof as f64).unwrap().inverse_cdf(0.999);
    assert!(
        stat < critical,
        "chi-square {stat:.2} >= {critical:.2} (dof {dof}) for r={r} n={n} {scheme:?}"
    );
}

#[test]
fn binomial_draws_fit_the_pmf() {
    let scheme = SamplingScheme::with_replacement(12).unwrap();
    assert_draws_follow_pmf(7, 50, &scheme, 2024);
    assert_draws_follow_pmf(40, 50, &scheme, 2025);
}

#[test]
fn hypergeometric_draws_fit_the_pmf() {
    let scheme = SamplingScheme::without_replacement(12).unwrap();
    assert_draws_follow_pmf(7, 50, &scheme, 2026);
    assert_draws_follow_pmf(25, 30, &scheme, 2027);
}

/// The single-relevant-item path of the multi-item sampler follows the
/// same law as the direct draw.
#[test]
fn monte_carlo_single_item_fits_the_pmf() {
    let (r, n) = (9u64, 40u64);
    let scheme = SamplingScheme::without_replacement(10).unwrap();
    let draws = 200_000u64;
    let pmf = sampled_rank_pmf(r, n, &scheme).unwrap();
    let ranks = PredictedRanks::single(n, r).unwrap();
    let mut observed = vec![0u64; pmf.max_rank() as usize];
    let mut rng = RngStream::new(31);
    for _ in 0..draws {
        let pos = monte_carlo_ranks(&ranks, &scheme, &mut rng).unwrap();
        observed[(pos[0] - 1) as usize] += 1;
    }
    let expected: Vec<f64> = pmf.probabilities().iter().map(|p| p * draws as f64).collect();
    let (stat, dof) = chi_square(&observed, &expected, 5.0);
    let critical = ChiSquared::new(dof as f64).unwrap().inverse_cdf(0.999);
    assert!(stat < critical, "chi-square {stat:.2} >= {critical:.2} (dof {dof})");
}
