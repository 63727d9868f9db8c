//! Cross-route and distributional invariants.
//!
//! The metric module exposes two independent formula sets (general and
//! single-item); the sampling module exposes analytic PMFs next to
//! enumeration oracles and samplers; the expectation module exposes
//! closed forms next to a summation engine. These tests hold every such
//! pair together.

use proptest::prelude::*;
use sampled_metrics::{
    consistency::{check_consistency, sweep_m},
    dataset::mean_metric,
    exact_metric,
    expected::{expected_ap_closed, expected_metric, expected_recall_closed},
    oracle::enumerate_without_replacement_pmf,
    sampling::{sampled_rank_pmf, success_probability},
    simplified_metric, EvalDataset, MetricKind, MetricSpec, PredictedRanks, Replacement,
    SamplingScheme,
};

const KINDS: [MetricKind; 7] = [
    MetricKind::Auc,
    MetricKind::Precision,
    MetricKind::Recall,
    MetricKind::AveragePrecision,
    MetricKind::Ndcg,
    MetricKind::ReciprocalRank,
    MetricKind::Accuracy,
];

fn specs_for(kind: MetricKind, n: u64) -> Vec<MetricSpec> {
    match kind {
        MetricKind::Auc | MetricKind::Accuracy => vec![MetricSpec::new(kind, None).unwrap()],
        _ => {
            let mut specs = vec![MetricSpec::new(kind, None).unwrap()];
            specs.extend((1..=n).map(|k| MetricSpec::new(kind, Some(k)).unwrap()));
            specs
        }
    }
}

/// The single-item closed forms equal the general route bit for bit,
/// exhaustively over small catalogs, every kind, every cutoff.
#[test]
fn simplified_equals_exact_exhaustively() {
    for n in 2..=50u64 {
        for r in 1..=n {
            let single = PredictedRanks::single(n, r).unwrap();
            for kind in KINDS {
                for spec in specs_for(kind, n) {
                    let simple = simplified_metric(r, n, &spec).unwrap();
                    let general = exact_metric(&single, &spec).unwrap();
                    assert_eq!(simple, general, "n={n} r={r} {spec}");
                }
            }
        }
    }
}

/// Metric values never leave [0, 1] and single-item metrics never
/// increase with the rank.
#[test]
fn single_item_metrics_are_monotone_and_bounded() {
    let n = 60u64;
    for kind in KINDS {
        for spec in specs_for(kind, n) {
            let mut prev = f64::INFINITY;
            for r in 1..=n {
                let v = simplified_metric(r, n, &spec).unwrap();
                assert!((0.0..=1.0).contains(&v), "{spec} r={r}: {v}");
                assert!(v <= prev + 1e-15, "{spec} increased at r={r}");
                prev = v;
            }
        }
    }
}

/// Brute-force pairwise AUC used as an independent oracle.
fn auc_double_sum(ranks: &PredictedRanks) -> f64 {
    let n = ranks.catalog_size();
    let relevant: Vec<u64> = ranks.ranks().to_vec();
    let mut concordant = 0u64;
    for &r in &relevant {
        for r_prime in 1..=n {
            if !relevant.contains(&r_prime) && r < r_prime {
                concordant += 1;
            }
        }
    }
    concordant as f64 / (relevant.len() as u64 * (n - relevant.len() as u64)) as f64
}

fn rank_set() -> impl Strategy<Value = PredictedRanks> {
    (2u64..=30).prop_flat_map(|n| {
        proptest::collection::btree_set(1..=n, 1..=(n as usize - 1).max(1))
            .prop_map(move |set| PredictedRanks::new(n, set.into_iter().collect::<Vec<_>>()).unwrap())
    })
}

proptest! {
    #[test]
    fn auc_closed_form_matches_double_sum(ranks in rank_set()) {
        let closed = exact_metric(&ranks, &MetricSpec::auc()).unwrap();
        let brute = auc_double_sum(&ranks);
        prop_assert!((closed - brute).abs() < 1e-12);
    }

    #[test]
    fn general_metrics_stay_in_unit_interval(
        ranks in rank_set(),
        kind_idx in 0usize..KINDS.len(),
        k in 1u64..=40,
    ) {
        let kind = KINDS[kind_idx];
        let spec = match kind {
            MetricKind::Auc | MetricKind::Accuracy | MetricKind::ReciprocalRank => {
                MetricSpec::new(kind, None).unwrap()
            }
            _ => MetricSpec::new(kind, Some(k)).unwrap(),
        };
        match exact_metric(&ranks, &spec) {
            Ok(v) => prop_assert!((0.0..=1.0).contains(&v), "{spec}: {v}"),
            // Reciprocal rank on multi-relevant sets is the one rejection.
            Err(_) => prop_assert!(kind == MetricKind::ReciprocalRank && ranks.num_relevant() > 1),
        }
    }
}

fn rank_and_scheme() -> impl Strategy<Value = (u64, u64, SamplingScheme)> {
    (2u64..=1_000).prop_flat_map(|n| {
        (1u64..=n, 1u64..=1_000, prop::bool::ANY).prop_map(move |(r, m, with)| {
            let scheme = if with {
                SamplingScheme::with_replacement(m).unwrap()
            } else {
                SamplingScheme::without_replacement(m.min(n - 1)).unwrap()
            };
            (r, n, scheme)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pmf_mass_sums_to_one((r, n, scheme) in rank_and_scheme()) {
        let pmf = sampled_rank_pmf(r, n, &scheme).unwrap();
        let mass: f64 = {
            // Independent compensated total over the raw entries.
            let mut sum = 0.0f64;
            let mut comp = 0.0f64;
            for &p in pmf.probabilities() {
                prop_assert!((0.0..=1.0).contains(&p));
                let t = sum + p;
                comp += if sum.abs() >= p.abs() { (sum - t) + p } else { (p - t) + sum };
                sum = t;
            }
            sum + comp
        };
        prop_assert!((mass - 1.0).abs() < 1e-12, "mass {mass}");
    }

    #[test]
    fn pmf_mean_is_shared_by_both_schemes((r, n, scheme) in rank_and_scheme()) {
        let pmf = sampled_rank_pmf(r, n, &scheme).unwrap();
        let expect = 1.0 + scheme.sample_count() as f64 * (r - 1) as f64 / (n - 1) as f64;
        prop_assert!((pmf.mean() - expect).abs() < 1e-10, "{} vs {expect}", pmf.mean());
    }

    #[test]
    fn expected_auc_is_the_exact_auc((r, n, scheme) in rank_and_scheme()) {
        let expected = expected_metric(r, n, &scheme, &MetricSpec::auc()).unwrap();
        let exact = (n - r) as f64 / (n - 1) as f64;
        prop_assert!((expected - exact).abs() <= 1e-12, "{expected} vs {exact}");
    }

    #[test]
    fn closed_forms_match_the_summation_engine((r, n, scheme) in rank_and_scheme()) {
        let m = scheme.sample_count();
        let with = SamplingScheme::with_replacement(m).unwrap();
        let ap_closed = expected_ap_closed(r, n, m).unwrap();
        let ap_engine = expected_metric(r, n, &with, &"ap".parse().unwrap()).unwrap();
        prop_assert!((ap_closed - ap_engine).abs() < 1e-10, "{ap_closed} vs {ap_engine}");

        let k = (m / 2).max(1);
        let recall_closed = expected_recall_closed(r, n, m, k).unwrap();
        let recall_engine =
            expected_metric(r, n, &with, &MetricSpec::recall(k).unwrap()).unwrap();
        prop_assert!((recall_closed - recall_engine).abs() < 1e-10);
    }
}

/// Without-replacement PMFs agree with exhaustive subset enumeration on
/// the full small grid.
#[test]
fn hypergeometric_pmf_equals_subset_enumeration() {
    for n in 2..=12u64 {
        for r in 1..=n {
            for m in 1..=6.min(n - 1) {
                let oracle = enumerate_without_replacement_pmf(r, n, m).unwrap();
                let scheme = SamplingScheme::without_replacement(m).unwrap();
                let analytic = sampled_rank_pmf(r, n, &scheme).unwrap();
                for rank in 1..=m + 1 {
                    assert!(
                        (oracle.prob(rank) - analytic.prob(rank)).abs() < 1e-12,
                        "r={r} n={n} m={m} rank={rank}"
                    );
                }
            }
        }
    }
}

fn random_dataset() -> impl Strategy<Value = EvalDataset> {
    (2usize..=4, 10u64..=200).prop_flat_map(|(algos, n)| {
        proptest::collection::vec(proptest::collection::vec(1..=n, 1..=6), algos).prop_map(
            move |per_algo| {
                let mut d = EvalDataset::new();
                for (a, ranks) in per_algo.iter().enumerate() {
                    for (i, &r) in ranks.iter().enumerate() {
                        d.add_instance(
                            &format!("algo{a}"),
                            &format!("x{i}"),
                            PredictedRanks::single(n, r).unwrap(),
                        )
                        .unwrap();
                    }
                }
                d
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// AUC is consistent for every dataset under every scheme.
    #[test]
    fn auc_consistency_holds_universally(d in random_dataset(), m in 1u64..=50, with in prop::bool::ANY) {
        let replacement = if with { Replacement::With } else { Replacement::Without };
        let scheme = SamplingScheme::new(m.min(9), replacement).unwrap();
        let report = check_consistency(&d, &MetricSpec::auc(), &scheme).unwrap();
        prop_assert!(report.all_consistent());
    }

    /// Pair lookup gives mirrored orderings and identical consistency in
    /// both name orders.
    #[test]
    fn comparison_report_is_symmetric(d in random_dataset(), m in 1u64..=9) {
        let scheme = SamplingScheme::with_replacement(m).unwrap();
        let report = check_consistency(&d, &"ndcg".parse().unwrap(), &scheme).unwrap();
        let names: Vec<String> = d.algorithms().map(str::to_string).collect();
        for a in &names {
            for b in &names {
                if a == b { continue; }
                let fwd = report.pair(a, b).unwrap();
                let rev = report.pair(b, a).unwrap();
                prop_assert_eq!(fwd.consistent, rev.consistent);
                prop_assert_eq!(fwd.exact.symbol(), match rev.exact.symbol() {
                    "<" => ">", ">" => "<", s => s,
                });
            }
        }
    }
}

/// Sweeping up to the complete without-replacement sample reproduces the
/// exact means.
#[test]
fn sweep_endpoint_matches_exact_means() {
    let mut d = EvalDataset::new();
    for (algo, ranks) in [("P", [2u64, 30, 77]), ("Q", [5, 5, 60])] {
        // Instance ids may repeat ranks but not ids.
        for (i, r) in ranks.iter().enumerate() {
            d.add_instance(algo, &format!("x{i}"), PredictedRanks::single(100, *r).unwrap())
                .unwrap();
        }
    }
    for metric in ["auc", "ap", "ndcg", "recall@10"] {
        let spec: MetricSpec = metric.parse().unwrap();
        let sweep = sweep_m(&d, &spec, &[10, 99], Replacement::Without).unwrap();
        for algo in ["P", "Q"] {
            let exact = mean_metric(&d, algo, &spec).unwrap();
            let endpoint = sweep.means[algo][1];
            assert!((endpoint - exact).abs() < 1e-12, "{metric} {algo}");
        }
    }
}

/// The success probability is the fraction of irrelevant items that
/// outrank r, cross-checked by counting.
#[test]
fn success_probability_counts_items() {
    for n in 2..=60u64 {
        for r in 1..=n {
            let counted = (1..=n).filter(|&j| j != r && j < r).count() as f64 / (n - 1) as f64;
            assert_eq!(success_probability(r, n).unwrap(), counted);
        }
    }
}
