//! Command implementations. Each returns the rendered output; `main`
//! owns where the bytes go.

use rayon::prelude::*;
use sampled_metrics::{
    consistency::{check_consistency, sweep_m, ComparisonReport},
    dataset::mean_metric,
    exact_metric,
    expected::{expected_mean_metric, expected_metric_over},
    sampling::{monte_carlo_ranks, sampled_rank_pmf},
    simplified_metric, EvalDataset, MetricSpec, PredictedRanks, Replacement, RngStream,
    SamplingScheme,
};

use crate::args::{ConsistencyArgs, CurveArgs, ExactArgs, ExpectedArgs, SimulateArgs, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::ingest::ingest;
use crate::report::{
    render_consistency, render_curve, render_reports, CurvePoint, MetricReport, Mode,
};

pub fn cmd_exact(args: &ExactArgs) -> CliResult<String> {
    let dataset = ingest(&args.input.input)?;
    let reports = exact_reports(&dataset, &args.metrics.metrics)?;
    Ok(render_reports(&reports, args.output.format))
}

pub fn exact_reports(dataset: &EvalDataset, specs: &[MetricSpec]) -> CliResult<Vec<MetricReport>> {
    let mut reports = Vec::new();
    for spec in specs {
        for algo in dataset.algorithms() {
            let mean = mean_metric(dataset, algo, spec)?;
            reports.push(MetricReport::new(algo, spec, Mode::Exact, mean));
        }
    }
    Ok(reports)
}

pub fn cmd_expected(args: &ExpectedArgs) -> CliResult<String> {
    let dataset = ingest(&args.input.input)?;
    let scheme = SamplingScheme::new(args.m, args.scheme.into())?;
    let reports = expected_reports(&dataset, &args.metrics.metrics, &scheme)?;
    Ok(render_reports(&reports, args.output.format))
}

pub fn expected_reports(
    dataset: &EvalDataset,
    specs: &[MetricSpec],
    scheme: &SamplingScheme,
) -> CliResult<Vec<MetricReport>> {
    if !dataset.all_single_relevant() {
        return Err(CliError::Validation(
            "expected metrics are analytic only for instances with exactly one relevant item; \
             use `simulate` for multi-relevant instances"
                .into(),
        ));
    }
    let scheme_name = scheme.replacement().name();
    let mut reports = Vec::new();
    for spec in specs {
        for algo in dataset.algorithms() {
            let mean = expected_mean_metric(dataset, algo, scheme, spec)?;
            reports.push(
                MetricReport::new(algo, spec, Mode::Expected, mean)
                    .sampled(scheme.sample_count(), scheme_name),
            );
        }
    }
    Ok(reports)
}

pub fn cmd_simulate(args: &SimulateArgs) -> CliResult<String> {
    if args.reps < 1 {
        return Err(CliError::Validation("simulate needs at least one repetition".into()));
    }
    let dataset = ingest(&args.input.input)?;
    let scheme = SamplingScheme::new(args.m, args.scheme.into())?;
    let reports = simulate_reports(&dataset, &args.metrics.metrics, &scheme, args.reps, args.seed)?;
    Ok(render_reports(&reports, args.output.format))
}

/// One repetition: every instance re-ranked against a fresh sample drawn
/// from the repetition's own substream, then averaged per algorithm and
/// metric. Returns values in (algorithm-sorted, metric) order.
fn simulate_one_rep(
    dataset: &EvalDataset,
    specs: &[MetricSpec],
    scheme: &SamplingScheme,
    rng: &mut RngStream,
) -> CliResult<Vec<f64>> {
    let mut values = Vec::new();
    for algo in dataset.algorithms() {
        let instances = dataset.instances(algo)?;
        let mut sums = vec![0.0f64; specs.len()];
        for instance in instances {
            let positions = monte_carlo_ranks(&instance.ranks, scheme, rng)?;
            let sampled_n = scheme.sample_count() + instance.ranks.num_relevant() as u64;
            let sampled = PredictedRanks::new(sampled_n, positions)?;
            for (si, spec) in specs.iter().enumerate() {
                sums[si] += exact_metric(&sampled, spec)?;
            }
        }
        for sum in sums {
            values.push(sum / instances.len() as f64);
        }
    }
    Ok(values)
}

pub fn simulate_reports(
    dataset: &EvalDataset,
    specs: &[MetricSpec],
    scheme: &SamplingScheme,
    reps: u64,
    seed: u64,
) -> CliResult<Vec<MetricReport>> {
    // Validate every instance against the scheme up front so failures
    // surface before any parallel work.
    for algo in dataset.algorithms() {
        for instance in dataset.instances(algo)? {
            scheme.validate_for(instance.ranks.catalog_size(), instance.ranks.num_relevant() as u64)?;
        }
    }
    // Repetition i draws from substream (seed, i); collecting into a Vec
    // keeps repetition order, so the aggregate below is independent of
    // the thread count.
    let per_rep: Vec<Vec<f64>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = RngStream::substream(seed, rep);
            simulate_one_rep(dataset, specs, scheme, &mut rng)
        })
        .collect::<CliResult<Vec<Vec<f64>>>>()?;

    let algos: Vec<&str> = dataset.algorithms().collect();
    let scheme_name = scheme.replacement().name();
    let mut reports = Vec::new();
    for (si, spec) in specs.iter().enumerate() {
        for (ai, algo) in algos.iter().enumerate() {
            let series: Vec<f64> = per_rep.iter().map(|rep| rep[ai * specs.len() + si]).collect();
            let mean = series.iter().sum::<f64>() / reps as f64;
            let variance = series.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / reps as f64;
            reports.push(
                MetricReport::new(algo, spec, Mode::Simulated, mean)
                    .sampled(scheme.sample_count(), scheme_name)
                    .simulated(reps, variance.sqrt()),
            );
        }
    }
    Ok(reports)
}

pub fn cmd_sweep(args: &SweepArgs) -> CliResult<String> {
    let dataset = ingest(&args.input.input)?;
    let reports = sweep_reports(&dataset, &args.metrics.metrics, &args.m_list, args.scheme.into())?;
    Ok(render_reports(&reports, args.output.format))
}

pub fn sweep_reports(
    dataset: &EvalDataset,
    specs: &[MetricSpec],
    m_list: &[u64],
    replacement: Replacement,
) -> CliResult<Vec<MetricReport>> {
    let mut reports = Vec::new();
    for spec in specs {
        let sweep = sweep_m(dataset, spec, m_list, replacement)?;
        for (mi, &m) in sweep.m_values.iter().enumerate() {
            for (algo, row) in &sweep.means {
                reports.push(
                    MetricReport::new(algo, spec, Mode::Expected, row[mi])
                        .sampled(m, replacement.name()),
                );
            }
        }
    }
    Ok(reports)
}

pub fn cmd_curve(args: &CurveArgs) -> CliResult<String> {
    let n = args.n;
    let r_max = args.r_max.unwrap_or(n);
    if args.r_min < 1 || args.r_min > r_max || r_max > n {
        return Err(CliError::Validation(format!(
            "rank range [{}, {r_max}] must lie within [1, {n}]",
            args.r_min
        )));
    }
    if args.r_step < 1 {
        return Err(CliError::Validation("r-step must be at least 1".into()));
    }
    let points = curve_points(
        &args.metrics.metrics,
        n,
        args.r_min,
        r_max,
        args.r_step,
        &args.m_list,
        args.scheme.into(),
    )?;
    Ok(render_curve(&points, args.output.format))
}

pub fn curve_points(
    specs: &[MetricSpec],
    n: u64,
    r_min: u64,
    r_max: u64,
    r_step: u64,
    m_list: &[u64],
    replacement: Replacement,
) -> CliResult<Vec<CurvePoint>> {
    let mut points = Vec::new();
    let mut r = r_min;
    while r <= r_max {
        for spec in specs {
            points.push(CurvePoint {
                r,
                metric: spec.kind().name(),
                k: spec.cutoff(),
                mode: Mode::Exact,
                m: None,
                scheme: None,
                value: simplified_metric(r, n, spec)?,
            });
        }
        for &m in m_list {
            let scheme = SamplingScheme::new(m, replacement)?;
            let pmf = sampled_rank_pmf(r, n, &scheme)?;
            for spec in specs {
                points.push(CurvePoint {
                    r,
                    metric: spec.kind().name(),
                    k: spec.cutoff(),
                    mode: Mode::Expected,
                    m: Some(m),
                    scheme: Some(replacement.name()),
                    value: expected_metric_over(&pmf, spec)?,
                });
            }
        }
        r = match r.checked_add(r_step) {
            Some(next) => next,
            None => break,
        };
    }
    Ok(points)
}

pub fn cmd_consistency(args: &ConsistencyArgs) -> CliResult<String> {
    let dataset = ingest(&args.input.input)?;
    let scheme = SamplingScheme::new(args.m, args.scheme.into())?;
    let reports = consistency_reports(&dataset, &args.metrics.metrics, &scheme)?;
    Ok(render_consistency(&reports, args.output.format))
}

pub fn consistency_reports(
    dataset: &EvalDataset,
    specs: &[MetricSpec],
    scheme: &SamplingScheme,
) -> CliResult<Vec<ComparisonReport>> {
    specs
        .iter()
        .map(|spec| check_consistency(dataset, spec, scheme).map_err(CliError::from))
        .collect()
}

/// Writes rendered output to the requested destination.
pub fn write_output(rendered: &str, output: Option<&std::path::Path>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, rendered).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

