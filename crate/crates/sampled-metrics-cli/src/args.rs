//! Command-line definitions.

use clap::{Args, Parser, Subcommand, ValueEnum};
use sampled_metrics::{MetricSpec, Replacement};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "sampled-metrics",
    version,
    about = "Exact, expected, and simulated top-N ranking metrics under negative-item sampling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mean exact metrics per algorithm over the full catalog ranking.
    Exact(ExactArgs),
    /// Analytic expected sampled metrics per algorithm (single relevant
    /// item per instance).
    Expected(ExpectedArgs),
    /// Monte Carlo sampled metrics: mean and standard deviation across
    /// seeded repetitions.
    Simulate(SimulateArgs),
    /// Expected metrics swept over a list of sample counts.
    Sweep(SweepArgs),
    /// Metric-versus-rank curves: exact and expected under sampling.
    Curve(CurveArgs),
    /// Pairwise algorithm-ordering consistency between exact and expected
    /// sampled evaluation.
    Consistency(ConsistencyArgs),
    /// Regenerate the reference tables and figure data for the bundled
    /// three-algorithm example and verify the exact table against its
    /// published three-decimal values.
    #[command(name = "reproduce-paper")]
    ReproducePaper(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    /// Sample irrelevant items i.i.d. (binomial rank law).
    With,
    /// Sample distinct irrelevant items (hypergeometric rank law).
    Without,
}

impl From<Scheme> for Replacement {
    fn from(s: Scheme) -> Replacement {
        match s {
            Scheme::With => Replacement::With,
            Scheme::Without => Replacement::Without,
        }
    }
}

fn parse_metric(s: &str) -> Result<MetricSpec, String> {
    s.parse().map_err(|e: sampled_metrics::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Dataset file; one record per line: `algorithm,instance_id,n,ranks`
    /// with ranks separated by semicolons (e.g. `C,x2,10000,2`).
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    /// Metric to evaluate; repeatable. Examples: auc, ap, ndcg,
    /// ndcg@10, recall@10, precision@5, rr, accuracy.
    #[arg(long = "metric", value_parser = parse_metric, required = true)]
    pub metrics: Vec<MetricSpec>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub metrics: MetricArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExpectedArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub metrics: MetricArgs,
    /// Number of sampled irrelevant items.
    #[arg(long)]
    pub m: u64,
    /// Sampling mode; the analytic engine defaults to the binomial model.
    #[arg(long, value_enum, default_value_t = Scheme::With)]
    pub scheme: Scheme,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub metrics: MetricArgs,
    /// Number of sampled irrelevant items.
    #[arg(long)]
    pub m: u64,
    /// Sampling mode; simulation defaults to drawing distinct items.
    #[arg(long, value_enum, default_value_t = Scheme::Without)]
    pub scheme: Scheme,
    /// Number of repetitions of the sampling process.
    #[arg(long, default_value_t = 1000)]
    pub reps: u64,
    /// Master seed; repetition i draws from substream (seed, i), so runs
    /// can be sharded across machines by repetition range.
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub metrics: MetricArgs,
    /// Comma-separated, strictly increasing sample counts.
    #[arg(long = "m-list", value_delimiter = ',', required = true)]
    pub m_list: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Scheme::With)]
    pub scheme: Scheme,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub metrics: MetricArgs,
    /// Catalog size for the curves.
    #[arg(long)]
    pub n: u64,
    /// First rank of the curve.
    #[arg(long, default_value_t = 1)]
    pub r_min: u64,
    /// Last rank of the curve; defaults to n.
    #[arg(long)]
    pub r_max: Option<u64>,
    /// Step between consecutive ranks.
    #[arg(long, default_value_t = 1)]
    pub r_step: u64,
    /// Sample counts for expected-curve overlays; exact only when empty.
    #[arg(long = "m-list", value_delimiter = ',')]
    pub m_list: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Scheme::With)]
    pub scheme: Scheme,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConsistencyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub metrics: MetricArgs,
    /// Number of sampled irrelevant items.
    #[arg(long)]
    pub m: u64,
    #[arg(long, value_enum, default_value_t = Scheme::With)]
    pub scheme: Scheme,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Directory for the generated tables and figure data.
    #[arg(long, default_value = "paper-artifacts")]
    pub output: PathBuf,
    /// Seed for the simulated table.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}
