//! Dataset file parsing.
//!
//! One record per line: `algorithm,instance_id,n,ranks`, where `ranks`
//! is a semicolon-separated list of 1-based positions, e.g.
//!
//! ```text
//! A,x1,10000,100
//! C,x2,10000,2
//! D,x7,100,3;17;42
//! ```
//!
//! Blank lines are skipped. Every malformed record is reported with its
//! line number.

use sampled_metrics::{EvalDataset, PredictedRanks};
use std::path::Path;

use crate::error::{CliError, CliResult};

pub fn ingest(path: &Path) -> CliResult<EvalDataset> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dataset(&text).map_err(|msg| CliError::Validation(format!("{}: {msg}", path.display())))
}

pub fn parse_dataset(text: &str) -> Result<EvalDataset, String> {
    let mut dataset = EvalDataset::new();
    let mut records = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [algorithm, instance, n_field, ranks_field] = fields.as_slice() else {
            return Err(format!(
                "line {line_no}: expected `algorithm,instance_id,n,ranks`, got {} fields",
                fields.len()
            ));
        };
        if algorithm.is_empty() || instance.is_empty() {
            return Err(format!("line {line_no}: empty algorithm or instance id"));
        }
        let n: u64 = n_field
            .parse()
            .map_err(|_| format!("line {line_no}: catalog size {n_field:?} is not an integer"))?;
        let ranks = ranks_field
            .split(';')
            .map(|token| {
                token
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| format!("line {line_no}: rank {token:?} is not an integer"))
            })
            .collect::<Result<Vec<u64>, String>>()?;
        let ranks = PredictedRanks::new(n, ranks).map_err(|e| format!("line {line_no}: {e}"))?;
        dataset
            .add_instance(algorithm, instance, ranks)
            .map_err(|e| format!("line {line_no}: {e}"))?;
        records += 1;
    }
    if records == 0 {
        return Err("no instances".into());
    }
    Ok(dataset)
}
