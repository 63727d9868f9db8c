//! Named algorithms evaluated over a shared set of instances.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metrics::{exact_metric, MetricSpec, PredictedRanks};

/// One evaluation instance: an id and the predicted ranks an algorithm
/// produced for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    pub ranks: PredictedRanks,
}

/// Algorithms mapped to their per-instance predicted ranks.
///
/// Algorithms iterate in name order, instances in insertion order, so
/// every aggregate computed from a dataset is deterministic. Instances of
/// one algorithm may have differing catalog sizes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalDataset {
    algorithms: BTreeMap<String, Vec<Instance>>,
}

impl EvalDataset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one instance; instance ids must be unique per algorithm.
    pub fn add_instance(&mut self, algorithm: &str, instance_id: &str, ranks: PredictedRanks) -> Result<()> {
        let instances = self.algorithms.entry(algorithm.to_string()).or_default();
        if instances.iter().any(|i| i.id == instance_id) {
            return Err(Error::DuplicateInstance {
                algorithm: algorithm.to_string(),
                instance: instance_id.to_string(),
            });
        }
        instances.push(Instance { id: instance_id.to_string(), ranks });
        Ok(())
    }

    /// Algorithm names in sorted order.
    pub fn algorithms(&self) -> impl Iterator<Item = &str> {
        self.algorithms.keys().map(String::as_str)
    }

    pub fn num_algorithms(&self) -> usize {
        self.algorithms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algorithms.is_empty()
    }

    /// Instances of one algorithm, in insertion order.
    pub fn instances(&self, algorithm: &str) -> Result<&[Instance]> {
        self.algorithms
            .get(algorithm)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownAlgorithm(algorithm.to_string()))
    }

    /// True when every instance of every algorithm has exactly one
    /// relevant item, which the analytic expectation engine requires.
    pub fn all_single_relevant(&self) -> bool {
        self.algorithms
            .values()
            .flatten()
            .all(|i| i.ranks.num_relevant() == 1)
    }
}

/// Arithmetic mean of [`exact_metric`] over one algorithm's instances.
pub fn mean_metric(dataset: &EvalDataset, algorithm: &str, spec: &MetricSpec) -> Result<f64> {
    let instances = dataset.instances(algorithm)?;
    let mut sum = 0.0;
    for instance in instances {
        sum += exact_metric(&instance.ranks, spec)?;
    }
    Ok(sum / instances.len() as f64)
}
