//! Small numeric helpers shared across modules.

/// Neumaier-compensated sum.
///
/// Error stays at a couple of ulps regardless of the number of terms,
/// which keeps probability masses summing to 1 and expectation sums
/// stable even for supports of 10^5 entries. Sequential and
/// order-deterministic.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Running compensated accumulator for streaming sums.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        // 1 + 1e-16 * 10000 loses everything under naive f64 summation.
        let mut values = vec![1.0];
        values.extend(std::iter::repeat(1e-16).take(10_000));
        let s = compensated_sum(values);
        assert!((s - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn streaming_matches_batch() {
        let values: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        let mut acc = CompensatedSum::default();
        for &v in &values {
            acc.add(v);
        }
        assert_eq!(acc.value(), compensated_sum(values));
    }
}
