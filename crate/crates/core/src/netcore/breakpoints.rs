use serde::{Deserialize, Serialize};

use super::VertexId;

/// Encodes the whole nested family of sink-minimal minimum cuts.
///
/// `beta[v]` is the parameter value at which `v` moves to the source side:
/// for every `lambda`, the sink side is `{v : beta[v] > lambda}`. The source
/// holds `lambda_min`, vertices that never leave the sink side hold `+inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakpointFunction {
    pub lambda_min: f64,
    pub beta: Vec<f64>,
}

impl BreakpointFunction {
    pub fn new(lambda_min: f64, beta: Vec<f64>) -> Self {
        BreakpointFunction { lambda_min, beta }
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> f64 {
        self.beta[v]
    }

    /// `V_t(beta, lambda)`.
    pub fn sink_side_at(&self, lambda: f64) -> Vec<bool> {
        self.beta.iter().map(|&b| b > lambda).collect()
    }

    /// Distinct finite values above `lambda_min`, ascending.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .beta
            .iter()
            .copied()
            .filter(|b| b.is_finite() && *b > self.lambda_min)
            .collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    }

    pub fn breakpoint_count(&self) -> usize {
        self.breakpoints().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sink_side_uses_strict_comparison() {
        let b = BreakpointFunction::new(0.0, vec![0.0, f64::INFINITY, 1.0, 1.5]);
        assert_eq!(b.sink_side_at(0.5), vec![false, true, true, true]);
        assert_eq!(b.sink_side_at(1.0), vec![false, true, false, true]);
        assert_eq!(b.sink_side_at(1.5), vec![false, true, false, false]);
    }

    #[test]
    fn counts_distinct_interior_values() {
        let b = BreakpointFunction::new(0.0, vec![0.0, f64::INFINITY, 1.0, 1.0, 2.0, 0.0]);
        assert_eq!(b.breakpoints(), vec![1.0, 2.0]);
        assert_eq!(b.breakpoint_count(), 2);
    }
}
