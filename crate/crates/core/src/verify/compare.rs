use std::fmt;

use serde::Serialize;

use crate::netcore::{BreakpointFunction, VertexId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub vertex: VertexId,
    pub first: f64,
    pub second: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    /// Vertices whose breakpoints differ by more than the tolerance, or where
    /// exactly one of them is infinite.
    pub mismatches: Vec<Mismatch>,
    /// Vertices with different but tolerance-close breakpoints. These cannot
    /// be told apart in floating point and do not count as mismatches.
    pub near_ties: usize,
    /// Largest finite deviation over all vertices.
    pub max_deviation: f64,
}

impl CompareReport {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} mismatches, {} near ties, max deviation {:e}",
            self.mismatches.len(),
            self.near_ties,
            self.max_deviation
        )?;
        for m in &self.mismatches {
            writeln!(f, "  vertex {}: {} vs {}", m.vertex + 1, m.first, m.second)?;
        }
        Ok(())
    }
}

/// Per-vertex comparison of two breakpoint functions over the same vertices.
///
/// # Panics
///
/// If the two functions have different lengths.
pub fn compare_breakpoints(first: &BreakpointFunction, second: &BreakpointFunction, tol: f64) -> CompareReport {
    assert_eq!(first.len(), second.len(), "breakpoint functions over different vertex sets");
    let mut report = CompareReport { mismatches: Vec::new(), near_ties: 0, max_deviation: 0.0 };
    for (v, (&a, &b)) in first.beta.iter().zip(&second.beta).enumerate() {
        if a == b {
            continue;
        }
        let deviation = (a - b).abs();
        if a.is_finite() && b.is_finite() {
            report.max_deviation = report.max_deviation.max(deviation);
        }
        if deviation <= tol {
            report.near_ties += 1;
        } else {
            report.mismatches.push(Mismatch { vertex: v, first: a, second: b });
        }
    }
    report
}
