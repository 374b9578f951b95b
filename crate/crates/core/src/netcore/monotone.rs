use std::fmt;

use serde::Serialize;

use super::{ArcId, ParametricNetwork, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// `(s,v)` must be non-decreasing in lambda.
    SourceArcDecreasing,
    /// `(v,t)` must be non-increasing in lambda.
    SinkArcIncreasing,
    /// Every other arc must be constant.
    InteriorArcNonConstant,
    /// Capacity below zero at `lambda_min` or `lambda_max`.
    NegativeCapacity,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Rule::SourceArcDecreasing => "source arc decreasing",
            Rule::SinkArcIncreasing => "sink arc increasing",
            Rule::InteriorArcNonConstant => "interior arc non-constant",
            Rule::NegativeCapacity => "negative capacity on the interval",
        };
        f.write_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub arc: ArcId,
    pub tail: VertexId,
    pub head: VertexId,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for MonotonicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "arc {} ({} -> {}): {}", v.arc, v.tail, v.head, v.rule)?;
        }
        Ok(())
    }
}

impl std::error::Error for MonotonicityReport {}

/// Checks that source arcs are non-decreasing, sink arcs non-increasing, all
/// other arcs constant, and every capacity nonnegative at both interval ends
/// (which suffices for affine capacities). An `(s,t)` arc falls under both of
/// the first two rules and must therefore be constant.
pub fn check_monotone(net: &ParametricNetwork) -> Result<(), MonotonicityReport> {
    let topo = net.topology();
    let (s, t) = (net.source(), net.sink());
    let mut violations = Vec::new();
    for a in 0..net.num_arcs() {
        let cap = net.cap(a);
        let (u, v) = (topo.tail(a), topo.head(a));
        let mut flag = |rule| violations.push(Violation { arc: a, tail: u, head: v, rule });
        if cap.infinite {
            continue;
        }
        if cap.eval(net.lambda_min()) < 0.0 || cap.eval(net.lambda_max()) < 0.0 {
            flag(Rule::NegativeCapacity);
        }
        let source_arc = u == s;
        let sink_arc = v == t;
        if source_arc && cap.slope < 0.0 {
            flag(Rule::SourceArcDecreasing);
        }
        if sink_arc && cap.slope > 0.0 {
            flag(Rule::SinkArcIncreasing);
        }
        if !source_arc && !sink_arc && cap.slope != 0.0 {
            flag(Rule::InteriorArcNonConstant);
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(MonotonicityReport { violations })
    }
}
