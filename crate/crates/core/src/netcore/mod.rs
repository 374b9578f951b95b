//! Parametric flow networks: affine capacities, normalization, monotonicity
//! checks, cut evaluation and contraction.

mod affine;
mod breakpoints;
mod contract;
mod monotone;
mod network;

pub mod fixtures;

pub use affine::{smallest_root, AffineFn};
pub use breakpoints::BreakpointFunction;
pub use contract::{contract, contract_source_set, Contraction, Side};
pub use monotone::{check_monotone, MonotonicityReport, Rule, Violation};
pub use network::{
    evaluate_at, normalize, ArcId, NetworkBuilder, ParametricNetwork, StaticNetwork, Topology, VertexId,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("source and sink must be distinct")]
    SourceIsSink,
    #[error("invalid parameter interval [{lambda_min}, {lambda_max}]")]
    BadInterval { lambda_min: f64, lambda_max: f64 },
    #[error("lambda = {lambda} outside [{lambda_min}, {lambda_max}]")]
    LambdaOutOfRange { lambda: f64, lambda_min: f64, lambda_max: f64 },
    #[error("arc ({tail}, {head}) has a non-finite coefficient")]
    NonFiniteCoefficient { tail: VertexId, head: VertexId },
    #[error("arc ({tail}, {head}) has a negative capacity")]
    NegativeCapacity { tail: VertexId, head: VertexId },
    #[error("malformed partition: {0}")]
    MalformedPartition(&'static str),
    #[error("the sink cannot be contracted into the source")]
    SinkContracted,
}

/// An `(s,t)`-cut given by its sink side, with its affine capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct Cut {
    pub sink_side: Vec<bool>,
    pub capacity: AffineFn,
}

impl Cut {
    pub fn new(net: &ParametricNetwork, sink_side: Vec<bool>) -> Result<Cut, NetworkError> {
        let capacity = cut_capacity(net, &sink_side)?;
        Ok(Cut { sink_side, capacity })
    }
}

/// Sum of the capacities of all arcs leaving the complement of `sink_side`
/// and entering `sink_side`.
pub fn cut_capacity(net: &ParametricNetwork, sink_side: &[bool]) -> Result<AffineFn, NetworkError> {
    if sink_side.len() != net.n() {
        return Err(NetworkError::MalformedPartition("membership vector has the wrong length"));
    }
    if sink_side[net.source()] {
        return Err(NetworkError::MalformedPartition("source on the sink side"));
    }
    if !sink_side[net.sink()] {
        return Err(NetworkError::MalformedPartition("sink on the source side"));
    }
    let topo = net.topology();
    let mut total = AffineFn::ZERO;
    for a in 0..net.num_arcs() {
        if !sink_side[topo.tail(a)] && sink_side[topo.head(a)] {
            total += net.cap(a);
        }
    }
    Ok(total)
}
