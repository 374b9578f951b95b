//! File formats and instance families.
//!
//! * `.pmax`: parametric extension of the DIMACS max-flow format. Plain
//!   `p max` files load as constant networks on `[0, 1]`.
//! * `.fg`: face adjacency of a polygon subdivision, turned into an
//!   aggregation network by [`build_aggregation_network`].
//! * breakpoint CSV and the flat stats JSON object.

mod export;
mod facegraph;
mod pmax;
mod synth;

pub use export::{export_breakpoints_csv, parse_breakpoints_csv, RunStats};
pub use facegraph::{
    build_aggregation_network, grid_face_graph, parse_face_graph, write_face_graph, Face, FaceGraph, FaceKind,
    DEFAULT_AGGREGATION_LAMBDA_MAX,
};
pub use pmax::{parse_pmax, parse_pmax_unchecked, write_pmax, MAX_VERTICES};
pub use synth::{synth_parametrize, SplitMix64, SYNTH_DEFAULT_INTERVAL};

use thiserror::Error;

use crate::netcore::{MonotonicityReport, NetworkError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("{0}")]
    NotMonotone(#[from] MonotonicityReport),
    #[error("{0}")]
    Invalid(String),
}

pub(crate) fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}
