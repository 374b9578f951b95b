//! Monotone parametric minimum cut.
//!
//! Given a flow network whose source arcs grow and whose sink arcs shrink
//! affinely in a parameter `lambda`, compute the breakpoint function: for
//! every vertex, the parameter value at which it leaves the sink side of the
//! sink-minimal minimum cut.
//!
//! * [`pbfs`] computes it in a single sweep over the parameter interval,
//!   maintaining parametric flow functions and a sink shortest-path tree.
//! * [`dichotomic`] is the recursive-bisection baseline on top of a static
//!   solver from [`maxflow`].
//! * [`verify`] holds the independent oracle and solution checkers.
//! * [`instances`] reads and writes the file formats and builds the
//!   aggregation and synthetic instance families.

pub mod dichotomic;
pub mod instances;
pub mod maxflow;
pub mod netcore;
pub mod pbfs;
pub mod verify;

/// Absolute tolerance on capacities and parameter values. An arc is saturated
/// when its residual capacity is at most `EPS`.
pub const EPS: f64 = 1e-9;

pub use netcore::{AffineFn, BreakpointFunction, ParametricNetwork, StaticNetwork};
