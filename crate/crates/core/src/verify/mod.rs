//! Independent checks for breakpoint functions.
//!
//! Nothing here shares code with the solvers beyond the network types and
//! the Edmonds–Karp reference solver.

mod compare;
mod oracle;
mod random;
mod solution;

pub use compare::{compare_breakpoints, CompareReport, Mismatch};
pub use oracle::{brute_force_breakpoints, oracle_breakpoints, BRUTE_FORCE_MAX_VERTICES, ORACLE_MAX_VERTICES};
pub use random::{random_monotone_network, random_monotone_network_of_size, random_static_network, SinkMode};
pub use solution::{verify_solution, VerifyReport, VerifyViolation};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("network has {n} vertices, the limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("breakpoint function has {got} entries, network has {expected} vertices")]
    LengthMismatch { got: usize, expected: usize },
}
