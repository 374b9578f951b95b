//! Two tiny reference networks used throughout the tests and docs.
//!
//! `F1`: `s -> v` with capacity `lambda`, `v -> t` with capacity 1, on `[0, 2]`.
//! `F2`: `s -> a: 2 lambda`, `s -> b: lambda`, `a -> b: 1`, `a -> t: 3`,
//! `b -> t: 1`, on `[0, 5]`.
//!
//! Vertex ids put `s` and `t` first, so the 1-based file ids are `s = 1`,
//! `t = 2`, followed by the interior vertices.

use super::{AffineFn, NetworkBuilder, ParametricNetwork, VertexId};

pub const F1_S: VertexId = 0;
pub const F1_T: VertexId = 1;
pub const F1_V: VertexId = 2;

pub const F2_S: VertexId = 0;
pub const F2_T: VertexId = 1;
pub const F2_A: VertexId = 2;
pub const F2_B: VertexId = 3;

pub fn f1_builder() -> NetworkBuilder {
    NetworkBuilder::new(3, F1_S, F1_T, 0.0, 2.0)
        .arc(F1_S, F1_V, AffineFn::new(1.0, 0.0))
        .arc(F1_V, F1_T, AffineFn::constant(1.0))
}

pub fn f1() -> ParametricNetwork {
    f1_builder().build().expect("F1 is well formed")
}

pub fn f2_builder() -> NetworkBuilder {
    NetworkBuilder::new(4, F2_S, F2_T, 0.0, 5.0)
        .arc(F2_S, F2_A, AffineFn::new(2.0, 0.0))
        .arc(F2_S, F2_B, AffineFn::new(1.0, 0.0))
        .arc(F2_A, F2_B, AffineFn::constant(1.0))
        .arc(F2_A, F2_T, AffineFn::constant(3.0))
        .arc(F2_B, F2_T, AffineFn::constant(1.0))
}

pub fn f2() -> ParametricNetwork {
    f2_builder().build().expect("F2 is well formed")
}

/// `F1` in the `.pmax` text format.
pub const F1_PMAX: &str = "p pmax 3 2\nn 1 s\nn 2 t\nl 0 2\na 1 3 1 0\na 3 2 0 1\n";

/// `F2` in the `.pmax` text format.
pub const F2_PMAX: &str = "p pmax 4 5\nn 1 s\nn 2 t\nl 0 5\na 1 3 2 0\na 1 4 1 0\na 3 2 0 3\na 3 4 0 1\na 4 2 0 1\n";
