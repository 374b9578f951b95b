//! Static maximum-flow solvers and residual-graph queries.
//!
//! Three independent solvers share the same flow representation: an
//! antisymmetric per-arc flow array. [`solve_ibfs`] additionally returns the
//! sink shortest-path tree of the final residual graph, which seeds the
//! parametric sweep.

mod ek;
mod ibfs;
mod prf;

pub use ek::solve_ek;
pub use ibfs::{solve_ibfs, IbfsResult, IbfsStats};
pub use prf::solve_prf;

use std::collections::VecDeque;

use crate::netcore::{ArcId, StaticNetwork, Topology};
use crate::EPS;

/// Label of a vertex that cannot reach the sink.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct StaticFlow {
    /// Antisymmetric: `flow[a] == -flow[rev(a)]`.
    pub flow: Vec<f64>,
    pub value: f64,
}

impl StaticFlow {
    pub(crate) fn zero(m: usize) -> Self {
        StaticFlow { flow: vec![0.0; m], value: 0.0 }
    }

    /// Net flow leaving the source.
    pub(crate) fn recompute_value(&mut self, topo: &Topology) {
        self.value = topo.out_arcs(topo.source()).map(|a| self.flow[a]).sum();
    }
}

/// Residual capacity `cap - flow`, with infinite capacities never saturating.
#[inline]
pub fn residual(cap: f64, flow: f64) -> f64 {
    if cap == f64::INFINITY {
        f64::INFINITY
    } else {
        cap - flow
    }
}

/// Exact unweighted distances to the sink in a residual graph, plus the
/// reverse BFS tree realizing them.
#[derive(Debug, Clone, PartialEq)]
pub struct SinkTree {
    /// `UNREACHABLE` outside the sink component.
    pub dist: Vec<u32>,
    /// Tree arc `(v, parent)` for every sink-component vertex except the sink.
    pub parent: Vec<Option<ArcId>>,
    pub in_sink: Vec<bool>,
}

impl SinkTree {
    pub fn sink_count(&self) -> usize {
        self.in_sink.iter().filter(|&&b| b).count()
    }
}

/// Reverse BFS from the sink over arcs with residual capacity above `EPS`.
/// Vertices are expanded in BFS order and arcs in id order, so the first
/// (lowest-id) arc reaching a vertex becomes its tree arc.
pub fn sink_tree(net: &StaticNetwork<'_>, flow: &[f64]) -> SinkTree {
    let topo = net.topology();
    let n = topo.n();
    let t = topo.sink();
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![None; n];
    let mut queue = VecDeque::new();
    dist[t] = 0;
    queue.push_back(t);
    while let Some(v) = queue.pop_front() {
        for a in topo.out_arcs(v) {
            let u = topo.head(a);
            if dist[u] != UNREACHABLE {
                continue;
            }
            let b = topo.rev(a);
            if residual(net.cap(b), flow[b]) > EPS {
                dist[u] = dist[v] + 1;
                parent[u] = Some(b);
                queue.push_back(u);
            }
        }
    }
    let in_sink = dist.iter().map(|&d| d != UNREACHABLE).collect();
    SinkTree { dist, parent, in_sink }
}

/// Vertices with a residual path to the sink. For a maximum flow this is the
/// sink side of the sink-minimal minimum cut.
pub fn sink_component(net: &StaticNetwork<'_>, flow: &StaticFlow) -> Vec<bool> {
    sink_tree(net, &flow.flow).in_sink
}

/// Capacities with every infinite arc replaced by one more than the sum of all
/// finite capacities. No finite cut reaches that bound, so the substitute
/// never saturates in a maximum flow of a network with a finite minimum cut.
pub(crate) fn bounded_caps(net: &StaticNetwork<'_>) -> Vec<f64> {
    let finite_total: f64 = net.caps().iter().filter(|c| c.is_finite()).sum();
    let bound = 1.0 + finite_total;
    net.caps().iter().map(|&c| if c.is_finite() { c } else { bound }).collect()
}

#[inline]
pub(crate) fn push(topo: &Topology, flow: &mut [f64], a: ArcId, delta: f64) {
    flow[a] += delta;
    flow[topo.rev(a)] -= delta;
}

/// Static solver selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Ibfs,
    Prf,
    Ek,
}

impl Solver {
    pub fn solve(self, net: &StaticNetwork<'_>) -> StaticFlow {
        match self {
            Solver::Ibfs => solve_ibfs(net).flow,
            Solver::Prf => solve_prf(net),
            Solver::Ek => solve_ek(net),
        }
    }

    /// Maximum flow and the sink side of the sink-minimal minimum cut.
    pub fn min_cut(self, net: &StaticNetwork<'_>) -> (StaticFlow, Vec<bool>) {
        match self {
            Solver::Ibfs => {
                let r = solve_ibfs(net);
                (r.flow, r.sink_tree.in_sink)
            }
            _ => {
                let flow = self.solve(net);
                let side = sink_component(net, &flow);
                (flow, side)
            }
        }
    }
}

/// Net inflow of every vertex; zero except at the terminals for a flow.
pub fn imbalance(topo: &Topology, flow: &[f64]) -> Vec<f64> {
    let mut net_in = vec![0.0; topo.n()];
    for (a, &f) in flow.iter().enumerate() {
        net_in[topo.head(a)] += f;
    }
    net_in
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::netcore::fixtures::*;

    pub fn check_flow(net: &StaticNetwork<'_>, f: &StaticFlow) {
        let topo = net.topology();
        for a in 0..topo.num_arcs() {
            assert_eq!(f.flow[a], -f.flow[topo.rev(a)], "antisymmetry at arc {a}");
            assert!(f.flow[a] <= net.cap(a) + 1e-7, "capacity at arc {a}");
        }
        let imb = imbalance(topo, &f.flow);
        for v in 0..topo.n() {
            if !topo.is_terminal(v) {
                assert!(imb[v].abs() < 1e-7, "conservation at {v}: {}", imb[v]);
            }
        }
    }

    fn all_solvers(net: &StaticNetwork<'_>) -> [StaticFlow; 3] {
        [solve_ibfs(net).flow, solve_prf(net), solve_ek(net)]
    }

    #[test]
    fn f1_at_half() {
        let p = f1();
        let net = p.evaluate_at(0.5).unwrap();
        for f in all_solvers(&net) {
            assert!((f.value - 0.5).abs() < 1e-12);
            check_flow(&net, &f);
            let side = sink_component(&net, &f);
            assert_eq!(side, vec![false, true, true]);
        }
    }

    #[test]
    fn f1_at_one_and_a_half() {
        let p = f1();
        let net = p.evaluate_at(1.5).unwrap();
        for f in all_solvers(&net) {
            assert!((f.value - 1.0).abs() < 1e-12);
            assert_eq!(sink_component(&net, &f), vec![false, true, false]);
        }
    }

    #[test]
    fn f2_values() {
        let p = f2();
        for (lambda, expected) in [(0.0, 0.0), (2.0, 4.0), (1.2, 3.4)] {
            let net = p.evaluate_at(lambda).unwrap();
            for f in all_solvers(&net) {
                assert!((f.value - expected).abs() < 1e-9, "lambda {lambda}: {}", f.value);
                check_flow(&net, &f);
            }
        }
    }

    #[test]
    fn f2_sink_side_at_1_2() {
        let p = f2();
        let net = p.evaluate_at(1.2).unwrap();
        for f in all_solvers(&net) {
            let side = sink_component(&net, &f);
            let members: Vec<_> = (0..4).filter(|&v| side[v]).collect();
            assert_eq!(members, vec![F2_T, F2_A]);
        }
    }

    #[test]
    fn zero_capacity_network() {
        let net = StaticNetwork::from_arcs(4, 0, 1, &[(0, 2, 0.0), (2, 3, 0.0), (3, 1, 0.0)]).unwrap();
        for f in all_solvers(&net) {
            assert_eq!(f.value, 0.0);
        }
    }

    #[test]
    fn infinite_arcs_never_saturate() {
        // s -inf-> a -2-> t, s -3-> b -inf-> t
        let net = StaticNetwork::from_arcs(
            4,
            0,
            1,
            &[(0, 2, f64::INFINITY), (2, 1, 2.0), (0, 3, 3.0), (3, 1, f64::INFINITY)],
        )
        .unwrap();
        for f in all_solvers(&net) {
            assert!((f.value - 5.0).abs() < 1e-12);
            check_flow(&net, &f);
            let side = sink_component(&net, &f);
            assert_eq!(side, vec![false, true, false, true]);
        }
    }

    #[test]
    fn ibfs_tree_is_exact_bfs() {
        let p = f2();
        let net = p.evaluate_at(0.0).unwrap();
        let r = solve_ibfs(&net);
        assert_eq!(r.sink_tree.dist[F2_T], 0);
        assert_eq!(r.sink_tree.dist[F2_A], 1);
        assert_eq!(r.sink_tree.dist[F2_B], 1);
        assert_eq!(r.sink_tree.dist[F2_S], UNREACHABLE);
    }
}
