//! Parametric breadth-first search.
//!
//! A single sweep over `[lambda_min, lambda_max]`. Flows are kept as affine
//! functions of the parameter and pushed towards `t` along a reverse
//! shortest-path tree of the residual graph. The next event is the smallest
//! flow limit over the tree arcs; at that point the saturated arcs leave the
//! tree, orphans are re-adopted, and vertices that cannot be re-adopted move
//! to the source side with their breakpoint set to the current parameter.

mod queue;

pub use queue::FlowLimitQueue;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::maxflow::{solve_ibfs, UNREACHABLE};
use crate::netcore::{
    check_monotone, AffineFn, ArcId, BreakpointFunction, MonotonicityReport, ParametricNetwork, VertexId,
};
use crate::EPS;

/// Tolerance for the audited invariants that compare evaluated functions.
const AUDIT_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum PbfsError {
    #[error("network is not source-sink monotone: {0}")]
    NotMonotone(#[from] MonotonicityReport),
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PbfsStats {
    /// Distinct breakpoints above `lambda_min`.
    pub breakpoints: usize,
    /// Successful adoptions, same label or new label.
    pub adoptions: usize,
    /// Tree arcs removed because they saturated.
    pub bottleneck_edges: usize,
    /// Sum of the labels at which orphans were adopted.
    pub adopted_distance_sum: u64,
    pub init_time: Duration,
    pub loop_time: Duration,
}

impl PbfsStats {
    /// Mean label of an adopted orphan.
    pub fn mean_adopted_distance(&self) -> f64 {
        if self.adoptions == 0 {
            0.0
        } else {
            self.adopted_distance_sum as f64 / self.adoptions as f64
        }
    }
}

/// Invariant checks recorded during an instrumented run.
#[derive(Debug, Clone, Default)]
pub struct Audit {
    pub violations: Vec<String>,
    /// `(lambda_i, flow value into t at lambda_i)` at the start of every
    /// iteration, including the initial one at `lambda_min`.
    pub iterations: Vec<(f64, f64)>,
    /// Label increases per vertex.
    pub label_increases: Vec<usize>,
    pub tree_removals: usize,
}

#[derive(Debug, Clone)]
pub struct PbfsOutput {
    pub beta: BreakpointFunction,
    pub stats: PbfsStats,
    pub audit: Option<Audit>,
}

/// Computes the breakpoint function of a monotone network.
pub fn run(net: &ParametricNetwork) -> Result<PbfsOutput, PbfsError> {
    run_with(net, false)
}

/// As [`run`], additionally checking the solver invariants at every
/// iteration. Costs `O(n + m)` per iteration.
pub fn run_audited(net: &ParametricNetwork) -> Result<PbfsOutput, PbfsError> {
    run_with(net, true)
}

fn run_with(net: &ParametricNetwork, audit: bool) -> Result<PbfsOutput, PbfsError> {
    check_monotone(net)?;
    let start = Instant::now();
    let mut state = PbfsState::initialize(net, audit);
    let init_time = start.elapsed();
    let start = Instant::now();
    while state.lambda < net.lambda_max() {
        if state.advance().is_none() {
            break;
        }
        state.reconnect_tree();
        state.drain_excess();
    }
    let loop_time = start.elapsed();
    if let Some(audit) = state.audit.as_mut() {
        let n = net.n();
        let bound = n.saturating_mul(net.num_arcs());
        if audit.tree_removals > bound {
            audit.violations.push(format!("{} tree removals exceed n*m = {bound}", audit.tree_removals));
        }
    }
    let beta = BreakpointFunction::new(net.lambda_min(), state.beta);
    let mut stats = state.stats;
    stats.breakpoints = beta.breakpoint_count();
    stats.init_time = init_time;
    stats.loop_time = loop_time;
    Ok(PbfsOutput { beta, stats, audit: state.audit })
}

/// Solver state between the steps of the sweep.
#[derive(Debug, Clone)]
pub struct PbfsState<'a> {
    net: &'a ParametricNetwork,
    lambda: f64,
    flow: Vec<AffineFn>,
    lambda_root: Vec<f64>,
    excess: Vec<AffineFn>,
    dirty: Vec<bool>,
    dirty_list: Vec<VertexId>,
    in_sink: Vec<bool>,
    dist: Vec<u32>,
    parent: Vec<Option<ArcId>>,
    current: Vec<ArcId>,
    orphans: VecDeque<VertexId>,
    /// Orphans with no tree arc at their label, relabeled together.
    stranded: Vec<bool>,
    stranded_list: Vec<VertexId>,
    relabel_heap: BinaryHeap<Reverse<(u32, VertexId, ArcId)>>,
    queue: FlowLimitQueue,
    beta: Vec<f64>,
    buckets: Vec<Vec<VertexId>>,
    stats: PbfsStats,
    audit: Option<Audit>,
}

impl<'a> PbfsState<'a> {
    /// Maximum flow at `lambda_min`, sink tree, flow functions of the
    /// saturated terminal arcs, and the first drain.
    pub fn initialize(net: &'a ParametricNetwork, audit: bool) -> Self {
        let topo = net.topology();
        let (n, m) = (topo.n(), topo.num_arcs());
        let (s, t) = (topo.source(), topo.sink());
        let lambda = net.lambda_min();
        let init = solve_ibfs(&net.evaluate_unchecked(lambda));
        let tree = init.sink_tree;
        let beta = tree.in_sink.iter().map(|&b| if b { f64::INFINITY } else { lambda }).collect();
        let mut state = PbfsState {
            net,
            lambda,
            flow: init.flow.flow.iter().map(|&f| AffineFn::constant(f)).collect(),
            lambda_root: vec![f64::INFINITY; m],
            excess: vec![AffineFn::ZERO; n],
            dirty: vec![false; n],
            dirty_list: Vec::new(),
            in_sink: tree.in_sink,
            dist: tree.dist,
            parent: tree.parent,
            current: (0..n).map(|v| topo.out_arcs(v).start).collect(),
            orphans: VecDeque::new(),
            stranded: vec![false; n],
            stranded_list: Vec::new(),
            relabel_heap: BinaryHeap::new(),
            queue: FlowLimitQueue::new(m),
            beta,
            buckets: vec![Vec::new(); n],
            stats: PbfsStats::default(),
            audit: audit.then(|| Audit { label_increases: vec![0; n], ..Audit::default() }),
        };
        state.calc_flow_functions();
        // every tree arc needs a flow limit, touched by excess or not
        for v in 0..n {
            if state.in_sink[v] && v != t && v != s {
                state.mark(v);
            }
        }
        state.drain_excess();
        state
    }

    fn calc_flow_functions(&mut self) {
        let topo = self.net.topology();
        let (s, t) = (topo.source(), topo.sink());
        let lambda = self.lambda;
        for a in topo.out_arcs(s) {
            let v = topo.head(a);
            let c = self.net.cap(a);
            if v == t || !self.in_sink[v] || c.infinite || c.eval(lambda) - self.flow[a].eval(lambda) > EPS {
                continue;
            }
            self.excess[v] += c - self.flow[a];
            self.mark(v);
            self.set_flow(a, c);
        }
        for b in topo.out_arcs(t) {
            let a = topo.rev(b);
            let v = topo.tail(a);
            let c = self.net.cap(a);
            if c.infinite || c.eval(lambda) - self.flow[a].eval(lambda) > EPS {
                continue;
            }
            if self.in_sink[v] && v != s {
                self.excess[v] += self.flow[a] - c;
                self.mark(v);
            }
            self.set_flow(a, c);
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn flow(&self, a: ArcId) -> AffineFn {
        self.flow[a]
    }

    pub fn lambda_root(&self, a: ArcId) -> f64 {
        self.lambda_root[a]
    }

    pub fn excess(&self, v: VertexId) -> AffineFn {
        self.excess[v]
    }

    pub fn parent(&self, v: VertexId) -> Option<ArcId> {
        self.parent[v]
    }

    pub fn dist(&self, v: VertexId) -> u32 {
        self.dist[v]
    }

    pub fn in_sink(&self, v: VertexId) -> bool {
        self.in_sink[v]
    }

    pub fn beta(&self, v: VertexId) -> f64 {
        self.beta[v]
    }

    pub fn orphans(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.orphans.iter().copied()
    }

    pub fn stats(&self) -> &PbfsStats {
        &self.stats
    }

    fn set_flow(&mut self, a: ArcId, f: AffineFn) {
        self.flow[a] = f;
        self.flow[self.net.topology().rev(a)] = -f;
    }

    fn mark(&mut self, v: VertexId) {
        if v != self.net.sink() && !self.dirty[v] {
            self.dirty[v] = true;
            self.dirty_list.push(v);
        }
    }

    /// Residual capacity of `a` at the current parameter value.
    fn residual(&self, a: ArcId) -> f64 {
        let c = self.net.cap(a);
        if c.infinite {
            f64::INFINITY
        } else {
            c.eval(self.lambda) - self.flow[a].eval(self.lambda)
        }
    }

    /// Moves to the next parameter value, the smallest flow limit of a tree
    /// arc, and removes every tree arc saturating there. Returns `None` when
    /// that value lies beyond `lambda_max`.
    pub fn advance(&mut self) -> Option<f64> {
        let (key, _) = self.queue.peek()?;
        if key > self.net.lambda_max() {
            return None;
        }
        if key <= self.lambda {
            self.violation(format!("parameter did not increase: {key} after {}", self.lambda));
        }
        let next = key.max(self.lambda);
        self.lambda = next;
        while let Some((k, a)) = self.queue.peek() {
            if k > next + EPS {
                break;
            }
            self.stats.bottleneck_edges += 1;
            self.remove_tree_edge(a, true);
        }
        Some(next)
    }

    /// Takes `a = (u, v)` out of the tree. Its flow keeps its value at the
    /// current parameter; a saturated arc keeps tracking its capacity. The
    /// change is booked as excess at both ends.
    fn remove_tree_edge(&mut self, a: ArcId, saturated: bool) {
        let topo = self.net.topology();
        let (u, v) = (topo.tail(a), topo.head(a));
        let c = self.net.cap(a);
        let f = self.flow[a];
        let f_new = if c.infinite {
            AffineFn::constant(f.eval(self.lambda))
        } else if saturated {
            c
        } else {
            AffineFn::new(c.slope, c.intercept + f.eval(self.lambda) - c.eval(self.lambda))
        };
        let delta = f - f_new;
        self.excess[u] += delta;
        if v != topo.sink() {
            self.excess[v] -= delta;
        }
        self.set_flow(a, f_new);
        self.lambda_root[a] = f64::INFINITY;
        self.queue.remove(a);
        self.parent[u] = None;
        self.orphans.push_back(u);
        self.mark(u);
        self.mark(v);
        if let Some(audit) = self.audit.as_mut() {
            audit.tree_removals += 1;
        }
    }

    /// Re-adopts every orphan or moves it to the source side.
    ///
    /// Orphans first try a tree arc at their old label. The ones that fail
    /// lose their children and are relabeled together by a shortest-path
    /// search from the rest of the tree; unreached ones leave the sink side.
    pub fn reconnect_tree(&mut self) {
        let topo = self.net.topology();
        while let Some(u) = self.orphans.pop_front() {
            if self.stranded[u] || self.adopt_with_same_dist(u) {
                continue;
            }
            self.stranded[u] = true;
            self.stranded_list.push(u);
            for b in topo.out_arcs(u) {
                let w = topo.head(b);
                let back = topo.rev(b);
                if self.in_sink[w] && self.parent[w] == Some(back) {
                    self.remove_tree_edge(back, false);
                }
            }
        }
        if !self.stranded_list.is_empty() {
            self.relabel_stranded();
        }
    }

    /// Residual arc into the sink component.
    fn usable(&self, a: ArcId) -> bool {
        let w = self.net.topology().head(a);
        self.in_sink[w] && !self.stranded[w] && self.residual(a) > EPS
    }

    fn adopt_with_same_dist(&mut self, u: VertexId) -> bool {
        let topo = self.net.topology();
        let end = topo.out_arcs(u).end;
        let d = self.dist[u];
        while self.current[u] < end {
            let a = self.current[u];
            self.current[u] += 1;
            if self.usable(a) && self.dist[topo.head(a)] + 1 == d {
                self.parent[u] = Some(a);
                self.stats.adoptions += 1;
                self.stats.adopted_distance_sum += u64::from(d);
                return true;
            }
        }
        false
    }

    fn relabel_stranded(&mut self) {
        let topo = self.net.topology();
        let mut heap = std::mem::take(&mut self.relabel_heap);
        for &u in &self.stranded_list {
            for a in topo.out_arcs(u) {
                if self.usable(a) {
                    heap.push(Reverse((self.dist[topo.head(a)] + 1, u, a)));
                }
            }
        }
        while let Some(Reverse((d, u, a))) = heap.pop() {
            if !self.stranded[u] {
                continue;
            }
            self.stranded[u] = false;
            self.set_label(u, d, a);
            for b in topo.out_arcs(u) {
                let x = topo.head(b);
                let back = topo.rev(b);
                if self.stranded[x] && self.residual(back) > EPS {
                    heap.push(Reverse((d + 1, x, back)));
                }
            }
        }
        self.relabel_heap = heap;
        let stranded = std::mem::take(&mut self.stranded_list);
        for &u in &stranded {
            if self.stranded[u] {
                self.stranded[u] = false;
                self.beta[u] = self.lambda;
                self.in_sink[u] = false;
                self.dist[u] = UNREACHABLE;
                self.excess[u] = AffineFn::ZERO;
            }
        }
        self.stranded_list = stranded;
        self.stranded_list.clear();
    }

    fn set_label(&mut self, u: VertexId, d: u32, a: ArcId) {
        let old = self.dist[u];
        let n = self.net.n();
        if let Some(audit) = self.audit.as_mut() {
            if d <= old {
                audit.violations.push(format!("label of vertex {u} dropped from {old} to {d}"));
            }
            audit.label_increases[u] += 1;
            if audit.label_increases[u] > n {
                audit.violations.push(format!("label of vertex {u} increased more than n times"));
            }
        }
        self.dist[u] = d;
        self.parent[u] = Some(a);
        self.current[u] = self.net.topology().out_arcs(u).start;
        self.stats.adoptions += 1;
        self.stats.adopted_distance_sum += u64::from(d);
    }

    /// Pushes the excess of every dirty vertex along the tree towards `t`,
    /// deepest vertices first, and refreshes the flow limits on the way.
    pub fn drain_excess(&mut self) {
        let topo = self.net.topology();
        let t = topo.sink();
        let mut deepest = 0;
        for i in 0..self.dirty_list.len() {
            let v = self.dirty_list[i];
            if self.in_sink[v] {
                let d = self.dist[v] as usize;
                self.buckets[d].push(v);
                deepest = deepest.max(d);
            }
        }
        for d in (1..=deepest).rev() {
            let bucket = std::mem::take(&mut self.buckets[d]);
            for &u in &bucket {
                let a = self.parent[u].expect("sink-side vertex without tree arc");
                let ex = std::mem::take(&mut self.excess[u]);
                self.set_flow(a, self.flow[a] + ex);
                let root = (self.net.cap(a) - self.flow[a]).smallest_root(self.lambda);
                self.lambda_root[a] = root;
                self.queue.set(a, root);
                let v = topo.head(a);
                if v != t {
                    self.excess[v] += ex;
                    if !self.dirty[v] {
                        self.mark(v);
                        self.buckets[d - 1].push(v);
                    }
                }
            }
            // keep the allocation
            let mut bucket = bucket;
            bucket.clear();
            self.buckets[d] = bucket;
        }
        for &v in &self.dirty_list {
            self.dirty[v] = false;
        }
        self.dirty_list.clear();
        if self.audit.is_some() {
            self.check_iteration();
        }
    }

    fn violation(&mut self, message: String) {
        if let Some(audit) = self.audit.as_mut() {
            audit.violations.push(message);
        }
    }

    fn check_iteration(&mut self) {
        let topo = self.net.topology();
        let t = topo.sink();
        let lambda = self.lambda;
        let mut found = Vec::new();
        for u in 0..topo.n() {
            if !self.in_sink[u] || u == t {
                continue;
            }
            let ex = self.excess[u].eval(lambda);
            if ex.abs() > AUDIT_TOL * self.excess[u].intercept.abs().max(1.0) {
                found.push(format!("excess {ex} at vertex {u} at lambda {lambda}"));
            }
            let Some(a) = self.parent[u] else {
                found.push(format!("sink-side vertex {u} has no tree arc at lambda {lambda}"));
                continue;
            };
            let w = topo.head(a);
            if !self.in_sink[w] || self.dist[u] != self.dist[w] + 1 {
                found.push(format!("tree arc {a} ({u},{w}) not admissible at lambda {lambda}"));
            }
            if self.residual(a) < -AUDIT_TOL || self.lambda_root[a] <= lambda {
                found.push(format!("tree arc {a} ({u},{w}) not residual at lambda {lambda}"));
            }
        }
        let value: f64 = topo.out_arcs(t).map(|b| self.flow[topo.rev(b)].eval(lambda)).sum();
        let audit = self.audit.as_mut().expect("audit enabled");
        audit.violations.extend(found);
        audit.iterations.push((lambda, value));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::fixtures::{self, *};

    fn assert_beta(beta: &BreakpointFunction, expected: &[(VertexId, f64)]) {
        for &(v, b) in expected {
            let got = beta.get(v);
            assert!(got == b || (got - b).abs() < 1e-9, "vertex {v}: {got} != {b}");
        }
    }

    #[test]
    fn f1_breakpoints() {
        let out = run(&fixtures::f1()).unwrap();
        assert_beta(&out.beta, &[(F1_S, 0.0), (F1_T, f64::INFINITY), (F1_V, 1.0)]);
        assert_eq!(out.stats.breakpoints, 1);
    }

    #[test]
    fn f2_breakpoints() {
        let out = run(&fixtures::f2()).unwrap();
        assert_beta(&out.beta, &[(F2_S, 0.0), (F2_T, f64::INFINITY), (F2_A, 1.5), (F2_B, 1.0)]);
        assert_eq!(out.stats.breakpoints, 2);
    }

    #[test]
    fn f1_on_short_interval_has_no_breakpoint() {
        let net = fixtures::f1().with_interval(0.0, 0.5).unwrap();
        let out = run(&net).unwrap();
        assert_beta(&out.beta, &[(F1_V, f64::INFINITY), (F1_T, f64::INFINITY)]);
        assert_eq!(out.stats.breakpoints, 0);
    }

    #[test]
    fn f1_initialize() {
        let net = fixtures::f1();
        let topo = net.topology();
        let state = PbfsState::initialize(&net, false);
        let sv = topo.find_arc(F1_S, F1_V).unwrap();
        let vt = topo.find_arc(F1_V, F1_T).unwrap();
        assert_eq!(state.flow(sv), AffineFn::new(1.0, 0.0));
        assert_eq!(state.flow(vt), AffineFn::new(1.0, 0.0));
        assert_eq!(state.lambda_root(vt), 1.0);
        assert_eq!(state.parent(F1_V), Some(vt));
    }

    #[test]
    fn f2_initialize() {
        let net = fixtures::f2();
        let state = PbfsState::initialize(&net, false);
        assert!(state.in_sink(F2_A) && state.in_sink(F2_B) && state.in_sink(F2_T));
        assert_eq!(state.dist(F2_A), 1);
        assert_eq!(state.dist(F2_B), 1);
    }

    #[test]
    fn f1_advance() {
        let net = fixtures::f1();
        let mut state = PbfsState::initialize(&net, false);
        assert_eq!(state.advance(), Some(1.0));
        assert_eq!(state.orphans().collect::<Vec<_>>(), vec![F1_V]);
        assert_eq!(state.parent(F1_V), None);
        // f(v,t) snapped to its capacity, the difference sits at v
        let ex = state.excess(F1_V);
        assert_eq!((ex.slope, ex.intercept), (1.0, -1.0));
        state.reconnect_tree();
        assert_eq!(state.beta(F1_V), 1.0);
    }

    #[test]
    fn f2_advance() {
        let net = fixtures::f2();
        let mut state = PbfsState::initialize(&net, false);
        assert_eq!(state.advance(), Some(1.0));
        state.reconnect_tree();
        assert_eq!(state.beta(F2_B), 1.0);
        assert!(state.in_sink(F2_A));
    }

    #[test]
    fn f1_on_short_interval_is_exhausted() {
        let net = fixtures::f1().with_interval(0.0, 0.5).unwrap();
        let mut state = PbfsState::initialize(&net, false);
        assert_eq!(state.advance(), None);
    }

    #[test]
    fn source_side_at_lambda_min() {
        // min cut {s,v}|{t} at lambda 0: v leaves immediately
        let net = crate::netcore::NetworkBuilder::new(3, 0, 1, 0.0, 1.0)
            .arc(0, 2, AffineFn::new(1.0, 5.0))
            .arc(2, 1, AffineFn::constant(1.0))
            .build()
            .unwrap();
        let out = run(&net).unwrap();
        assert_eq!(out.beta.get(2), 0.0);
        assert_eq!(out.stats.breakpoints, 0);
    }

    #[test]
    fn audited_fixtures_are_clean() {
        for net in [fixtures::f1(), fixtures::f2()] {
            let out = run_audited(&net).unwrap();
            let audit = out.audit.unwrap();
            assert!(audit.violations.is_empty(), "{:?}", audit.violations);
        }
        let audit = run_audited(&fixtures::f2()).unwrap().audit.unwrap();
        let lambdas: Vec<f64> = audit.iterations.iter().map(|x| x.0).collect();
        assert_eq!(lambdas, vec![0.0, 1.0, 1.5]);
        // max flow of F2: 3λ up to 1, 2λ+1 up to 1.5, then 4
        assert_eq!(audit.iterations[1].1, 3.0);
        assert_eq!(audit.iterations[2].1, 4.0);
    }

    #[test]
    fn rejects_non_monotone_input() {
        let net = crate::netcore::NetworkBuilder::new(3, 0, 1, 0.0, 1.0)
            .arc(0, 2, AffineFn::new(-1.0, 5.0))
            .build()
            .unwrap();
        assert!(matches!(run(&net), Err(PbfsError::NotMonotone(_))));
    }
}
