use std::collections::VecDeque;

use super::{bounded_caps, push, StaticFlow};
use crate::netcore::{StaticNetwork, Topology, VertexId};
use crate::EPS;

/// Highest-label push-relabel with the gap heuristic and a global relabel
/// after every `n` relabel operations.
///
/// The first phase computes a maximum preflow; the second returns the
/// remaining excess to the source so the result is a proper flow.
pub fn solve_prf(net: &StaticNetwork<'_>) -> StaticFlow {
    let topo = net.topology();
    let cap = bounded_caps(net);
    let mut prf = PushRelabel::new(topo, &cap);
    prf.max_preflow();
    prf.return_excess();
    let mut result = StaticFlow { flow: prf.flow, value: 0.0 };
    result.recompute_value(topo);
    result
}

struct PushRelabel<'a> {
    topo: &'a Topology,
    cap: &'a [f64],
    flow: Vec<f64>,
    excess: Vec<f64>,
    label: Vec<usize>,
    current: Vec<usize>,
    /// Active vertices by label, phase one only.
    buckets: Vec<Vec<VertexId>>,
    active: Vec<bool>,
    /// Number of vertices per label below `n`, for the gap heuristic.
    count: Vec<usize>,
    highest: usize,
    relabels_since_global: usize,
}

impl<'a> PushRelabel<'a> {
    fn new(topo: &'a Topology, cap: &'a [f64]) -> Self {
        let n = topo.n();
        PushRelabel {
            topo,
            cap,
            flow: vec![0.0; topo.num_arcs()],
            excess: vec![0.0; n],
            label: vec![0; n],
            current: (0..n).map(|v| topo.out_arcs(v).start).collect(),
            buckets: vec![Vec::new(); n],
            active: vec![false; n],
            count: vec![0; n + 1],
            highest: 0,
            relabels_since_global: 0,
        }
    }

    #[inline]
    fn res(&self, a: usize) -> f64 {
        self.cap[a] - self.flow[a]
    }

    fn push_arc(&mut self, a: usize, delta: f64) {
        push(self.topo, &mut self.flow, a, delta);
        self.excess[self.topo.tail(a)] -= delta;
        self.excess[self.topo.head(a)] += delta;
    }

    fn activate(&mut self, v: VertexId) {
        let n = self.topo.n();
        if self.active[v] || self.label[v] >= n || self.excess[v] <= EPS || self.topo.is_terminal(v) {
            return;
        }
        self.active[v] = true;
        let d = self.label[v];
        self.buckets[d].push(v);
        self.highest = self.highest.max(d);
    }

    /// Exact distances to the sink in the residual graph; vertices that cannot
    /// reach it get label `n`.
    fn global_relabel(&mut self) {
        let topo = self.topo;
        let n = topo.n();
        let (s, t) = (topo.source(), topo.sink());
        self.label.fill(n);
        self.count.fill(0);
        self.label[t] = 0;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            self.count[self.label[v]] += 1;
            for a in topo.out_arcs(v) {
                let u = topo.head(a);
                if u == s || self.label[u] != n {
                    continue;
                }
                if self.res(topo.rev(a)) > EPS {
                    self.label[u] = self.label[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        for v in 0..n {
            self.current[v] = topo.out_arcs(v).start;
            self.active[v] = false;
        }
        self.buckets.iter_mut().for_each(Vec::clear);
        self.highest = 0;
        for v in 0..n {
            self.activate(v);
        }
        self.relabels_since_global = 0;
    }

    fn max_preflow(&mut self) {
        let topo = self.topo;
        let n = topo.n();
        let s = topo.source();
        for a in topo.out_arcs(s) {
            let r = self.res(a);
            if r > 0.0 {
                self.push_arc(a, r);
            }
        }
        self.label[s] = n;
        self.global_relabel();
        loop {
            while self.highest > 0 && self.buckets[self.highest].is_empty() {
                self.highest -= 1;
            }
            let Some(v) = self.buckets[self.highest].pop() else {
                break;
            };
            self.active[v] = false;
            if self.label[v] != self.highest {
                // stale entry after a gap or global relabel
                self.activate(v);
                continue;
            }
            self.discharge(v);
            if self.relabels_since_global >= n {
                self.global_relabel();
            }
        }
    }

    fn discharge(&mut self, v: VertexId) {
        let topo = self.topo;
        let n = topo.n();
        let end = topo.out_arcs(v).end;
        while self.excess[v] > EPS {
            let a = self.current[v];
            if a == end {
                self.relabel(v);
                if self.label[v] >= n || self.relabels_since_global >= n {
                    break;
                }
                continue;
            }
            let w = topo.head(a);
            let r = self.res(a);
            if r > EPS && self.label[v] == self.label[w] + 1 {
                let delta = self.excess[v].min(r);
                self.push_arc(a, delta);
                self.activate(w);
            } else {
                self.current[v] += 1;
            }
        }
        self.activate(v);
    }

    fn relabel(&mut self, v: VertexId) {
        let topo = self.topo;
        let n = topo.n();
        let old = self.label[v];
        let mut best = n;
        let mut best_arc = topo.out_arcs(v).start;
        for a in topo.out_arcs(v) {
            if self.res(a) > EPS {
                let d = self.label[topo.head(a)] + 1;
                if d < best {
                    best = d;
                    best_arc = a;
                }
            }
        }
        self.relabels_since_global += 1;
        self.count[old] -= 1;
        if self.count[old] == 0 {
            // gap: nothing above `old` can reach the sink any more
            for u in 0..n {
                if self.label[u] > old && self.label[u] < n {
                    self.count[self.label[u]] -= 1;
                    self.label[u] = n;
                }
            }
            self.label[v] = n;
            return;
        }
        self.label[v] = best;
        if best < n {
            self.count[best] += 1;
        }
        self.current[v] = best_arc;
    }

    /// Sends the excess stranded at vertices that cannot reach the sink back
    /// to the source, FIFO push-relabel towards `s`.
    fn return_excess(&mut self) {
        let topo = self.topo;
        let n = topo.n();
        let (s, t) = (topo.source(), topo.sink());
        // distances to s in the residual graph, arcs into t excluded
        let unset = usize::MAX;
        let mut dist = vec![unset; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for a in topo.out_arcs(v) {
                let u = topo.head(a);
                if u == t || dist[u] != unset {
                    continue;
                }
                if self.res(topo.rev(a)) > EPS {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        for v in 0..n {
            self.current[v] = topo.out_arcs(v).start;
            if dist[v] == unset {
                dist[v] = 2 * n;
            }
        }
        let mut in_queue = vec![false; n];
        let mut fifo = VecDeque::new();
        for v in 0..n {
            if !topo.is_terminal(v) && self.excess[v] > EPS {
                in_queue[v] = true;
                fifo.push_back(v);
            }
        }
        while let Some(v) = fifo.pop_front() {
            in_queue[v] = false;
            let end = topo.out_arcs(v).end;
            while self.excess[v] > EPS {
                let a = self.current[v];
                if a == end {
                    let mut best = usize::MAX;
                    for b in topo.out_arcs(v) {
                        let w = topo.head(b);
                        if w != t && self.res(b) > EPS {
                            best = best.min(dist[w].saturating_add(1));
                        }
                    }
                    if best == usize::MAX {
                        // isolated leftover from rounding
                        break;
                    }
                    dist[v] = best;
                    self.current[v] = topo.out_arcs(v).start;
                    continue;
                }
                let w = topo.head(a);
                let r = self.res(a);
                if w != t && r > EPS && dist[v] == dist[w] + 1 {
                    let delta = self.excess[v].min(r);
                    self.push_arc(a, delta);
                    if !topo.is_terminal(w) && !in_queue[w] && self.excess[w] > EPS {
                        in_queue[w] = true;
                        fifo.push_back(w);
                    }
                } else {
                    self.current[v] += 1;
                }
            }
        }
    }
}
