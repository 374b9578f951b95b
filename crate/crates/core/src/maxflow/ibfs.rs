use std::collections::VecDeque;

use super::{bounded_caps, push, sink_tree, SinkTree, StaticFlow};
use crate::netcore::{ArcId, StaticNetwork, Topology, VertexId};
use crate::EPS;

const NO_ARC: ArcId = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Membership {
    Free,
    Source,
    Sink,
}

/// Work counters of one IBFS run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IbfsStats {
    pub augmentations: usize,
    pub growth_passes: usize,
    pub orphans: usize,
    /// Augmentations needed after the tree search declared optimality.
    /// Always zero unless the search terminated early; kept as a guard.
    pub repair_augmentations: usize,
}

#[derive(Debug, Clone)]
pub struct IbfsResult {
    pub flow: StaticFlow,
    /// Reverse BFS tree of the final residual graph: sink component, exact
    /// distances to `t` and tree arcs.
    pub sink_tree: SinkTree,
    pub stats: IbfsStats,
}

/// Incremental breadth-first search: grows BFS trees from `s` and `t` in the
/// residual graph, augments when they touch, and repairs the trees by orphan
/// adoption with current-arc pointers. Orphans are processed FIFO.
pub fn solve_ibfs(net: &StaticNetwork<'_>) -> IbfsResult {
    let topo = net.topology();
    let cap = bounded_caps(net);
    let mut search = Ibfs::new(topo, &cap);
    search.run();
    let mut stats = search.stats;
    let mut flow = search.flow;
    stats.repair_augmentations = repair(topo, &cap, &mut flow);
    let sink_tree = sink_tree(net, &flow);
    let mut flow = StaticFlow { flow, value: 0.0 };
    flow.recompute_value(topo);
    IbfsResult { flow, sink_tree, stats }
}

/// Shortest-path augmentation until no residual `s`-`t` path is left.
fn repair(topo: &Topology, cap: &[f64], flow: &mut [f64]) -> usize {
    let (n, s, t) = (topo.n(), topo.source(), topo.sink());
    let mut count = 0;
    let mut pred = vec![NO_ARC; n];
    loop {
        pred.fill(NO_ARC);
        let mut queue = VecDeque::from([s]);
        let mut reached = false;
        while let Some(v) = queue.pop_front() {
            for a in topo.out_arcs(v) {
                let w = topo.head(a);
                if w != s && pred[w] == NO_ARC && cap[a] - flow[a] > EPS {
                    pred[w] = a;
                    reached |= w == t;
                    queue.push_back(w);
                }
            }
        }
        if !reached {
            return count;
        }
        let mut delta = f64::INFINITY;
        let mut v = t;
        while v != s {
            delta = delta.min(cap[pred[v]] - flow[pred[v]]);
            v = topo.tail(pred[v]);
        }
        let mut v = t;
        while v != s {
            push(topo, flow, pred[v], delta);
            v = topo.tail(pred[v]);
        }
        count += 1;
    }
}

struct Ibfs<'a> {
    topo: &'a Topology,
    cap: &'a [f64],
    flow: Vec<f64>,
    tree: Vec<Membership>,
    dist: Vec<u32>,
    /// Source tree: arc `(parent, v)`. Sink tree: arc `(v, parent)`.
    parent: Vec<ArcId>,
    current: Vec<ArcId>,
    /// Label of the unscanned frontier of each tree.
    level: [u32; 2],
    /// Frontier vertices waiting to be scanned, per tree.
    pending: [Vec<VertexId>; 2],
    /// Next layer collected during a growth pass.
    next: Vec<VertexId>,
    /// Vertices being scanned in the current pass.
    scanning: Vec<VertexId>,
    growing: Option<Membership>,
    orphans: VecDeque<VertexId>,
    stats: IbfsStats,
}

fn slot(side: Membership) -> usize {
    match side {
        Membership::Source => 0,
        Membership::Sink => 1,
        Membership::Free => unreachable!("free vertices have no tree"),
    }
}

impl<'a> Ibfs<'a> {
    fn new(topo: &'a Topology, cap: &'a [f64]) -> Self {
        let n = topo.n();
        let (s, t) = (topo.source(), topo.sink());
        let mut tree = vec![Membership::Free; n];
        tree[s] = Membership::Source;
        tree[t] = Membership::Sink;
        Ibfs {
            topo,
            cap,
            flow: vec![0.0; topo.num_arcs()],
            tree,
            dist: vec![0; n],
            parent: vec![NO_ARC; n],
            current: (0..n).map(|v| topo.out_arcs(v).start).collect(),
            level: [0, 0],
            pending: [vec![s], vec![t]],
            next: Vec::new(),
            scanning: Vec::new(),
            growing: None,
            orphans: VecDeque::new(),
            stats: IbfsStats::default(),
        }
    }

    #[inline]
    fn res(&self, a: ArcId) -> f64 {
        self.cap[a] - self.flow[a]
    }

    fn run(&mut self) {
        loop {
            let pending_s = self.pending[0].len();
            let pending_t = self.pending[1].len();
            if pending_s == 0 || pending_t == 0 {
                return;
            }
            let side = if pending_s <= pending_t { Membership::Source } else { Membership::Sink };
            self.grow(side);
        }
    }

    /// Scans the frontier of one tree, building its next layer.
    fn grow(&mut self, side: Membership) {
        self.stats.growth_passes += 1;
        let k = slot(side);
        let level = self.level[k];
        self.scanning = std::mem::take(&mut self.pending[k]);
        self.growing = Some(side);
        let mut i = 0;
        while i < self.scanning.len() {
            let v = self.scanning[i];
            i += 1;
            if self.tree[v] == side && self.dist[v] == level {
                self.scan(v, side, level);
            }
        }
        self.growing = None;
        self.scanning.clear();
        self.level[k] = level + 1;
        self.pending[k] = std::mem::take(&mut self.next);
    }

    fn scan(&mut self, v: VertexId, side: Membership, level: u32) {
        let topo = self.topo;
        let arcs = topo.out_arcs(v);
        let mut a = arcs.start;
        while a < arcs.end {
            let w = topo.head(a);
            // residual direction away from the tree root
            let arc_out = if side == Membership::Source { a } else { topo.rev(a) };
            if self.res(arc_out) > EPS {
                match self.tree[w] {
                    Membership::Free => {
                        self.tree[w] = side;
                        self.dist[w] = level + 1;
                        self.parent[w] = arc_out;
                        self.current[w] = topo.out_arcs(w).start;
                        self.next.push(w);
                    }
                    other if other != side => {
                        self.augment(arc_out);
                        if self.tree[v] != side || self.dist[v] != level {
                            return;
                        }
                        // the arc may still be residual
                        continue;
                    }
                    _ => {}
                }
            }
            a += 1;
        }
    }

    /// Augments along `s ~> x -> y ~> t` where `bridge = (x, y)`.
    fn augment(&mut self, bridge: ArcId) {
        let topo = self.topo;
        let (s, t) = (topo.source(), topo.sink());
        self.stats.augmentations += 1;
        let (x, y) = (topo.tail(bridge), topo.head(bridge));
        let mut delta = self.res(bridge);
        let mut v = x;
        while v != s {
            let p = self.parent[v];
            delta = delta.min(self.res(p));
            v = topo.tail(p);
        }
        let mut v = y;
        while v != t {
            let p = self.parent[v];
            delta = delta.min(self.res(p));
            v = topo.head(p);
        }
        push(topo, &mut self.flow, bridge, delta);
        let mut v = x;
        while v != s {
            let p = self.parent[v];
            push(topo, &mut self.flow, p, delta);
            let u = topo.tail(p);
            if self.res(p) <= EPS {
                self.parent[v] = NO_ARC;
                self.orphans.push_back(v);
            }
            v = u;
        }
        let mut v = y;
        while v != t {
            let p = self.parent[v];
            push(topo, &mut self.flow, p, delta);
            let u = topo.head(p);
            if self.res(p) <= EPS {
                self.parent[v] = NO_ARC;
                self.orphans.push_back(v);
            }
            v = u;
        }
        self.adopt_orphans();
    }

    fn max_label(&self, side: Membership) -> u32 {
        let level = self.level[slot(side)];
        if self.growing == Some(side) {
            level + 1
        } else {
            level
        }
    }

    /// Puts a relabeled vertex into the list that will scan its layer.
    fn schedule(&mut self, v: VertexId, side: Membership) {
        let level = self.level[slot(side)];
        let d = self.dist[v];
        if self.growing == Some(side) {
            if d == level + 1 {
                self.next.push(v);
            } else if d == level {
                self.scanning.push(v);
            }
        } else if d == level {
            self.pending[slot(side)].push(v);
        }
    }

    fn adopt_orphans(&mut self) {
        let topo = self.topo;
        while let Some(v) = self.orphans.pop_front() {
            self.stats.orphans += 1;
            let side = self.tree[v];
            let source_side = side == Membership::Source;
            let d = self.dist[v];
            let arcs = topo.out_arcs(v);

            // same label, resuming at the current arc
            let mut adopted = false;
            for a in self.current[v]..arcs.end {
                let u = topo.head(a);
                if self.tree[u] != side || self.dist[u] + 1 != d {
                    continue;
                }
                let link = if source_side { topo.rev(a) } else { a };
                if self.res(link) > EPS {
                    self.parent[v] = link;
                    self.current[v] = a;
                    adopted = true;
                    break;
                }
            }
            if adopted {
                continue;
            }

            // detach children
            for a in arcs.clone() {
                let w = topo.head(a);
                let child_link = if source_side { a } else { topo.rev(a) };
                if self.tree[w] == side && self.parent[w] == child_link {
                    self.parent[w] = NO_ARC;
                    self.orphans.push_back(w);
                }
            }

            // relabel to the smallest neighbouring label plus one
            let mut best: Option<(u32, ArcId)> = None;
            for a in arcs.clone() {
                let u = topo.head(a);
                if self.tree[u] != side {
                    continue;
                }
                let link = if source_side { topo.rev(a) } else { a };
                if self.res(link) > EPS && best.is_none_or(|(bd, _)| self.dist[u] < bd) {
                    best = Some((self.dist[u], a));
                }
            }
            match best {
                Some((bd, a)) if bd < self.max_label(side) => {
                    self.dist[v] = bd + 1;
                    self.parent[v] = if source_side { topo.rev(a) } else { a };
                    self.current[v] = a;
                    self.schedule(v, side);
                }
                _ => {
                    self.tree[v] = Membership::Free;
                    self.parent[v] = NO_ARC;
                }
            }
        }
    }
}
