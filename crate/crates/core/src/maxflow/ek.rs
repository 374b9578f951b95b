use std::collections::VecDeque;

use super::{bounded_caps, push, StaticFlow};
use crate::netcore::StaticNetwork;
use crate::EPS;

/// Edmonds–Karp: repeatedly augment along a shortest residual `s`-`t` path.
///
/// Kept deliberately plain; it serves as the reference the other solvers are
/// checked against.
pub fn solve_ek(net: &StaticNetwork<'_>) -> StaticFlow {
    let topo = net.topology();
    let (n, s, t) = (topo.n(), topo.source(), topo.sink());
    let cap = bounded_caps(net);
    let mut result = StaticFlow::zero(topo.num_arcs());
    let flow = &mut result.flow;
    let mut pred = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    loop {
        pred.fill(usize::MAX);
        queue.clear();
        queue.push_back(s);
        let mut reached = false;
        'bfs: while let Some(v) = queue.pop_front() {
            for a in topo.out_arcs(v) {
                let w = topo.head(a);
                if w == s || pred[w] != usize::MAX || cap[a] - flow[a] <= EPS {
                    continue;
                }
                pred[w] = a;
                if w == t {
                    reached = true;
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        if !reached {
            break;
        }
        let mut delta = f64::INFINITY;
        let mut v = t;
        while v != s {
            let a = pred[v];
            delta = delta.min(cap[a] - flow[a]);
            v = topo.tail(a);
        }
        let mut v = t;
        while v != s {
            let a = pred[v];
            push(topo, flow, a, delta);
            v = topo.tail(a);
        }
    }
    result.recompute_value(topo);
    result
}
