//! Dichotomic scheme: recursive bisection of the parameter interval.
//!
//! Given the sink-minimal minimum cuts at both ends of an interval, the next
//! probe is the parameter where their affine capacities meet. A static solve
//! there either finds a strictly better cut, which splits the interval, or
//! proves that the vertices between the two cuts all switch sides at the
//! probe. Every subproblem works on a physically contracted copy of the
//! network: the source side of the lower cut is merged into `s`, the sink
//! side of the upper cut into `t`.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::maxflow::Solver;
use crate::netcore::{
    check_monotone, contract, cut_capacity, AffineFn, BreakpointFunction, Cut, MonotonicityReport, NetworkError,
    ParametricNetwork, Side, VertexId,
};
use crate::EPS;

#[derive(Debug, Error)]
pub enum DsError {
    #[error("network is not source-sink monotone: {0}")]
    NotMonotone(#[from] MonotonicityReport),
    #[error("negative approximation factor {0}")]
    BadEpsilon(f64),
    #[error("recursion deeper than {0} levels, parameter values are cycling")]
    DepthExceeded(usize),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DsStats {
    /// Distinct breakpoints above `lambda_min`.
    pub breakpoints: usize,
    /// Probes that found a strictly better cut and split the interval.
    pub recorded_cuts: usize,
    /// Static max-flow problems solved.
    pub solves: usize,
    /// Vertices summed over every contracted network built.
    pub total_contracted_vertices: usize,
    pub contraction_time: Duration,
    pub solve_time: Duration,
}

#[derive(Debug, Clone)]
pub struct DsOutput {
    pub beta: BreakpointFunction,
    pub stats: DsStats,
}

/// The parameter where two affine capacities are equal, `None` if they are
/// parallel (or one is infinite).
pub fn intersection_lambda(c1: AffineFn, c2: AffineFn) -> Option<f64> {
    if c1.infinite || c2.infinite || c1.slope == c2.slope {
        return None;
    }
    Some((c2.intercept - c1.intercept) / (c1.slope - c2.slope))
}

/// Whether `candidate` improves on `incumbent` at `lambda` by more than the
/// approximation factor `1 + epsilon`.
pub fn is_strictly_better(candidate: &Cut, incumbent: &Cut, lambda: f64, epsilon: f64) -> bool {
    better_value(candidate.capacity.eval(lambda), incumbent.capacity.eval(lambda), epsilon)
}

fn better_value(candidate: f64, incumbent: f64, epsilon: f64) -> bool {
    incumbent > (1.0 + epsilon) * candidate + EPS
}

struct Frame {
    lo: f64,
    hi: f64,
    net: ParametricNetwork,
    /// Original vertex of every vertex of `net`.
    original: Vec<VertexId>,
    depth: usize,
}

/// Runs the dichotomic scheme with the given static solver. `epsilon = 0` is
/// exact; larger values stop refining once the incumbent cut is within a
/// factor `1 + epsilon` of optimal.
pub fn ds_run(net: &ParametricNetwork, solver: Solver, epsilon: f64) -> Result<DsOutput, DsError> {
    if !(epsilon >= 0.0) {
        return Err(DsError::BadEpsilon(epsilon));
    }
    check_monotone(net)?;
    let n = net.n();
    let (lo, hi) = (net.lambda_min(), net.lambda_max());
    let mut stats = DsStats::default();

    let start = Instant::now();
    let (_, low_side) = solver.min_cut(&net.evaluate_unchecked(lo));
    let (_, high_side) = solver.min_cut(&net.evaluate_unchecked(hi));
    stats.solve_time += start.elapsed();
    stats.solves += 2;

    let mut beta = vec![f64::INFINITY; n];
    let mut sides = vec![Side::Keep; n];
    for v in 0..n {
        if !low_side[v] {
            beta[v] = lo;
            sides[v] = Side::Source;
        } else if high_side[v] {
            sides[v] = Side::Sink;
        }
    }
    let start = Instant::now();
    let root = contract(net, &sides)?;
    stats.contraction_time += start.elapsed();
    stats.total_contracted_vertices += root.network.n();

    let mut stack = vec![Frame { lo, hi, net: root.network, original: root.original, depth: 0 }];
    while let Some(frame) = stack.pop() {
        if frame.depth > n {
            return Err(DsError::DepthExceeded(n));
        }
        let sub = &frame.net;
        let (s, t) = (sub.source(), sub.sink());
        if sub.n() <= 2 {
            continue;
        }
        let topo = sub.topology();
        let lower_cap = topo.out_arcs(s).fold(AffineFn::ZERO, |acc, a| acc + sub.cap(a));
        let upper_cap = topo.out_arcs(t).fold(AffineFn::ZERO, |acc, b| acc + sub.cap(topo.rev(b)));
        let assign = |beta: &mut Vec<f64>, value: f64| {
            for w in 0..sub.n() {
                if w != s && w != t {
                    beta[frame.original[w]] = value;
                }
            }
        };
        let mid = match intersection_lambda(lower_cap, upper_cap) {
            None => {
                assign(&mut beta, frame.lo);
                continue;
            }
            Some(m) => m,
        };
        let clamped = mid.clamp(frame.lo, frame.hi);
        if frame.hi - frame.lo <= EPS || mid <= frame.lo + EPS || mid >= frame.hi - EPS {
            assign(&mut beta, clamped);
            continue;
        }

        let start = Instant::now();
        let (_, side) = solver.min_cut(&sub.evaluate_unchecked(mid));
        stats.solve_time += start.elapsed();
        stats.solves += 1;
        let candidate = cut_capacity(sub, &side)?.eval(mid);
        if !better_value(candidate, lower_cap.eval(mid), epsilon) {
            assign(&mut beta, mid);
            continue;
        }
        stats.recorded_cuts += 1;

        let start = Instant::now();
        let lower_sides: Vec<Side> = side.iter().map(|&b| if b { Side::Sink } else { Side::Keep }).collect();
        let upper_sides: Vec<Side> = side.iter().map(|&b| if b { Side::Keep } else { Side::Source }).collect();
        let lower = contract(sub, &lower_sides)?;
        let upper = contract(sub, &upper_sides)?;
        stats.contraction_time += start.elapsed();
        stats.total_contracted_vertices += lower.network.n() + upper.network.n();
        let lift = |map: Vec<VertexId>| map.into_iter().map(|w| frame.original[w]).collect::<Vec<_>>();
        let depth = frame.depth + 1;
        stack.push(Frame { lo: mid, hi: frame.hi, net: upper.network, original: lift(upper.original), depth });
        stack.push(Frame { lo: frame.lo, hi: mid, net: lower.network, original: lift(lower.original), depth });
    }
    let beta = BreakpointFunction::new(lo, beta);
    stats.breakpoints = beta.breakpoint_count();
    Ok(DsOutput { beta, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::fixtures::{self, *};

    #[test]
    fn intersections() {
        assert_eq!(intersection_lambda(AffineFn::new(3.0, 0.0), AffineFn::constant(4.0)), Some(4.0 / 3.0));
        assert_eq!(intersection_lambda(AffineFn::new(3.0, 0.0), AffineFn::new(2.0, 1.0)), Some(1.0));
        assert_eq!(intersection_lambda(AffineFn::new(2.0, 1.0), AffineFn::new(2.0, 5.0)), None);
    }

    #[test]
    fn strictly_better() {
        let net = fixtures::f2();
        let cut = |cap: f64| Cut { sink_side: vec![false, true, false, false], capacity: AffineFn::constant(cap) };
        assert!(is_strictly_better(&cut(3.4), &cut(4.0), 1.0, 0.0));
        assert!(!is_strictly_better(&cut(4.0), &cut(4.0), 1.0, 0.0));
        assert!(!is_strictly_better(&cut(3.8), &cut(4.0), 1.0, 0.1));
        let real = Cut::new(&net, vec![false, true, false, false]).unwrap();
        assert!(!is_strictly_better(&real, &real, 2.0, 0.0));
    }

    #[test]
    fn f2_exact_with_both_solvers() {
        for solver in [Solver::Ibfs, Solver::Prf] {
            let out = ds_run(&fixtures::f2(), solver, 0.0).unwrap();
            assert_eq!(out.beta.get(F2_A), 1.5);
            assert_eq!(out.beta.get(F2_B), 1.0);
            assert_eq!(out.beta.get(F2_S), 0.0);
            assert_eq!(out.beta.get(F2_T), f64::INFINITY);
            assert_eq!(out.stats.breakpoints, 2);
        }
    }

    #[test]
    fn f1_with_prf() {
        let out = ds_run(&fixtures::f1(), Solver::Prf, 0.0).unwrap();
        assert_eq!(out.beta.get(F1_V), 1.0);
        assert_eq!(out.stats.breakpoints, 1);
    }

    #[test]
    fn coarse_epsilon_records_no_cut_on_f2() {
        let out = ds_run(&fixtures::f2(), Solver::Ibfs, 10.0).unwrap();
        assert_eq!(out.stats.recorded_cuts, 0);
        // a and b switch together at the first probe
        assert_eq!(out.beta.get(F2_A), 4.0 / 3.0);
        assert_eq!(out.beta.get(F2_B), 4.0 / 3.0);
    }

    #[test]
    fn negative_epsilon_is_rejected() {
        assert!(matches!(ds_run(&fixtures::f1(), Solver::Ibfs, -1.0), Err(DsError::BadEpsilon(_))));
    }
}
