use super::VerifyError;
use crate::dichotomic::intersection_lambda;
use crate::maxflow::{sink_component, solve_ek};
use crate::netcore::{cut_capacity, BreakpointFunction, ParametricNetwork};
use crate::EPS;

pub const ORACLE_MAX_VERTICES: usize = 200;
pub const BRUTE_FORCE_MAX_VERTICES: usize = 16;

fn sink_minimal(net: &ParametricNetwork, lambda: f64) -> Vec<bool> {
    let static_net = net.evaluate_unchecked(lambda);
    let flow = solve_ek(&static_net);
    sink_component(&static_net, &flow)
}

fn capacity(net: &ParametricNetwork, side: &[bool]) -> crate::AffineFn {
    cut_capacity(net, side).expect("sink components are valid partitions")
}

/// Exact breakpoints by recursive bisection on the full network, every probe
/// solved with Edmonds–Karp.
pub fn oracle_breakpoints(net: &ParametricNetwork) -> Result<BreakpointFunction, VerifyError> {
    let n = net.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(VerifyError::TooLarge { n, limit: ORACLE_MAX_VERTICES });
    }
    let (lo, hi) = (net.lambda_min(), net.lambda_max());
    let low = sink_minimal(net, lo);
    let high: Vec<bool> = sink_minimal(net, hi).iter().zip(&low).map(|(&h, &l)| h && l).collect();
    let mut beta: Vec<f64> = (0..n)
        .map(|v| if !low[v] { lo } else if high[v] { f64::INFINITY } else { f64::NAN })
        .collect();
    let mut stack = vec![(lo, hi, low, high)];
    while let Some((a, b, left, right)) = stack.pop() {
        let between: Vec<usize> = (0..n).filter(|&v| left[v] && !right[v]).collect();
        if between.is_empty() {
            continue;
        }
        let cap_left = capacity(net, &left);
        let cap_right = capacity(net, &right);
        let mid = match intersection_lambda(cap_left, cap_right) {
            Some(m) if b - a > EPS && m > a + EPS && m < b - EPS => m,
            Some(m) => {
                for &v in &between {
                    beta[v] = m.clamp(a, b);
                }
                continue;
            }
            None => {
                for &v in &between {
                    beta[v] = a;
                }
                continue;
            }
        };
        let side: Vec<bool> = sink_minimal(net, mid)
            .iter()
            .enumerate()
            .map(|(v, &x)| (x && left[v]) || right[v])
            .collect();
        if capacity(net, &side).eval(mid) < cap_left.eval(mid) - EPS {
            stack.push((mid, b, side.clone(), right));
            stack.push((a, mid, left, side));
        } else {
            for &v in &between {
                beta[v] = mid;
            }
        }
    }
    Ok(BreakpointFunction::new(lo, beta))
}

/// Breakpoints by enumerating every cut. Candidate parameters are
/// `lambda_min` and all pairwise intersections of cut capacities; at each the
/// sink-minimal minimum cut is the intersection of all minimum cuts.
pub fn brute_force_breakpoints(net: &ParametricNetwork) -> Result<BreakpointFunction, VerifyError> {
    let n = net.n();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(VerifyError::TooLarge { n, limit: BRUTE_FORCE_MAX_VERTICES });
    }
    let (s, t) = (net.source(), net.sink());
    let free: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut cuts = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let mut side = vec![false; n];
        side[t] = true;
        for (i, &v) in free.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let cap = capacity(net, &side);
        if !cap.infinite {
            cuts.push((side, cap));
        }
    }
    let (lo, hi) = (net.lambda_min(), net.lambda_max());
    let mut candidates = vec![lo];
    for i in 0..cuts.len() {
        for j in i + 1..cuts.len() {
            if let Some(x) = intersection_lambda(cuts[i].1, cuts[j].1) {
                if x > lo && x <= hi {
                    candidates.push(x);
                }
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let mut beta = vec![f64::INFINITY; n];
    for &x in &candidates {
        let best = cuts.iter().map(|c| c.1.eval(x)).fold(f64::INFINITY, f64::min);
        let mut inter = vec![true; n];
        for (side, cap) in &cuts {
            if cap.eval(x) <= best + EPS {
                for v in 0..n {
                    inter[v] &= side[v];
                }
            }
        }
        for v in 0..n {
            if !inter[v] && beta[v] == f64::INFINITY {
                beta[v] = x;
            }
        }
    }
    Ok(BreakpointFunction::new(lo, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::fixtures::{self, *};
    use crate::netcore::{AffineFn, NetworkBuilder};

    #[test]
    fn fixtures() {
        for oracle in [oracle_breakpoints, brute_force_breakpoints] {
            let b1 = oracle(&fixtures::f1()).unwrap();
            assert_eq!(b1.beta, vec![0.0, f64::INFINITY, 1.0]);
            let b2 = oracle(&fixtures::f2()).unwrap();
            assert_eq!(b2.get(F2_A), 1.5);
            assert_eq!(b2.get(F2_B), 1.0);
            assert_eq!(b2.get(F2_S), 0.0);
        }
    }

    #[test]
    fn constant_network_has_no_interior_breakpoint() {
        let net = NetworkBuilder::new(4, 0, 1, 0.0, 3.0)
            .arc(0, 2, AffineFn::constant(2.0))
            .arc(2, 3, AffineFn::constant(1.0))
            .arc(3, 1, AffineFn::constant(5.0))
            .build()
            .unwrap();
        assert_eq!(oracle_breakpoints(&net).unwrap().breakpoint_count(), 0);
        assert_eq!(brute_force_breakpoints(&net).unwrap().breakpoint_count(), 0);
    }

    #[test]
    fn size_guard() {
        let net = NetworkBuilder::new(201, 0, 1, 0.0, 1.0).build().unwrap();
        assert_eq!(oracle_breakpoints(&net), Err(VerifyError::TooLarge { n: 201, limit: 200 }));
    }
}
