use std::fmt;

use serde::Serialize;

use super::VerifyError;
use crate::maxflow::{sink_component, solve_ek};
use crate::netcore::{cut_capacity, BreakpointFunction, ParametricNetwork};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyViolation {
    pub lambda: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub probes: usize,
    pub violations: Vec<VerifyViolation>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict}: {} probes, {} violations", self.probes, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  lambda {}: {}", v.lambda, v.message)?;
        }
        Ok(())
    }
}

/// Checks `beta` against static solves. Probes are `lambda_min`, `lambda_max`,
/// every breakpoint and the midpoints between consecutive ones. At every
/// probe the claimed cut must be a minimum cut and equal the residual sink
/// component of an Edmonds–Karp flow; the cut claimed on each open interval
/// must also be minimal at both ends, and the reference sink components must
/// be nested. Vertices whose breakpoint is within `tol` of a probe may fall
/// on either side there.
pub fn verify_solution(net: &ParametricNetwork, beta: &BreakpointFunction, tol: f64) -> Result<VerifyReport, VerifyError> {
    let n = net.n();
    if beta.len() != n {
        return Err(VerifyError::LengthMismatch { got: beta.len(), expected: n });
    }
    let (lo, hi) = (net.lambda_min(), net.lambda_max());
    let mut violations = Vec::new();
    let mut flag = |lambda: f64, message: String| violations.push(VerifyViolation { lambda, message });
    if beta.get(net.source()) != lo {
        flag(lo, format!("source has breakpoint {} instead of lambda_min", beta.get(net.source())));
    }
    if beta.get(net.sink()) != f64::INFINITY {
        flag(lo, format!("sink has finite breakpoint {}", beta.get(net.sink())));
    }
    for (v, &b) in beta.beta.iter().enumerate() {
        if b.is_nan() || (b != f64::INFINITY && !(lo..=hi).contains(&b)) {
            flag(lo, format!("vertex {} has breakpoint {b} outside the interval", v + 1));
        }
    }

    let mut points = vec![lo, hi];
    points.extend(beta.beta.iter().copied().filter(|b| (lo..=hi).contains(b)));
    points.sort_by(f64::total_cmp);
    points.dedup();
    let mut probes = Vec::with_capacity(2 * points.len());
    for (i, &p) in points.iter().enumerate() {
        probes.push(p);
        if let Some(&q) = points.get(i + 1) {
            probes.push(p + (q - p) / 2.0);
        }
    }

    let reference: Vec<(f64, Vec<bool>)> = probes
        .iter()
        .map(|&x| {
            let static_net = net.evaluate_unchecked(x);
            let flow = solve_ek(&static_net);
            (flow.value, sink_component(&static_net, &flow))
        })
        .collect();
    let close = |value: f64, lambda: f64| (value - lambda).abs() <= tol;
    let scale = |x: f64| tol * x.abs().max(1.0);

    let mut previous: Option<&Vec<bool>> = None;
    for (k, &x) in probes.iter().enumerate() {
        let claimed = beta.sink_side_at(x);
        let (value, ref side) = reference[k];
        match cut_capacity(net, &claimed) {
            Ok(cap) => {
                let c = cap.eval(x);
                if (c - value).abs() > scale(value) {
                    flag(x, format!("claimed cut has capacity {c}, maximum flow is {value}"));
                }
                // a cut constant on an open interval must stay minimal at its ends
                if k % 2 == 1 {
                    for j in [k - 1, k + 1] {
                        let (end_value, _) = reference[j];
                        let at_end = cap.eval(probes[j]);
                        if (at_end - end_value).abs() > scale(end_value) {
                            flag(
                                probes[j],
                                format!(
                                    "cut claimed on ({}, {}) has capacity {at_end} at {}, maximum flow is {end_value}",
                                    probes[k - 1], probes[k + 1], probes[j]
                                ),
                            );
                        }
                    }
                }
            }
            Err(e) => flag(x, format!("claimed sink side is not a cut: {e}")),
        }
        let differing: Vec<usize> = (0..n)
            .filter(|&v| claimed[v] != side[v] && !close(beta.get(v), x))
            .map(|v| v + 1)
            .collect();
        if !differing.is_empty() {
            flag(x, format!("sink side differs from the sink-minimal minimum cut at vertices {differing:?}"));
        }
        if let Some(prev) = previous {
            let escaped: Vec<usize> = (0..n)
                .filter(|&v| side[v] && !prev[v] && !close(beta.get(v), x))
                .map(|v| v + 1)
                .collect();
            if !escaped.is_empty() {
                flag(x, format!("reference sink components not nested at vertices {escaped:?}"));
            }
        }
        previous = Some(side);
    }
    Ok(VerifyReport { passed: violations.is_empty(), probes: probes.len(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::fixtures::{self, *};

    fn f2_beta(b: f64) -> BreakpointFunction {
        let mut beta = vec![0.0, f64::INFINITY, 1.5, b];
        beta[F2_B] = b;
        BreakpointFunction::new(0.0, beta)
    }

    #[test]
    fn correct_f2_passes() {
        let report = verify_solution(&fixtures::f2(), &f2_beta(1.0), 1e-6).unwrap();
        assert!(report.passed, "{report}");
    }

    #[test]
    fn perturbed_f2_fails() {
        let report = verify_solution(&fixtures::f2(), &f2_beta(1.4), 1e-6).unwrap();
        assert!(!report.passed);
        // the cut claimed on (0, 1.4) is {a, b, t} with capacity 3λ, which is
        // 4.2 at 1.4 against a maximum flow of 3.8
        assert!(report.violations.iter().any(|v| v.lambda == 1.4 && v.message.contains("maximum flow is 3.8")), "{report}");
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["passed"], false);
    }

    #[test]
    fn all_infinite_fails_on_f1() {
        let beta = BreakpointFunction::new(0.0, vec![0.0, f64::INFINITY, f64::INFINITY]);
        assert!(!verify_solution(&fixtures::f1(), &beta, 1e-6).unwrap().passed);
        let short = fixtures::f1().with_interval(0.0, 0.5).unwrap();
        assert!(verify_solution(&short, &beta, 1e-6).unwrap().passed);
    }

    #[test]
    fn wrong_length() {
        let beta = BreakpointFunction::new(0.0, vec![0.0, f64::INFINITY]);
        assert!(verify_solution(&fixtures::f1(), &beta, 1e-6).is_err());
    }
}
