use std::fmt::Write as _;

use super::{syntax, FormatError};
use crate::netcore::{check_monotone, AffineFn, NetworkBuilder, ParametricNetwork};

/// Largest vertex count a file may declare.
pub const MAX_VERTICES: usize = 1 << 26;

#[derive(Clone, Copy, PartialEq)]
enum Flavor {
    Parametric,
    Constant,
}

/// Parses a `.pmax` (or plain DIMACS `p max`) file, normalizes it and checks
/// monotonicity.
pub fn parse_pmax(text: &str) -> Result<ParametricNetwork, FormatError> {
    let net = parse_pmax_unchecked(text)?;
    check_monotone(&net)?;
    Ok(net)
}

/// As [`parse_pmax`] without the monotonicity check.
pub fn parse_pmax_unchecked(text: &str) -> Result<ParametricNetwork, FormatError> {
    let mut header: Option<(Flavor, usize, usize)> = None;
    let mut source = None;
    let mut sink = None;
    let mut interval: Option<(f64, f64)> = None;
    let mut arcs = Vec::new();
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else {
            continue;
        };
        let fields: Vec<&str> = tokens.collect();
        if kind == "c" {
            continue;
        }
        if kind == "p" {
            if header.is_some() {
                return Err(syntax(line, "duplicate problem line"));
            }
            let flavor = match fields.first() {
                Some(&"pmax") => Flavor::Parametric,
                Some(&"max") => Flavor::Constant,
                _ => return Err(syntax(line, "expected `p pmax <n> <m>` or `p max <n> <m>`")),
            };
            if fields.len() != 3 {
                return Err(syntax(line, "problem line takes two counts"));
            }
            let n: usize = count(fields[1], line)?;
            let m: usize = count(fields[2], line)?;
            if !(2..=MAX_VERTICES).contains(&n) {
                return Err(syntax(line, format!("vertex count {n} outside [2, {MAX_VERTICES}]")));
            }
            header = Some((flavor, n, m));
            continue;
        }
        let Some((flavor, n, _)) = header else {
            return Err(syntax(line, "expected problem line first"));
        };
        match kind {
            "n" => {
                if fields.len() != 2 {
                    return Err(syntax(line, "expected `n <id> s|t`"));
                }
                let v = vertex(fields[0], n, line)?;
                let slot = match fields[1] {
                    "s" => &mut source,
                    "t" => &mut sink,
                    other => return Err(syntax(line, format!("unknown terminal `{other}`"))),
                };
                if slot.is_some() {
                    return Err(syntax(line, format!("duplicate terminal `{}`", fields[1])));
                }
                *slot = Some(v);
            }
            "l" => {
                if interval.is_some() {
                    return Err(syntax(line, "duplicate interval line"));
                }
                if !arcs.is_empty() {
                    return Err(syntax(line, "interval line must precede the arcs"));
                }
                if fields.len() != 2 {
                    return Err(syntax(line, "expected `l <lambda_min> <lambda_max>`"));
                }
                let lo = number(fields[0], line)?;
                let hi = number(fields[1], line)?;
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(syntax(line, format!("invalid interval [{lo}, {hi}]")));
                }
                interval = Some((lo, hi));
            }
            "a" => {
                if flavor == Flavor::Parametric && interval.is_none() {
                    return Err(syntax(line, "interval line must precede the arcs"));
                }
                let cap = match (flavor, fields.len()) {
                    (_, 3) if fields[2] == "inf" => AffineFn::INFINITE,
                    (Flavor::Constant, 3) => AffineFn::constant(finite(fields[2], line)?),
                    (Flavor::Parametric, 4) => AffineFn::new(finite(fields[2], line)?, finite(fields[3], line)?),
                    (Flavor::Parametric, _) => return Err(syntax(line, "expected `a <tail> <head> <slope> <intercept>`")),
                    (Flavor::Constant, _) => return Err(syntax(line, "expected `a <tail> <head> <capacity>`")),
                };
                let u = vertex(fields[0], n, line)?;
                let v = vertex(fields[1], n, line)?;
                arcs.push((u, v, cap, line));
            }
            other => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
    }
    let Some((_, n, m)) = header else {
        return Err(syntax(last_line.max(1), "missing problem line"));
    };
    let source = source.ok_or_else(|| syntax(last_line, "missing source line `n <id> s`"))?;
    let sink = sink.ok_or_else(|| syntax(last_line, "missing sink line `n <id> t`"))?;
    if source == sink {
        return Err(syntax(last_line, "source and sink coincide"));
    }
    if arcs.len() != m {
        return Err(syntax(last_line, format!("problem line declares {m} arcs, found {}", arcs.len())));
    }
    let (lo, hi) = interval.unwrap_or((0.0, 1.0));
    for &(u, v, cap, line) in &arcs {
        if cap.eval(lo) < 0.0 || cap.eval(hi) < 0.0 {
            return Err(syntax(line, format!("capacity of arc ({}, {}) negative on the interval", u + 1, v + 1)));
        }
    }
    let mut builder = NetworkBuilder::new(n, source, sink, lo, hi);
    builder.arcs = arcs.into_iter().map(|(u, v, cap, _)| (u, v, cap)).collect();
    Ok(builder.build()?)
}

fn count(token: &str, line: usize) -> Result<usize, FormatError> {
    token.parse().map_err(|_| syntax(line, format!("invalid count `{token}`")))
}

fn vertex(token: &str, n: usize, line: usize) -> Result<usize, FormatError> {
    let id: usize = token.parse().map_err(|_| syntax(line, format!("invalid vertex id `{token}`")))?;
    if id == 0 || id > n {
        return Err(syntax(line, format!("vertex id {id} outside [1, {n}]")));
    }
    Ok(id - 1)
}

fn number(token: &str, line: usize) -> Result<f64, FormatError> {
    token.parse().map_err(|_| syntax(line, format!("invalid number `{token}`")))
}

fn finite(token: &str, line: usize) -> Result<f64, FormatError> {
    let x = number(token, line)?;
    if !x.is_finite() {
        return Err(syntax(line, format!("non-finite coefficient `{token}`")));
    }
    Ok(x)
}

/// Canonical serialization: zero arcs omitted, arcs in `(tail, head)` order,
/// numbers in shortest round-trip form.
pub fn write_pmax(net: &ParametricNetwork) -> String {
    let arcs: Vec<_> = net.nonzero_arcs().collect();
    let mut out = String::new();
    let _ = writeln!(out, "p pmax {} {}", net.n(), arcs.len());
    let _ = writeln!(out, "n {} s", net.source() + 1);
    let _ = writeln!(out, "n {} t", net.sink() + 1);
    let _ = writeln!(out, "l {} {}", net.lambda_min(), net.lambda_max());
    for (u, v, cap) in arcs {
        if cap.infinite {
            let _ = writeln!(out, "a {} {} inf", u + 1, v + 1);
        } else {
            let _ = writeln!(out, "a {} {} {} {}", u + 1, v + 1, cap.slope, cap.intercept);
        }
    }
    out
}
