use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{syntax, FormatError};
use crate::netcore::{AffineFn, NetworkBuilder, ParametricNetwork};

/// Upper end of the parameter interval for aggregation networks. The
/// application interval is unbounded; this stands in for infinity.
pub const DEFAULT_AGGREGATION_LAMBDA_MAX: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceKind {
    Polygon,
    Triangle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub id: u64,
    pub kind: FaceKind,
    pub area: f64,
    /// Boundary length shared with the outer face.
    pub outer_len: f64,
}

/// Dual graph of a subdivision into input polygons and filler triangles.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FaceGraph {
    pub faces: Vec<Face>,
    /// `(i, j, shared_len)` with indices into `faces`, each adjacency once.
    pub adjacencies: Vec<(usize, usize, f64)>,
}

pub fn parse_face_graph(text: &str) -> Result<FaceGraph, FormatError> {
    let mut graph = FaceGraph::default();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => {}
            Some(&"f") => {
                if fields.len() != 5 {
                    return Err(syntax(line, "expected `f <id> polygon|triangle <area> <outer_len>`"));
                }
                let id: u64 = fields[1].parse().map_err(|_| syntax(line, format!("invalid face id `{}`", fields[1])))?;
                let kind = match fields[2] {
                    "polygon" => FaceKind::Polygon,
                    "triangle" => FaceKind::Triangle,
                    other => return Err(syntax(line, format!("unknown face kind `{other}`"))),
                };
                let area = length(fields[3], line)?;
                let outer_len = length(fields[4], line)?;
                if index.insert(id, graph.faces.len()).is_some() {
                    return Err(syntax(line, format!("duplicate face id {id}")));
                }
                graph.faces.push(Face { id, kind, area, outer_len });
            }
            Some(&"e") => {
                if fields.len() != 4 {
                    return Err(syntax(line, "expected `e <i> <j> <shared_len>`"));
                }
                let face = |token: &str| -> Result<usize, FormatError> {
                    let id: u64 = token.parse().map_err(|_| syntax(line, format!("invalid face id `{token}`")))?;
                    index.get(&id).copied().ok_or_else(|| syntax(line, format!("unknown face id {id}")))
                };
                let (a, b) = (face(fields[1])?, face(fields[2])?);
                let shared = length(fields[3], line)?;
                if a == b {
                    return Err(syntax(line, "face adjacent to itself"));
                }
                if shared <= 0.0 {
                    return Err(syntax(line, "shared boundary length must be positive"));
                }
                if !seen.insert((a.min(b), a.max(b))) {
                    return Err(syntax(line, "duplicate adjacency"));
                }
                graph.adjacencies.push((a, b, shared));
            }
            Some(other) => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
    }
    Ok(graph)
}

fn length(token: &str, line: usize) -> Result<f64, FormatError> {
    let x: f64 = token.parse().map_err(|_| syntax(line, format!("invalid number `{token}`")))?;
    if !(x.is_finite() && x >= 0.0) {
        return Err(syntax(line, format!("expected a finite nonnegative number, got `{token}`")));
    }
    Ok(x)
}

pub fn write_face_graph(graph: &FaceGraph) -> String {
    let mut out = String::new();
    for f in &graph.faces {
        let kind = match f.kind {
            FaceKind::Polygon => "polygon",
            FaceKind::Triangle => "triangle",
        };
        let _ = writeln!(out, "f {} {kind} {} {}", f.id, f.area, f.outer_len);
    }
    for &(a, b, len) in &graph.adjacencies {
        let _ = writeln!(out, "e {} {} {len}", graph.faces[a].id, graph.faces[b].id);
    }
    out
}

/// Aggregation network on `[0, lambda_max]`: `s = 0`, `t = 1`, face `k` is
/// vertex `k + 2`. Source arcs `lambda * area + outer_len`, sink arcs
/// infinite for polygons and zero for triangles, adjacencies in both
/// directions with the shared length.
pub fn build_aggregation_network(graph: &FaceGraph, lambda_max: f64) -> Result<ParametricNetwork, FormatError> {
    if !(lambda_max > 0.0 && lambda_max.is_finite()) {
        return Err(FormatError::Invalid(format!("lambda_max must be positive and finite, got {lambda_max}")));
    }
    let n = graph.faces.len() + 2;
    let mut builder = NetworkBuilder::new(n, 0, 1, 0.0, lambda_max);
    for (k, f) in graph.faces.iter().enumerate() {
        if !(f.area >= 0.0 && f.outer_len >= 0.0) {
            return Err(FormatError::Invalid(format!("face {} has a negative measure", f.id)));
        }
        builder.add_arc(0, k + 2, AffineFn::new(f.area, f.outer_len));
        if f.kind == FaceKind::Polygon {
            builder.add_arc(k + 2, 1, AffineFn::INFINITE);
        }
    }
    for &(a, b, len) in &graph.adjacencies {
        if a >= graph.faces.len() || b >= graph.faces.len() || a == b || !(len > 0.0) {
            return Err(FormatError::Invalid(format!("malformed adjacency ({a}, {b}, {len})")));
        }
        builder.add_arc(a + 2, b + 2, AffineFn::constant(len));
        builder.add_arc(b + 2, a + 2, AffineFn::constant(len));
    }
    Ok(builder.build()?)
}

/// Triangulated `rows x cols` grid with jittered interior points. Each cell
/// holds two triangles; each triangle is an input polygon with probability
/// `polygon_share`, a filler triangle otherwise.
pub fn grid_face_graph(rows: usize, cols: usize, polygon_share: f64, seed: u64) -> FaceGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point_cols = cols + 1;
    let mut points = Vec::with_capacity((rows + 1) * point_cols);
    for i in 0..=rows {
        for j in 0..=cols {
            let interior = i > 0 && i < rows && j > 0 && j < cols;
            let (dx, dy) = if interior {
                (rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3))
            } else {
                (0.0, 0.0)
            };
            points.push((j as f64 + dx, i as f64 + dy));
        }
    }
    let p = |i: usize, j: usize| points[i * point_cols + j];
    let dist = |a: (f64, f64), b: (f64, f64)| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
    let area = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
        ((b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1)).abs() / 2.0
    };
    // lower triangle (a, b, d) and upper triangle (a, d, c) of cell (i, j)
    let face = |i: usize, j: usize, k: usize| 2 * (i * cols + j) + k;
    let mut graph = FaceGraph::default();
    for i in 0..rows {
        for j in 0..cols {
            let (a, b, c, d) = (p(i, j), p(i, j + 1), p(i + 1, j), p(i + 1, j + 1));
            let mut outer = [0.0, 0.0];
            if i == 0 {
                outer[0] += dist(a, b);
            }
            if j + 1 == cols {
                outer[0] += dist(b, d);
            }
            if j == 0 {
                outer[1] += dist(a, c);
            }
            if i + 1 == rows {
                outer[1] += dist(c, d);
            }
            let areas = [area(a, b, d), area(a, d, c)];
            for k in 0..2 {
                let kind = if rng.random::<f64>() < polygon_share { FaceKind::Polygon } else { FaceKind::Triangle };
                let id = face(i, j, k) as u64 + 1;
                graph.faces.push(Face { id, kind, area: areas[k], outer_len: outer[k] });
            }
            graph.adjacencies.push((face(i, j, 0), face(i, j, 1), dist(a, d)));
            if i > 0 {
                graph.adjacencies.push((face(i, j, 0), face(i - 1, j, 1), dist(a, b)));
            }
            if j > 0 {
                graph.adjacencies.push((face(i, j, 1), face(i, j - 1, 0), dist(a, c)));
            }
        }
    }
    graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::check_monotone;

    #[test]
    fn two_faces() {
        let graph = parse_face_graph("c demo\nf 10 polygon 2 3\nf 20 triangle 0.5 0\ne 10 20 1.7\n").unwrap();
        let net = build_aggregation_network(&graph, DEFAULT_AGGREGATION_LAMBDA_MAX).unwrap();
        check_monotone(&net).unwrap();
        let topo = net.topology();
        assert_eq!(net.n(), 4);
        let cap = |u, v| net.cap(topo.find_arc(u, v).unwrap());
        assert_eq!(cap(0, 2), AffineFn::new(2.0, 3.0));
        assert_eq!(cap(2, 1), AffineFn::INFINITE);
        assert_eq!(cap(0, 3), AffineFn::new(0.5, 0.0));
        assert_eq!(cap(3, 1), AffineFn::ZERO);
        assert_eq!(cap(2, 3), AffineFn::constant(1.7));
        assert_eq!(cap(3, 2), AffineFn::constant(1.7));
        assert_eq!(net.lambda_max(), 1e6);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_face_graph("f 1 polygon -1 0\n").is_err());
        assert!(parse_face_graph("f 1 polygon 1 0\nf 1 triangle 1 0\n").is_err());
        assert!(parse_face_graph("f 1 polygon 1 0\ne 1 1 2\n").is_err());
        assert!(parse_face_graph("f 1 polygon 1 0\nf 2 polygon 1 0\ne 1 2 1\ne 2 1 1\n").is_err());
        assert!(parse_face_graph("f 1 square 1 0\n").is_err());
        assert!(parse_face_graph("e 1 2 1\n").is_err());
    }

    #[test]
    fn grid_is_a_valid_subdivision() {
        let g = grid_face_graph(3, 4, 0.3, 1);
        assert_eq!(g.faces.len(), 24);
        // 12 diagonals, 8 vertical neighbours, 9 horizontal neighbours
        assert_eq!(g.adjacencies.len(), 12 + 8 + 9);
        let total: f64 = g.faces.iter().map(|f| f.area).sum();
        assert!((total - 12.0).abs() < 1e-9);
        let boundary: f64 = g.faces.iter().map(|f| f.outer_len).sum();
        assert!((boundary - 14.0).abs() < 1e-9);
        let text = write_face_graph(&g);
        assert_eq!(parse_face_graph(&text).unwrap(), g);
        let net = build_aggregation_network(&g, 100.0).unwrap();
        check_monotone(&net).unwrap();
    }
}
