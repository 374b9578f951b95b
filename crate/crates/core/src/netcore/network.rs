use std::borrow::Cow;
use std::ops::Range;

use super::affine::AffineFn;
use super::NetworkError;

pub type VertexId = usize;
pub type ArcId = usize;

/// Paired-arc adjacency in compressed form.
///
/// Arcs are sorted by `(tail, head)`, so the outgoing arcs of `v` occupy the
/// contiguous id range `out_arcs(v)` and every `(tail, head)` pair appears at
/// most once. `rev(rev(a)) == a` and `head(a) == tail(rev(a))` for every arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    n: usize,
    source: VertexId,
    sink: VertexId,
    tail: Vec<VertexId>,
    head: Vec<VertexId>,
    rev: Vec<ArcId>,
    first_out: Vec<ArcId>,
}

impl Topology {
    /// Builds the topology from arcs already sorted by `(tail, head)`, unique,
    /// and closed under reversal.
    fn from_sorted_pairs(n: usize, source: VertexId, sink: VertexId, pairs: &[(VertexId, VertexId)]) -> Self {
        let m = pairs.len();
        let mut first_out = vec![0; n + 1];
        for &(u, _) in pairs {
            first_out[u + 1] += 1;
        }
        for v in 0..n {
            first_out[v + 1] += first_out[v];
        }
        let tail: Vec<_> = pairs.iter().map(|p| p.0).collect();
        let head: Vec<_> = pairs.iter().map(|p| p.1).collect();
        let mut rev = vec![0; m];
        for a in 0..m {
            let (u, v) = pairs[a];
            let range = first_out[v]..first_out[v + 1];
            let offset = head[range.clone()]
                .binary_search(&u)
                .expect("arc set is closed under reversal");
            rev[a] = range.start + offset;
        }
        Topology { n, source, sink, tail, head, rev, first_out }
    }

    /// Topology with arbitrary arcs; reverse partners are added and duplicates
    /// collapsed. Returns, for every input arc, the id it was mapped to.
    pub fn from_arcs(
        n: usize,
        source: VertexId,
        sink: VertexId,
        arcs: &[(VertexId, VertexId)],
    ) -> Result<(Topology, Vec<ArcId>), NetworkError> {
        check_terminals(n, source, sink)?;
        let mut pairs = Vec::with_capacity(2 * arcs.len());
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(NetworkError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u != v {
                pairs.push((u, v));
                pairs.push((v, u));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let topo = Topology::from_sorted_pairs(n, source, sink, &pairs);
        let ids = arcs
            .iter()
            .map(|&(u, v)| if u == v { usize::MAX } else { topo.find_arc(u, v).expect("arc present") })
            .collect();
        Ok((topo, ids))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_arcs(&self) -> usize {
        self.tail.len()
    }

    #[inline]
    pub fn source(&self) -> VertexId {
        self.source
    }

    #[inline]
    pub fn sink(&self) -> VertexId {
        self.sink
    }

    #[inline]
    pub fn tail(&self, a: ArcId) -> VertexId {
        self.tail[a]
    }

    #[inline]
    pub fn head(&self, a: ArcId) -> VertexId {
        self.head[a]
    }

    #[inline]
    pub fn rev(&self, a: ArcId) -> ArcId {
        self.rev[a]
    }

    #[inline]
    pub fn out_arcs(&self, v: VertexId) -> Range<ArcId> {
        self.first_out[v]..self.first_out[v + 1]
    }

    pub fn find_arc(&self, u: VertexId, v: VertexId) -> Option<ArcId> {
        let range = self.out_arcs(u);
        self.head[range.clone()].binary_search(&v).ok().map(|i| range.start + i)
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        v == self.source || v == self.sink
    }
}

fn check_terminals(n: usize, source: VertexId, sink: VertexId) -> Result<(), NetworkError> {
    if source >= n {
        return Err(NetworkError::VertexOutOfRange { vertex: source, n });
    }
    if sink >= n {
        return Err(NetworkError::VertexOutOfRange { vertex: sink, n });
    }
    if source == sink {
        return Err(NetworkError::SourceIsSink);
    }
    Ok(())
}

/// Unnormalized description of a parametric network: any arc list, possibly
/// with parallel arcs, missing reverse arcs or missing terminal arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkBuilder {
    pub n: usize,
    pub source: VertexId,
    pub sink: VertexId,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub arcs: Vec<(VertexId, VertexId, AffineFn)>,
}

impl NetworkBuilder {
    pub fn new(n: usize, source: VertexId, sink: VertexId, lambda_min: f64, lambda_max: f64) -> Self {
        NetworkBuilder { n, source, sink, lambda_min, lambda_max, arcs: Vec::new() }
    }

    pub fn arc(mut self, tail: VertexId, head: VertexId, cap: AffineFn) -> Self {
        self.arcs.push((tail, head, cap));
        self
    }

    pub fn add_arc(&mut self, tail: VertexId, head: VertexId, cap: AffineFn) {
        self.arcs.push((tail, head, cap));
    }

    /// See [`normalize`].
    pub fn build(self) -> Result<ParametricNetwork, NetworkError> {
        normalize(&self)
    }
}

/// Produces the canonical network: parallel arcs merged by summing their
/// coefficients, self-loops dropped, every arc paired with a reverse arc, and
/// every non-terminal vertex given `(s,v)` and `(v,t)` arcs. Added arcs carry
/// the constant capacity 0.
pub fn normalize(raw: &NetworkBuilder) -> Result<ParametricNetwork, NetworkError> {
    let NetworkBuilder { n, source, sink, lambda_min, lambda_max, ref arcs } = *raw;
    check_terminals(n, source, sink)?;
    if !(lambda_min.is_finite() && lambda_max.is_finite() && lambda_min < lambda_max) {
        return Err(NetworkError::BadInterval { lambda_min, lambda_max });
    }
    let mut entries: Vec<(VertexId, VertexId, AffineFn)> = Vec::with_capacity(2 * arcs.len() + 4 * n);
    for &(u, v, cap) in arcs {
        if u >= n || v >= n {
            return Err(NetworkError::VertexOutOfRange { vertex: u.max(v), n });
        }
        if !cap.infinite && !(cap.slope.is_finite() && cap.intercept.is_finite()) {
            return Err(NetworkError::NonFiniteCoefficient { tail: u, head: v });
        }
        if u == v {
            continue;
        }
        entries.push((u, v, cap));
        entries.push((v, u, AffineFn::ZERO));
    }
    for v in (0..n).filter(|&v| v != source && v != sink) {
        entries.push((source, v, AffineFn::ZERO));
        entries.push((v, source, AffineFn::ZERO));
        entries.push((v, sink, AffineFn::ZERO));
        entries.push((sink, v, AffineFn::ZERO));
    }
    // Stable sort keeps the declaration order of parallel arcs, so the
    // floating-point sums below are reproducible.
    entries.sort_by_key(|e| (e.0, e.1));
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::with_capacity(entries.len());
    let mut caps: Vec<AffineFn> = Vec::with_capacity(entries.len());
    for (u, v, cap) in entries {
        match pairs.last() {
            Some(&last) if last == (u, v) => {
                let c = caps.last_mut().expect("caps parallel to pairs");
                *c += cap;
            }
            _ => {
                pairs.push((u, v));
                caps.push(cap);
            }
        }
    }
    let topo = Topology::from_sorted_pairs(n, source, sink, &pairs);
    Ok(ParametricNetwork { topo, caps, lambda_min, lambda_max })
}

/// A normalized parametric flow network with affine capacities on
/// `[lambda_min, lambda_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricNetwork {
    topo: Topology,
    caps: Vec<AffineFn>,
    lambda_min: f64,
    lambda_max: f64,
}

impl ParametricNetwork {
    #[inline]
    pub fn topology(&self) -> &Topology {
        &self.topo
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.topo.n
    }

    #[inline]
    pub fn num_arcs(&self) -> usize {
        self.topo.num_arcs()
    }

    #[inline]
    pub fn source(&self) -> VertexId {
        self.topo.source
    }

    #[inline]
    pub fn sink(&self) -> VertexId {
        self.topo.sink
    }

    #[inline]
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    #[inline]
    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    #[inline]
    pub fn cap(&self, a: ArcId) -> AffineFn {
        self.caps[a]
    }

    pub fn caps(&self) -> &[AffineFn] {
        &self.caps
    }

    /// Same network on a different parameter interval.
    pub fn with_interval(&self, lambda_min: f64, lambda_max: f64) -> Result<ParametricNetwork, NetworkError> {
        if !(lambda_min.is_finite() && lambda_max.is_finite() && lambda_min < lambda_max) {
            return Err(NetworkError::BadInterval { lambda_min, lambda_max });
        }
        Ok(ParametricNetwork { lambda_min, lambda_max, ..self.clone() })
    }

    /// Arcs with a capacity other than the constant zero, in canonical
    /// `(tail, head)` order.
    pub fn nonzero_arcs(&self) -> impl Iterator<Item = (VertexId, VertexId, AffineFn)> + '_ {
        (0..self.num_arcs())
            .filter(|&a| !self.caps[a].is_zero())
            .map(|a| (self.topo.tail(a), self.topo.head(a), self.caps[a]))
    }

    pub fn to_builder(&self) -> NetworkBuilder {
        NetworkBuilder {
            n: self.n(),
            source: self.source(),
            sink: self.sink(),
            lambda_min: self.lambda_min,
            lambda_max: self.lambda_max,
            arcs: (0..self.num_arcs())
                .map(|a| (self.topo.tail(a), self.topo.head(a), self.caps[a]))
                .collect(),
        }
    }

    /// The constant network `G[lambda]`.
    pub fn evaluate_at(&self, lambda: f64) -> Result<StaticNetwork<'_>, NetworkError> {
        if !(lambda >= self.lambda_min && lambda <= self.lambda_max) {
            return Err(NetworkError::LambdaOutOfRange {
                lambda,
                lambda_min: self.lambda_min,
                lambda_max: self.lambda_max,
            });
        }
        Ok(self.evaluate_unchecked(lambda))
    }

    /// As [`evaluate_at`](Self::evaluate_at) without the interval check.
    /// Negative values from evaluating outside the interval are clamped to 0.
    pub fn evaluate_unchecked(&self, lambda: f64) -> StaticNetwork<'_> {
        let cap = self.caps.iter().map(|c| c.eval(lambda).max(0.0)).collect();
        StaticNetwork { topo: Cow::Borrowed(&self.topo), cap }
    }
}

/// Free-function form of [`ParametricNetwork::evaluate_at`].
pub fn evaluate_at(net: &ParametricNetwork, lambda: f64) -> Result<StaticNetwork<'_>, NetworkError> {
    net.evaluate_at(lambda)
}

/// A flow network with constant capacities; `f64::INFINITY` marks arcs that
/// never saturate.
#[derive(Debug, Clone)]
pub struct StaticNetwork<'a> {
    topo: Cow<'a, Topology>,
    cap: Vec<f64>,
}

impl StaticNetwork<'static> {
    /// Normalized static network from an arbitrary arc list. Parallel arcs are
    /// summed; missing reverse arcs get capacity 0.
    pub fn from_arcs(
        n: usize,
        source: VertexId,
        sink: VertexId,
        arcs: &[(VertexId, VertexId, f64)],
    ) -> Result<StaticNetwork<'static>, NetworkError> {
        let ends: Vec<_> = arcs.iter().map(|&(u, v, _)| (u, v)).collect();
        let (topo, ids) = Topology::from_arcs(n, source, sink, &ends)?;
        let mut cap = vec![0.0; topo.num_arcs()];
        for (&(u, v, c), &id) in arcs.iter().zip(&ids) {
            if c.is_nan() || c < 0.0 {
                return Err(NetworkError::NegativeCapacity { tail: u, head: v });
            }
            if id != usize::MAX {
                cap[id] += c;
            }
        }
        Ok(StaticNetwork { topo: Cow::Owned(topo), cap })
    }
}

impl<'a> StaticNetwork<'a> {
    pub fn new(topo: &'a Topology, cap: Vec<f64>) -> Self {
        assert_eq!(topo.num_arcs(), cap.len());
        StaticNetwork { topo: Cow::Borrowed(topo), cap }
    }

    #[inline]
    pub fn topology(&self) -> &Topology {
        &self.topo
    }

    #[inline]
    pub fn cap(&self, a: ArcId) -> f64 {
        self.cap[a]
    }

    pub fn caps(&self) -> &[f64] {
        &self.cap
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.topo.n()
    }

    #[inline]
    pub fn source(&self) -> VertexId {
        self.topo.source()
    }

    #[inline]
    pub fn sink(&self) -> VertexId {
        self.topo.sink()
    }
}
