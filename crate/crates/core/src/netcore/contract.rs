use super::{NetworkBuilder, NetworkError, ParametricNetwork, VertexId};

/// Where a vertex goes when contracting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Keep,
    Source,
    Sink,
}

/// A contracted network together with the vertex correspondence.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub network: ParametricNetwork,
    /// `original[w]` is the vertex of the input network that `w` stands for.
    pub original: Vec<VertexId>,
    /// `image[v]` is the vertex of the contracted network that `v` maps to.
    pub image: Vec<VertexId>,
}

/// Merges every vertex marked `Source` into `s` and every vertex marked `Sink`
/// into `t`. Remaining vertices are renumbered in increasing order of their
/// original id; multi-arcs are summed and self-loops at the terminals dropped.
/// Terminal markings on `s` and `t` themselves are ignored.
pub fn contract(net: &ParametricNetwork, sides: &[Side]) -> Result<Contraction, NetworkError> {
    let n = net.n();
    if sides.len() != n {
        return Err(NetworkError::MalformedPartition("side vector has the wrong length"));
    }
    let (s, t) = (net.source(), net.sink());
    if sides[t] == Side::Source {
        return Err(NetworkError::SinkContracted);
    }
    if sides[s] == Side::Sink {
        return Err(NetworkError::MalformedPartition("source contracted into the sink"));
    }
    let mut image = vec![usize::MAX; n];
    let mut original = Vec::new();
    for v in 0..n {
        if v == s || v == t || sides[v] == Side::Keep {
            image[v] = original.len();
            original.push(v);
        }
    }
    let (new_s, new_t) = (image[s], image[t]);
    for v in 0..n {
        match sides[v] {
            _ if v == s || v == t => {}
            Side::Source => image[v] = new_s,
            Side::Sink => image[v] = new_t,
            Side::Keep => {}
        }
    }
    let topo = net.topology();
    let mut builder = NetworkBuilder::new(original.len(), new_s, new_t, net.lambda_min(), net.lambda_max());
    builder.arcs.reserve(net.num_arcs());
    for a in 0..net.num_arcs() {
        let cap = net.cap(a);
        if cap.is_zero() {
            continue;
        }
        let (u, v) = (image[topo.tail(a)], image[topo.head(a)]);
        if u != v {
            builder.add_arc(u, v, cap);
        }
    }
    let network = builder.build()?;
    Ok(Contraction { network, original, image })
}

/// Contracts `members` into the source.
pub fn contract_source_set(net: &ParametricNetwork, members: &[bool]) -> Result<Contraction, NetworkError> {
    if members.len() != net.n() {
        return Err(NetworkError::MalformedPartition("membership vector has the wrong length"));
    }
    if members[net.sink()] {
        return Err(NetworkError::SinkContracted);
    }
    let sides: Vec<Side> = members.iter().map(|&m| if m { Side::Source } else { Side::Keep }).collect();
    contract(net, &sides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::fixtures::*;
    use crate::netcore::{cut_capacity, AffineFn};

    fn set(n: usize, members: &[VertexId]) -> Vec<bool> {
        let mut s = vec![false; n];
        for &v in members {
            s[v] = true;
        }
        s
    }

    #[test]
    fn f2_contract_b() {
        let c = contract_source_set(&f2(), &set(4, &[F2_B])).unwrap();
        let net = &c.network;
        assert_eq!(net.n(), 3);
        let (s, t, a) = (net.source(), net.sink(), c.image[F2_A]);
        let topo = net.topology();
        assert_eq!(net.cap(topo.find_arc(s, a).unwrap()), AffineFn::new(2.0, 0.0));
        assert_eq!(net.cap(topo.find_arc(s, t).unwrap()), AffineFn::constant(1.0));
        assert_eq!(net.cap(topo.find_arc(a, s).unwrap()), AffineFn::constant(1.0));
        assert_eq!(net.cap(topo.find_arc(a, t).unwrap()), AffineFn::constant(3.0));
        assert_eq!(c.original[a], F2_A);
    }

    #[test]
    fn contracting_nothing_is_identity() {
        let net = f2();
        let c = contract_source_set(&net, &set(4, &[])).unwrap();
        assert_eq!(c.network, net);
        assert_eq!(c.original, vec![0, 1, 2, 3]);
    }

    #[test]
    fn f1_contract_v() {
        let c = contract_source_set(&f1(), &set(3, &[F1_V])).unwrap();
        let net = &c.network;
        assert_eq!(net.n(), 2);
        let nonzero: Vec<_> = net.nonzero_arcs().collect();
        assert_eq!(nonzero, vec![(net.source(), net.sink(), AffineFn::constant(1.0))]);
    }

    #[test]
    fn sink_cannot_be_contracted() {
        assert_eq!(
            contract_source_set(&f1(), &set(3, &[F1_T])).unwrap_err(),
            NetworkError::SinkContracted
        );
    }

    #[test]
    fn contraction_preserves_non_separating_cuts() {
        let net = f2();
        let c = contract_source_set(&net, &set(4, &[F2_B])).unwrap();
        // every sink side disjoint from {b}
        for mask in 0..2u32 {
            let mut orig = set(4, &[F2_T]);
            orig[F2_A] = mask & 1 == 1;
            let mut small = vec![false; c.network.n()];
            for (w, &v) in c.original.iter().enumerate() {
                small[w] = orig[v];
            }
            assert_eq!(cut_capacity(&net, &orig).unwrap(), cut_capacity(&c.network, &small).unwrap());
        }
    }
}
