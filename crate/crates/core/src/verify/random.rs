use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::netcore::{AffineFn, NetworkBuilder, ParametricNetwork, StaticNetwork};

/// Shape of the sink arcs of a random monotone network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinkMode {
    Constant,
    /// Integer slopes in `[-3, 0]`, intercepts raised so that the capacity
    /// stays nonnegative on the interval.
    Decreasing,
}

const LAMBDA_MAX: f64 = 4.0;

/// Random monotone network on `[0, 4]` with `n` in `[4, 40]`: `s = 0`,
/// `t = 1`, a random connected sparse graph on the other vertices with
/// integer capacities in `[0, 10]`, source arcs with integer slope and
/// intercept in `[0, 5]`, sink arcs with intercept in `[0, 10]`.
pub fn random_monotone_network(seed: u64, mode: SinkMode) -> ParametricNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(4..=40usize);
    monotone_with(&mut rng, n, mode)
}

/// Same family with a fixed vertex count `n >= 2`.
pub fn random_monotone_network_of_size(n: usize, seed: u64, mode: SinkMode) -> ParametricNetwork {
    assert!(n >= 2, "a network needs a source and a sink");
    monotone_with(&mut ChaCha8Rng::seed_from_u64(seed), n, mode)
}

fn monotone_with(rng: &mut ChaCha8Rng, n: usize, mode: SinkMode) -> ParametricNetwork {
    let mut builder = NetworkBuilder::new(n, 0, 1, 0.0, LAMBDA_MAX);
    let inner: Vec<usize> = (2..n).collect();
    let cap = |rng: &mut ChaCha8Rng| AffineFn::constant(f64::from(rng.random_range(0..=10u8)));
    for (i, &v) in inner.iter().enumerate().skip(1) {
        let u = inner[rng.random_range(0..i)];
        let (a, b) = if rng.random_bool(0.5) { (u, v) } else { (v, u) };
        builder.add_arc(a, b, cap(rng));
        if rng.random_bool(0.5) {
            builder.add_arc(b, a, cap(rng));
        }
    }
    let extra = rng.random_range(0..=inner.len());
    for _ in 0..extra {
        let u = inner[rng.random_range(0..inner.len())];
        let v = inner[rng.random_range(0..inner.len())];
        if u != v {
            builder.add_arc(u, v, cap(rng));
        }
    }
    for &v in &inner {
        if rng.random_bool(0.85) {
            let slope = f64::from(rng.random_range(0..=5u8));
            let intercept = f64::from(rng.random_range(0..=5u8));
            builder.add_arc(0, v, AffineFn::new(slope, intercept));
        }
        if rng.random_bool(0.85) {
            let mut intercept = f64::from(rng.random_range(0..=10u8));
            let slope = match mode {
                SinkMode::Constant => 0.0,
                SinkMode::Decreasing => -f64::from(rng.random_range(0..=3u8)),
            };
            intercept = intercept.max(-slope * LAMBDA_MAX);
            builder.add_arc(v, 1, AffineFn::new(slope, intercept));
        }
    }
    builder.build().expect("generator produces valid networks")
}

/// Random constant network with `n` in `[2, 40]`. Capacities are integers in
/// `[0, 10]` or, for every other seed, arbitrary reals in `[0, 10)`.
pub fn random_static_network(seed: u64) -> StaticNetwork<'static> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=40usize);
    let real = seed % 2 == 1;
    let m = rng.random_range(0..=4 * n);
    let arcs: Vec<(usize, usize, f64)> = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            let c = if real { rng.random_range(0.0..10.0) } else { f64::from(rng.random_range(0..=10u8)) };
            (u, v, c)
        })
        .collect();
    StaticNetwork::from_arcs(n, 0, 1, &arcs).expect("generator produces valid networks")
}
