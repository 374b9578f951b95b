use super::FormatError;
use crate::netcore::{AffineFn, NetworkBuilder, ParametricNetwork};

/// Parameter interval given to synthetic instances unless overridden.
pub const SYNTH_DEFAULT_INTERVAL: (f64, f64) = (0.0, 1.0);

/// The splitmix64 generator, seeded directly with the user seed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`: `next / 2^64`.
    pub fn next_unit(&mut self) -> f64 {
        self.next_u64() as f64 / 18_446_744_073_709_551_616.0
    }
}

/// Turns a constant network into a monotone parametric one: every source arc
/// `(s, v)`, `v != t`, gets capacity `c1 + lambda * c2` with `c1` then `c2`
/// drawn uniformly from `[1, y]`, in canonical arc order. All other arcs keep
/// their constant capacity.
pub fn synth_parametrize(
    net: &ParametricNetwork,
    y: f64,
    seed: u64,
    interval: (f64, f64),
) -> Result<ParametricNetwork, FormatError> {
    if !(y >= 1.0 && y.is_finite()) {
        return Err(FormatError::Invalid(format!("y must be a finite value >= 1, got {y}")));
    }
    let topo = net.topology();
    let (s, t) = (net.source(), net.sink());
    let mut rng = SplitMix64::new(seed);
    let mut draw = || 1.0 + rng.next_unit() * (y - 1.0);
    let mut builder = NetworkBuilder::new(net.n(), s, t, interval.0, interval.1);
    for a in 0..net.num_arcs() {
        let (u, v, cap) = (topo.tail(a), topo.head(a), net.cap(a));
        if u == s && v != t {
            let c1 = draw();
            let c2 = draw();
            builder.add_arc(u, v, AffineFn::new(c2, c1));
        } else if !cap.is_zero() {
            if !cap.is_constant() {
                return Err(FormatError::Invalid(format!("arc ({}, {}) is not constant", u + 1, v + 1)));
            }
            builder.add_arc(u, v, cap);
        }
    }
    Ok(builder.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::parse_pmax;
    use crate::netcore::check_monotone;

    const GRID: &str = "p max 4 5\nn 1 s\nn 4 t\na 1 2 3\na 1 3 2\na 2 3 1\na 2 4 2\na 3 4 3\n";

    #[test]
    fn reference_sequence() {
        assert_eq!(SplitMix64::new(0).next_u64(), 0xE220_A839_7B1D_CDAF);
        let mut rng = SplitMix64::new(42);
        assert_eq!(rng.next_u64(), 0xBDD7_3226_2FEB_6E95);
        assert_eq!(rng.next_u64(), 0x28EF_E333_B266_F103);
    }

    #[test]
    fn first_source_arc_with_seed_42() {
        let net = parse_pmax(GRID).unwrap();
        let out = synth_parametrize(&net, 10.0, 42, SYNTH_DEFAULT_INTERVAL).unwrap();
        let a = out.topology().find_arc(0, 1).unwrap();
        let cap = out.cap(a);
        assert_eq!(cap.intercept, 1.0 + (0xBDD7_3226_2FEB_6E95u64 as f64 / 2f64.powi(64)) * 9.0);
        assert_eq!(cap.slope, 1.0 + (0x28EF_E333_B266_F103u64 as f64 / 2f64.powi(64)) * 9.0);
        assert!((cap.intercept - 7.674083908946411).abs() < 1e-12);
    }

    #[test]
    fn deterministic_and_monotone() {
        let net = parse_pmax(GRID).unwrap();
        let a = synth_parametrize(&net, 5.0, 7, SYNTH_DEFAULT_INTERVAL).unwrap();
        let b = synth_parametrize(&net, 5.0, 7, SYNTH_DEFAULT_INTERVAL).unwrap();
        assert_eq!(a, b);
        check_monotone(&a).unwrap();
        let sink_arc = a.topology().find_arc(1, 3).unwrap();
        assert_eq!(a.cap(sink_arc), AffineFn::constant(2.0));
    }

    #[test]
    fn y_one_gives_one_plus_lambda() {
        let net = parse_pmax(GRID).unwrap();
        let out = synth_parametrize(&net, 1.0, 3, SYNTH_DEFAULT_INTERVAL).unwrap();
        for a in out.topology().out_arcs(0) {
            if out.topology().head(a) != 3 {
                assert_eq!(out.cap(a), AffineFn::new(1.0, 1.0));
            }
        }
        assert!(synth_parametrize(&net, 0.5, 3, SYNTH_DEFAULT_INTERVAL).is_err());
    }
}
