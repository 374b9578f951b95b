use mpmc_core::dichotomic::ds_run;
use mpmc_core::maxflow::Solver;
use mpmc_core::netcore::NetworkBuilder;
use mpmc_core::pbfs;
use mpmc_core::verify::{brute_force_breakpoints, compare_breakpoints, oracle_breakpoints, verify_solution};
use mpmc_core::{AffineFn, ParametricNetwork};
use proptest::prelude::*;

type ArcSpec = (usize, usize, u8);
type TerminalSpec = (u8, u8, u8, u8);

fn small_network(n: usize, interior: &[ArcSpec], terminals: &[TerminalSpec]) -> ParametricNetwork {
    let mut b = NetworkBuilder::new(n, 0, 1, 0.0, 3.0);
    for &(u, v, c) in interior {
        let (u, v) = (2 + u % (n - 2), 2 + v % (n - 2));
        if u != v {
            b.add_arc(u, v, AffineFn::constant(f64::from(c)));
        }
    }
    for (i, &(si, ss, ti, ts)) in terminals.iter().enumerate().take(n - 2) {
        let v = i + 2;
        b.add_arc(0, v, AffineFn::new(f64::from(ss % 4), f64::from(si % 6)));
        // decreasing sink arcs stay non-negative on [0, 3]
        let slope = -f64::from(ts % 3);
        b.add_arc(v, 1, AffineFn::new(slope, f64::from(ti % 8) - 3.0 * slope));
    }
    b.build().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solvers_match_cut_enumeration(
        n in 3usize..11,
        interior in prop::collection::vec((0usize..16, 0usize..16, 0u8..8), 0..30),
        terminals in prop::collection::vec((0u8..=255, 0u8..=255, 0u8..=255, 0u8..=255), 9),
    ) {
        let net = small_network(n, &interior, &terminals);
        let truth = brute_force_breakpoints(&net).unwrap();
        let candidates = [
            ("pbfs", pbfs::run(&net).unwrap().beta),
            ("ds-ibfs", ds_run(&net, Solver::Ibfs, 0.0).unwrap().beta),
            ("ds-prf", ds_run(&net, Solver::Prf, 0.0).unwrap().beta),
            ("oracle", oracle_breakpoints(&net).unwrap()),
        ];
        for (name, beta) in &candidates {
            let report = compare_breakpoints(beta, &truth, 1e-7);
            prop_assert!(report.is_match(), "{name}: {report}");
        }
    }
}

#[test]
fn oracle_output_passes_verification() {
    for seed in 0..50 {
        let net = mpmc_core::verify::random_monotone_network(seed, mpmc_core::verify::SinkMode::Decreasing);
        let beta = oracle_breakpoints(&net).unwrap();
        let report = verify_solution(&net, &beta, 1e-6).unwrap();
        assert!(report.passed, "seed {seed}: {report}");
    }
}

#[test]
fn shifted_breakpoint_fails_verification() {
    let net = mpmc_core::netcore::fixtures::f2();
    let mut beta = pbfs::run(&net).unwrap().beta;
    let shifted: Vec<f64> = (0..net.n()).map(|v| if beta.get(v) == 1.5 { 2.0 } else { beta.get(v) }).collect();
    beta = mpmc_core::BreakpointFunction::new(net.lambda_min(), shifted);
    assert!(!verify_solution(&net, &beta, 1e-6).unwrap().passed);
}
