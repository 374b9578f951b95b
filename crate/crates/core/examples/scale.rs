//! Times PBFS on a square grid face graph: `cargo run --release --example scale -- 224`.

use std::time::Instant;
use mpmc_core::instances::{build_aggregation_network, grid_face_graph, DEFAULT_AGGREGATION_LAMBDA_MAX};
use mpmc_core::pbfs;

fn main() {
    let k: usize = std::env::args().nth(1).map_or(80, |s| s.parse().unwrap());
    let g = grid_face_graph(k, k, 0.3, 2024);
    let net = build_aggregation_network(&g, DEFAULT_AGGREGATION_LAMBDA_MAX).unwrap();
    let t = Instant::now();
    let out = pbfs::run(&net).unwrap();
    println!("n={} m={} {:?} {:?}", net.n(), net.num_arcs(), t.elapsed(), out.stats);
}
