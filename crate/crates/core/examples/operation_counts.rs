//! Operation counters and wall time as k doubles on a fixed random graph.
//! Relaxations stay below k*m and time grows roughly linearly in k.
//!
//! cargo run --release -p graph-knn --example operation_counts

use std::time::Instant;

use graph_knn::generate::gnm;
use graph_knn::{knn_all, Membership};

fn main() {
    let g = gnm(10_000, 100_000, 1..=100, 1);
    let (n, m) = (g.vertex_count() as u64, g.edge_count() as u64);
    println!("n={n} m={m}");
    println!("{:>3} {:>10} {:>10} {:>10} {:>10} {:>8}", "k", "relax", "k*m", "extracts", "k*n", "ms");
    for k in [1u64, 2, 4, 8, 16, 32] {
        for mode in [Membership::Hashed, Membership::Bounded] {
            let mut stats = Default::default();
            let start = Instant::now();
            knn_all(&g, k as usize, mode, &mut stats);
            let ms = start.elapsed().as_millis();
            println!(
                "{k:>3} {:>10} {:>10} {:>10} {:>10} {ms:>8} {mode:?}",
                stats.relax_ops,
                k * m,
                stats.global_extracts,
                k * n
            );
        }
    }
}
