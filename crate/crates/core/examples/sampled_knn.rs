//! Monte Carlo k-NN: how many sampling rounds it takes and whether the
//! result agrees with the exact table.
//!
//! cargo run --release -p graph-knn --example sampled_knn

use graph_knn::generate::gnm;
use graph_knn::{knn_all, randomized_knn, round_count, Membership, RunStats};

fn main() {
    let g = gnm(150, 900, 1..=20, 9);
    let k = 4;
    let exact = knn_all(&g, k, Membership::Hashed, &mut RunStats::default());

    for confidence in [3, 4, 5] {
        let rounds = round_count(g.vertex_count(), k, confidence);
        let mut stats = RunStats::default();
        let sampled = randomized_knn(&g, k, confidence, 42, &mut stats);
        let missing: usize = g
            .vertices()
            .map(|v| exact.row(v).len() - sampled.row(v).len())
            .sum();
        println!(
            "c={confidence}: {rounds} rounds, {} relaxations, {missing} entries missing, identical={}",
            stats.relax_ops,
            sampled == exact
        );
    }
}
