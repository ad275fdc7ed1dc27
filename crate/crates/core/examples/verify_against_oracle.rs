//! Cross-checks both algorithms against brute-force Dijkstra on a batch of
//! random graphs with many tied distances.
//!
//! cargo run --release -p graph-knn --example verify_against_oracle

use graph_knn::generate::gnm;
use graph_knn::{brute_force_knn, knn_all, randomized_knn, Membership, RunStats};

fn main() {
    let mut checked = 0;
    for seed in 0..20 {
        let g = gnm(60, 400, 1..=3, seed);
        for k in [1, 3, 8] {
            let oracle = brute_force_knn(&g, k, None);
            for mode in [Membership::Hashed, Membership::Bounded] {
                let fast = knn_all(&g, k, mode, &mut RunStats::default());
                if let Some(m) = fast.first_mismatch(&oracle) {
                    panic!("seed {seed} k {k} {mode:?}: {m:?}");
                }
            }
            let sampled = randomized_knn(&g, k, 4, seed, &mut RunStats::default());
            assert_eq!(sampled.first_mismatch(&oracle), None, "seed {seed} k {k}");
            checked += 1;
        }
    }
    println!("{checked} (graph, k) pairs agree with the oracle");
}
