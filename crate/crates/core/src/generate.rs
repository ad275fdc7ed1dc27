//! Seeded random graphs for tests and benchmarks.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Largest edge count `gnm` accepts for `n` vertices (no self-loops).
pub fn max_edges(n: usize) -> usize {
    n.saturating_mul(n.saturating_sub(1))
}

/// `m` distinct directed edges chosen uniformly among the `n(n-1)`
/// non-loop pairs, each with an integer weight drawn uniformly from
/// `weights`.
///
/// Panics if `m > max_edges(n)` or the weight range is empty or starts at 0.
pub fn gnm(n: usize, m: usize, weights: RangeInclusive<u32>, seed: u64) -> Graph {
    assert!(m <= max_edges(n), "{m} edges do not fit in {n} vertices");
    assert!(*weights.start() >= 1 && weights.start() <= weights.end(), "bad weight range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = index::sample(&mut rng, max_edges(n), m).into_vec();
    picks.sort_unstable();
    let edges: Vec<_> = picks
        .into_iter()
        .map(|i| {
            let u = i / (n - 1);
            let mut v = i % (n - 1);
            if v >= u {
                v += 1;
            }
            (u, v, f64::from(rng.gen_range(weights.clone())))
        })
        .collect();
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn distinct_loop_free_edges() {
        let g = gnm(30, 500, 1..=5, 3);
        assert_eq!(g.edge_count(), 500);
        let pairs: HashSet<_> = g.edges().map(|(u, v, _)| (u, v)).collect();
        assert_eq!(pairs.len(), 500);
        assert!(g.edges().all(|(u, v, w)| u != v && (1.0..=5.0).contains(&w)));
    }

    #[test]
    fn complete_and_reproducible() {
        let g = gnm(6, 30, 1..=9, 1);
        assert_eq!(g.edge_count(), max_edges(6));
        assert_eq!(gnm(50, 200, 1..=100, 7), gnm(50, 200, 1..=100, 7));
        assert_eq!(gnm(1, 0, 1..=1, 0).vertex_count(), 1);
    }
}
