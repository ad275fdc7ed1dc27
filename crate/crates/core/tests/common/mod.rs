#![allow(dead_code)]

use std::collections::VecDeque;

use graph_knn::generate::{gnm, max_edges};
use graph_knn::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

/// Seeded random digraphs with n in 1..=200 and m up to 4000. Every third
/// instance draws weights from 1..=3 to force many equal distances; every
/// fifth is a multigraph with self-loops and parallel edges.
pub fn corpus(count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6e6e);
    let mut out = Vec::with_capacity(count);
    let fixed_sizes = [1usize, 2, 3, 4, 5, 200];
    for i in 0..count {
        let n = fixed_sizes.get(i).copied().unwrap_or_else(|| rng.gen_range(1..=200));
        let m_cap = max_edges(n).min(4000);
        let m = if m_cap == 0 { 0 } else { rng.gen_range(0..=m_cap) };
        let hi = if i % 3 == 0 { 3 } else { 100 };
        let seed = rng.gen();
        let (kind, graph) = if i % 5 == 4 && n > 0 {
            ("multi", multigraph(n, m, hi, seed))
        } else {
            ("gnm", gnm(n, m, 1..=hi, seed))
        };
        out.push(Instance {
            name: format!("{kind}#{i}(n={n},m={m},w<={hi})"),
            graph,
        });
    }
    out
}

/// Edges drawn with replacement, so loops and parallel edges occur.
pub fn multigraph(n: usize, m: usize, max_weight: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..m)
        .map(|_| {
            (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                f64::from(rng.gen_range(1..=max_weight)),
            )
        })
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

/// For each v, how many vertices u have a path u -> v (including v itself).
/// Plain BFS on the transposed graph; knows nothing about weights.
pub fn reaching_counts(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut incoming = vec![Vec::new(); n];
    for (u, v, _) in graph.edges() {
        incoming[v].push(u);
    }
    (0..n)
        .map(|v| {
            let mut seen = vec![false; n];
            seen[v] = true;
            let mut queue = VecDeque::from([v]);
            let mut count = 0;
            while let Some(x) = queue.pop_front() {
                count += 1;
                for &u in &incoming[x] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            count
        })
        .collect()
}

pub fn ks_for(n: usize) -> Vec<usize> {
    let mut ks = vec![1, 2, 5, 16, n.max(1)];
    ks.sort_unstable();
    ks.dedup();
    ks
}
