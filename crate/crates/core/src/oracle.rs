//! Brute-force reference: one textbook Dijkstra per vertex.
//!
//! Uses `std::collections::BinaryHeap` with lazy deletion and nothing from
//! the simultaneous engine, so the two can be checked against each other.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::graph::{Graph, VertexId};
use crate::table::{KnnTable, NeighborEntry};

#[derive(Debug, Clone, Copy)]
struct Label {
    dist: f64,
    vertex: VertexId,
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.vertex.cmp(&other.vertex))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Label {}

/// The first `limit` vertices settled by single-source Dijkstra from
/// `source`, in `(distance, vertex id)` order.
pub fn truncated_dijkstra(graph: &Graph, source: VertexId, limit: usize) -> Vec<(VertexId, f64)> {
    let n = graph.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut out = Vec::new();

    dist[source] = 0.0;
    heap.push(Reverse(Label { dist: 0.0, vertex: source }));
    while let Some(Reverse(Label { dist: d, vertex: u })) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        out.push((u, d));
        if out.len() == limit {
            break;
        }
        for e in graph.out_edges(u) {
            let nd = d + e.weight;
            if nd < dist[e.target] {
                dist[e.target] = nd;
                heap.push(Reverse(Label { dist: nd, vertex: e.target }));
            }
        }
    }
    out
}

/// Exact k-NN table: for each `v`, a full Dijkstra from `v` on the reversed
/// graph gives `dist(u -> v)` for all `u`; the `k` smallest
/// `(distance, source)` pairs form the row. With `terminals`, only those
/// vertices are eligible sources.
pub fn brute_force_knn(graph: &Graph, k: usize, terminals: Option<&[VertexId]>) -> KnnTable {
    assert!(k >= 1, "k must be at least 1");
    let n = graph.vertex_count();
    let reversed = graph.reverse();
    let eligible: Option<Vec<bool>> = terminals.map(|ts| {
        let mut mask = vec![false; n];
        for &t in ts {
            mask[t] = true;
        }
        mask
    });

    let rows = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut row: Vec<NeighborEntry> = truncated_dijkstra(&reversed, v, n)
                .into_iter()
                .filter(|&(u, _)| eligible.as_ref().is_none_or(|mask| mask[u]))
                .map(|(source, distance)| NeighborEntry { source, distance })
                .collect();
            row.sort_by(|a, b| {
                a.distance
                    .total_cmp(&b.distance)
                    .then(a.source.cmp(&b.source))
            });
            row.truncate(k);
            row
        })
        .collect();
    KnnTable::new(k, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    fn entry(source: VertexId, distance: f64) -> NeighborEntry {
        NeighborEntry { source, distance }
    }

    #[test]
    fn truncated_examples() {
        let g = path3();
        assert_eq!(truncated_dijkstra(&g, 1, 1), vec![(1, 0.0)]);
        assert_eq!(truncated_dijkstra(&g, 0, 3), vec![(0, 0.0), (1, 1.0), (2, 2.0)]);
        assert_eq!(truncated_dijkstra(&g, 2, 5), vec![(2, 0.0)]);
    }

    #[test]
    fn settle_order_breaks_ties_by_vertex() {
        let g = Graph::from_edges(4, [(0, 3, 1.0), (0, 1, 1.0), (0, 2, 1.0)]).unwrap();
        let ids: Vec<_> = truncated_dijkstra(&g, 0, 4).into_iter().map(|p| p.0).collect();
        assert_eq!(ids, vec![0, 1, 2, 3]);
    }

    #[test]
    fn brute_force_examples() {
        let g = path3();
        let t = brute_force_knn(&g, 1, None);
        for v in g.vertices() {
            assert_eq!(t.row(v), &[entry(v, 0.0)]);
        }
        let t = brute_force_knn(&g, 2, None);
        assert_eq!(t.row(2), &[entry(2, 0.0), entry(1, 1.0)]);
        let t = brute_force_knn(&g, 2, Some(&[0]));
        assert_eq!(t.rows(), &[vec![entry(0, 0.0)], vec![entry(0, 1.0)], vec![entry(0, 2.0)]]);
    }

    #[test]
    fn large_k_lists_every_reaching_source() {
        let g = Graph::from_edges(4, [(0, 1, 2.0), (1, 2, 2.0), (3, 2, 1.0)]).unwrap();
        let t = brute_force_knn(&g, 10, None);
        assert_eq!(t.row(2), &[entry(2, 0.0), entry(3, 1.0), entry(1, 2.0), entry(0, 4.0)]);
        assert_eq!(t.row(3), &[entry(3, 0.0)]);
        t.check_invariants().unwrap();
    }

    // Floyd-Warshall as an unrelated reference on small graphs.
    #[test]
    fn agrees_with_floyd_warshall() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(1..12);
            let m = rng.gen_range(0..40);
            let edges: Vec<_> = (0..m)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(1..6) as f64))
                .collect();
            let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
            let mut d = vec![vec![f64::INFINITY; n]; n];
            for (i, row) in d.iter_mut().enumerate() {
                row[i] = 0.0;
            }
            for &(u, v, w) in &edges {
                d[u][v] = d[u][v].min(w);
            }
            for mid in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let via = d[i][mid] + d[mid][j];
                        if via < d[i][j] {
                            d[i][j] = via;
                        }
                    }
                }
            }
            for (s, from_s) in d.iter().enumerate() {
                let got = truncated_dijkstra(&g, s, n);
                let reachable = from_s.iter().filter(|x| x.is_finite()).count();
                assert_eq!(got.len(), reachable);
                for (v, dist) in got {
                    assert_eq!(dist, from_s[v]);
                }
            }
        }
    }
}
