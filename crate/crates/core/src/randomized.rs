//! Monte Carlo k-NN by repeated sampling.
//!
//! Each round picks every vertex independently with probability `1/k` and
//! runs one multi-source Dijkstra from the picked set, which tells every
//! vertex its nearest picked source. Pooling those answers over enough
//! rounds contains the true `k` nearest sources of every vertex with high
//! probability. Distances are always exact; a failed run only omits entries.

use std::cmp::{Ordering, Reverse};
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{Graph, VertexId};
use crate::stats::RunStats;
use crate::table::{Key, KnnTable, NeighborEntry};

pub const DEFAULT_CONFIDENCE: u32 = 4;

/// Rounds needed so that a fixed `(source, vertex)` pair is missed with
/// probability at most `n^-c`: `ceil(10 c k ln n)`.
///
/// A round catches the pair when the source is sampled and none of the
/// closer sources are, which happens with probability at least `1/(10k)`.
pub fn round_count(n: usize, k: usize, confidence: u32) -> usize {
    debug_assert!(n >= 2 && k >= 1);
    let t = 10.0 * f64::from(confidence) * k as f64 * (n as f64).ln();
    (t.ceil() as usize).max(1)
}

/// Members of round `round`: a pure function of `(seed, round, vertex)`.
pub fn sample_round(n: usize, k: usize, seed: u64, round: u64) -> Vec<VertexId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(round);
    let p = 1.0 / k as f64;
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

#[derive(Clone, Copy)]
struct Label {
    key: Key,
    vertex: VertexId,
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key).then(self.vertex.cmp(&other.vertex))
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

/// For every vertex, the source minimizing `(dist(source -> v), source)`,
/// or `None` if no source reaches it. All sources start at distance zero.
pub fn multi_source_dijkstra(
    graph: &Graph,
    sources: &[VertexId],
    stats: &mut RunStats,
) -> Vec<Option<NeighborEntry>> {
    let n = graph.vertex_count();
    let mut best: Vec<Option<Key>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::with_capacity(sources.len());

    for &s in sources {
        let key = Key::new(0.0, s);
        if best[s].is_none_or(|b| key < b) {
            best[s] = Some(key);
            heap.push(Reverse(Label { key, vertex: s }));
            stats.events_inserted += 1;
        }
    }
    while let Some(Reverse(Label { key, vertex: u })) = heap.pop() {
        stats.global_extracts += 1;
        if done[u] {
            continue;
        }
        done[u] = true;
        for e in graph.out_edges(u) {
            stats.relax_ops += 1;
            let z = e.target;
            let offer = Key::new(key.dist + e.weight, key.source);
            if !done[z] && best[z].is_none_or(|b| offer < b) {
                best[z] = Some(offer);
                heap.push(Reverse(Label { key: offer, vertex: z }));
                stats.events_inserted += 1;
            }
        }
    }
    best.into_iter().map(|b| b.map(NeighborEntry::from)).collect()
}

type Pool = Vec<HashMap<VertexId, f64>>;

fn merge_candidate(pool: &mut HashMap<VertexId, f64>, source: VertexId, dist: f64) {
    match pool.entry(source) {
        Entry::Vacant(slot) => {
            slot.insert(dist);
        }
        Entry::Occupied(mut slot) => {
            let old = *slot.get();
            // Equal for integral weights; sums over different shortest
            // paths may differ in the last bits otherwise.
            debug_assert!(
                (old - dist).abs() <= 1e-9 * old.abs().max(1.0),
                "source {source} offered at {old} and {dist}"
            );
            if dist < old {
                slot.insert(dist);
            }
        }
    }
}

/// Monte Carlo k-NN with `round_count(n, k, confidence)` sampling rounds.
///
/// Rounds run in parallel on the current rayon pool; the result does not
/// depend on scheduling.
pub fn randomized_knn(
    graph: &Graph,
    k: usize,
    confidence: u32,
    seed: u64,
    stats: &mut RunStats,
) -> KnnTable {
    assert!(k >= 1, "k must be at least 1");
    let n = graph.vertex_count();
    let rounds = round_count(n.max(2), k, confidence);

    let (pool, run) = (0..rounds as u64)
        .into_par_iter()
        .fold(
            || (vec![HashMap::new(); n] as Pool, RunStats::default()),
            |(mut pool, mut run), round| {
                let sample = sample_round(n, k, seed, round);
                let nearest = multi_source_dijkstra(graph, &sample, &mut run);
                for (v, hit) in nearest.into_iter().enumerate() {
                    if let Some(e) = hit {
                        merge_candidate(&mut pool[v], e.source, e.distance);
                    }
                }
                (pool, run)
            },
        )
        .reduce(
            || (vec![HashMap::new(); n], RunStats::default()),
            |(mut a, mut sa), (b, sb)| {
                for (into, from) in a.iter_mut().zip(b) {
                    for (s, d) in from {
                        merge_candidate(into, s, d);
                    }
                }
                sa += sb;
                (a, sa)
            },
        );
    *stats += run;

    let candidates = pool
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(source, distance)| NeighborEntry { source, distance })
                .collect()
        })
        .collect();
    KnnTable::from_candidates(k, candidates)
}
