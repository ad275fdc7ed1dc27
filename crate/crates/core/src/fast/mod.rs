//! Simultaneous Dijkstra from every source with a two-level queue.
//!
//! Each vertex `v` owns a local queue of pending events `(v, s, d)`, at most
//! one per source `s`. The global queue holds one entry per vertex whose
//! local queue is non-empty, keyed by that queue's minimum. Extracting the
//! global minimum settles one `(vertex, source)` pair. After `k` settles a
//! vertex is disabled: its local queue is dropped and it never re-enters
//! the global queue, so every vertex settles at most `k` times and every
//! edge is relaxed at most `k` times.
//!
//! All keys are compared as `(distance, source)` and the global queue breaks
//! remaining ties by vertex id, which makes the output deterministic.

mod local;

use std::cmp::Ordering;

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::heap::{DenseSlots, IndexedHeap};
use crate::stats::RunStats;
use crate::table::{Key, KnnTable, NeighborEntry};

use local::{LocalQueues, Offer};

/// How each vertex tracks its settled sources and pending candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Membership {
    /// Hash set of settled sources, unbounded pending heap.
    #[default]
    Hashed,
    /// Ordered sets only; pending candidates are capped at the number of
    /// settles the vertex has left.
    Bounded,
}

impl std::str::FromStr for Membership {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hashed" => Ok(Membership::Hashed),
            "bounded" => Ok(Membership::Bounded),
            other => Err(format!("unknown membership mode `{other}`")),
        }
    }
}

/// A pending or settled `(target, source, distance)` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub target: VertexId,
    pub source: VertexId,
    pub dist: f64,
}

impl Event {
    pub fn key(&self) -> Key {
        Key::new(self.dist, self.source)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnnError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("no seed vertices given")]
    NoSeeds,
    #[error("seed vertex {0} out of range for {1} vertices")]
    SeedOutOfRange(VertexId, usize),
}

#[derive(Debug, Clone, Copy)]
struct GlobalKey {
    key: Key,
    vertex: VertexId,
}

impl Ord for GlobalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key).then(self.vertex.cmp(&other.vertex))
    }
}

impl PartialOrd for GlobalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for GlobalKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for GlobalKey {}

/// Step-by-step state of one simultaneous run.
#[derive(Debug)]
pub struct KnnEngine<'g> {
    graph: &'g Graph,
    k: usize,
    local: LocalQueues,
    global: IndexedHeap<GlobalKey, DenseSlots>,
    settled: Vec<Vec<NeighborEntry>>,
    stats: RunStats,
}

impl<'g> KnnEngine<'g> {
    /// Seeds the event `(s, s, 0)` for every seed `s`.
    pub fn new(
        graph: &'g Graph,
        k: usize,
        membership: Membership,
        seeds: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self, KnnError> {
        if k == 0 {
            return Err(KnnError::ZeroK);
        }
        let n = graph.vertex_count();
        let local = match membership {
            Membership::Hashed => LocalQueues::hashed(n),
            Membership::Bounded => LocalQueues::bounded(n),
        };
        let mut engine = KnnEngine {
            graph,
            k,
            local,
            global: IndexedHeap::dense(n),
            settled: vec![Vec::new(); n],
            stats: RunStats::default(),
        };
        let mut seeded = false;
        for s in seeds {
            if s >= n {
                return Err(KnnError::SeedOutOfRange(s, n));
            }
            seeded = true;
            if engine.local.pending_key(s, s).is_none() {
                engine.offer(s, Key::new(0.0, s));
            }
        }
        if !seeded {
            return Err(KnnError::NoSeeds);
        }
        Ok(engine)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stats(&self) -> RunStats {
        self.stats
    }

    /// Number of sources settled at `v` so far.
    pub fn settle_count(&self, v: VertexId) -> usize {
        self.settled[v].len()
    }

    pub fn is_disabled(&self, v: VertexId) -> bool {
        self.settled[v].len() >= self.k
    }

    /// Settles the globally smallest pending event and relaxes its
    /// out-edges. Returns `None` once no events remain.
    pub fn step(&mut self) -> Option<Event> {
        let (top, v) = self.global.pop()?;
        self.stats.global_extracts += 1;
        let key = self.local.pop_min(v).expect("global entry implies pending event");
        self.stats.local_extracts += 1;
        debug_assert_eq!(key, top.key);
        assert!(
            !self.local.is_settled(v, key.source),
            "stale event ({v}, {}) popped",
            key.source
        );

        self.local.mark_settled(v, key.source);
        self.settled[v].push(key.into());
        if self.is_disabled(v) {
            self.local.disable(v);
        } else if let Some(next) = self.local.peek_min(v) {
            self.global.push(v, GlobalKey { key: next, vertex: v });
        }

        let event = Event {
            target: v,
            source: key.source,
            dist: key.dist,
        };
        for edge in self.graph.out_edges(v) {
            self.relax(edge.target, edge.weight, &event);
        }
        Some(event)
    }

    /// Offers `(z, s, d + w)` after settling `(v, s, d)` along `v -> z`.
    fn relax(&mut self, z: VertexId, weight: f64, settled: &Event) {
        self.stats.relax_ops += 1;
        if self.is_disabled(z) || self.local.is_settled(z, settled.source) {
            return;
        }
        self.offer(z, Key::new(settled.dist + weight, settled.source));
    }

    fn offer(&mut self, z: VertexId, key: Key) {
        let capacity = self.k - self.settled[z].len();
        match self.local.offer(z, key, capacity) {
            Offer::Inserted => self.stats.events_inserted += 1,
            Offer::Decreased => self.stats.decrease_keys += 1,
            Offer::Rejected => return,
        }
        let min = self.local.peek_min(z).expect("just offered");
        let entry = GlobalKey { key: min, vertex: z };
        match self.global.key_of(z) {
            None => self.global.push(z, entry),
            Some(old) if entry < old => self.global.decrease_key(z, entry),
            Some(_) => {}
        }
    }

    /// Runs to completion and returns the table with the final counters.
    pub fn run(mut self) -> (KnnTable, RunStats) {
        while self.step().is_some() {}
        let stats = self.stats;
        (self.into_table(), stats)
    }

    /// Rows in settle order. Only meaningful once [`KnnEngine::step`] has
    /// returned `None`; before that the rows are prefixes of the result.
    pub fn into_table(self) -> KnnTable {
        KnnTable::new(self.k, self.settled)
    }
}

/// The `k` nearest sources of every vertex, by distance into the vertex.
///
/// Panics if `k == 0`.
pub fn knn_all(graph: &Graph, k: usize, membership: Membership, stats: &mut RunStats) -> KnnTable {
    assert!(k >= 1, "k must be at least 1");
    if graph.vertex_count() == 0 {
        return KnnTable::new(k, Vec::new());
    }
    let engine = KnnEngine::new(graph, k, membership, graph.vertices()).expect("valid seeds");
    let (table, run) = engine.run();
    *stats += run;
    table
}

/// Like [`knn_all`], but only `terminals` act as sources.
pub fn knn_from_terminals(
    graph: &Graph,
    k: usize,
    terminals: &[VertexId],
    membership: Membership,
    stats: &mut RunStats,
) -> Result<KnnTable, KnnError> {
    let engine = KnnEngine::new(graph, k, membership, terminals.iter().copied())?;
    let (table, run) = engine.run();
    *stats += run;
    Ok(table)
}
