//! Per-vertex event queues together with the settled-source sets `D'(v)`.
//!
//! Two membership modes share one interface. `Hashed` keeps an unbounded
//! addressable heap with a source-to-slot hash map. `Bounded` keeps an
//! ordered set that never holds more pending candidates than the vertex
//! still has settles left, rejecting anything worse than the largest one.

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashSet;

use crate::graph::VertexId;
use crate::heap::{HashedSlots, IndexedHeap};
use crate::table::Key;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offer {
    Inserted,
    Decreased,
    Rejected,
}

#[derive(Debug, Default)]
pub(crate) struct HashedQueue {
    pending: IndexedHeap<Key, HashedSlots>,
    settled: FxHashSet<VertexId>,
}

#[derive(Debug, Default)]
pub(crate) struct BoundedQueue {
    pending: BTreeSet<Key>,
    by_source: BTreeMap<VertexId, f64>,
    settled: BTreeSet<VertexId>,
}

#[derive(Debug)]
pub(crate) enum LocalQueues {
    Hashed(Vec<HashedQueue>),
    Bounded(Vec<BoundedQueue>),
}

impl LocalQueues {
    pub fn hashed(n: usize) -> Self {
        LocalQueues::Hashed((0..n).map(|_| HashedQueue::default()).collect())
    }

    pub fn bounded(n: usize) -> Self {
        LocalQueues::Bounded((0..n).map(|_| BoundedQueue::default()).collect())
    }

    pub fn is_settled(&self, v: VertexId, source: VertexId) -> bool {
        match self {
            LocalQueues::Hashed(q) => q[v].settled.contains(&source),
            LocalQueues::Bounded(q) => q[v].settled.contains(&source),
        }
    }

    pub fn mark_settled(&mut self, v: VertexId, source: VertexId) {
        let fresh = match self {
            LocalQueues::Hashed(q) => q[v].settled.insert(source),
            LocalQueues::Bounded(q) => q[v].settled.insert(source),
        };
        debug_assert!(fresh, "source {source} settled twice at {v}");
    }

    /// Offers a candidate for a source that is not yet settled at `v`.
    /// `capacity` is the number of settles `v` has left.
    pub fn offer(&mut self, v: VertexId, key: Key, capacity: usize) -> Offer {
        match self {
            LocalQueues::Hashed(q) => {
                let pending = &mut q[v].pending;
                match pending.key_of(key.source) {
                    None => {
                        pending.push(key.source, key);
                        Offer::Inserted
                    }
                    Some(old) if key < old => {
                        pending.decrease_key(key.source, key);
                        Offer::Decreased
                    }
                    Some(_) => Offer::Rejected,
                }
            }
            LocalQueues::Bounded(q) => {
                let q = &mut q[v];
                if let Some(&old_dist) = q.by_source.get(&key.source) {
                    let old = Key::new(old_dist, key.source);
                    if key >= old {
                        return Offer::Rejected;
                    }
                    q.pending.remove(&old);
                    q.pending.insert(key);
                    q.by_source.insert(key.source, key.dist);
                    return Offer::Decreased;
                }
                if q.pending.len() >= capacity {
                    let worst = *q.pending.last().expect("capacity is at least one");
                    if key >= worst {
                        return Offer::Rejected;
                    }
                    q.pending.pop_last();
                    q.by_source.remove(&worst.source);
                }
                q.pending.insert(key);
                q.by_source.insert(key.source, key.dist);
                Offer::Inserted
            }
        }
    }

    pub fn peek_min(&self, v: VertexId) -> Option<Key> {
        match self {
            LocalQueues::Hashed(q) => q[v].pending.peek().map(|(k, _)| k),
            LocalQueues::Bounded(q) => q[v].pending.first().copied(),
        }
    }

    pub fn pop_min(&mut self, v: VertexId) -> Option<Key> {
        match self {
            LocalQueues::Hashed(q) => q[v].pending.pop().map(|(k, _)| k),
            LocalQueues::Bounded(q) => {
                let q = &mut q[v];
                let key = q.pending.pop_first()?;
                q.by_source.remove(&key.source);
                Some(key)
            }
        }
    }

    pub fn pending_key(&self, v: VertexId, source: VertexId) -> Option<Key> {
        match self {
            LocalQueues::Hashed(q) => q[v].pending.key_of(source),
            LocalQueues::Bounded(q) => q[v].by_source.get(&source).map(|&d| Key::new(d, source)),
        }
    }

    #[cfg(test)]
    pub fn pending_len(&self, v: VertexId) -> usize {
        match self {
            LocalQueues::Hashed(q) => q[v].pending.len(),
            LocalQueues::Bounded(q) => q[v].pending.len(),
        }
    }

    /// Drops every pending event of `v`; nothing is accepted afterwards
    /// because the engine stops offering once `v` is full.
    pub fn disable(&mut self, v: VertexId) {
        match self {
            LocalQueues::Hashed(q) => q[v].pending = IndexedHeap::hashed(),
            LocalQueues::Bounded(q) => {
                q[v].pending = BTreeSet::new();
                q[v].by_source = BTreeMap::new();
            }
        }
    }
}
