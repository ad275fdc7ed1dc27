//! Addressable binary min-heap. Items are identified by a `usize` id; the
//! id-to-slot map is pluggable so that a heap over all vertices can use a
//! dense array while a small per-vertex heap uses a hash map.

use rustc_hash::FxHashMap;

pub trait SlotMap {
    fn slot(&self, id: usize) -> Option<usize>;
    fn set_slot(&mut self, id: usize, slot: usize);
    fn clear_slot(&mut self, id: usize);
}

/// Slot map backed by a vector indexed by id, for ids in `[0, capacity)`.
#[derive(Debug, Clone)]
pub struct DenseSlots(Vec<usize>);

const VACANT: usize = usize::MAX;

impl DenseSlots {
    pub fn with_capacity(capacity: usize) -> Self {
        DenseSlots(vec![VACANT; capacity])
    }
}

impl SlotMap for DenseSlots {
    fn slot(&self, id: usize) -> Option<usize> {
        match self.0[id] {
            VACANT => None,
            s => Some(s),
        }
    }

    fn set_slot(&mut self, id: usize, slot: usize) {
        self.0[id] = slot;
    }

    fn clear_slot(&mut self, id: usize) {
        self.0[id] = VACANT;
    }
}

#[derive(Debug, Clone, Default)]
pub struct HashedSlots(FxHashMap<usize, usize>);

impl SlotMap for HashedSlots {
    fn slot(&self, id: usize) -> Option<usize> {
        self.0.get(&id).copied()
    }

    fn set_slot(&mut self, id: usize, slot: usize) {
        self.0.insert(id, slot);
    }

    fn clear_slot(&mut self, id: usize) {
        self.0.remove(&id);
    }
}

/// Binary min-heap holding at most one key per id.
#[derive(Debug, Clone)]
pub struct IndexedHeap<K, S> {
    items: Vec<(K, usize)>,
    slots: S,
}

impl<K: Ord + Copy> IndexedHeap<K, HashedSlots> {
    pub fn hashed() -> Self {
        IndexedHeap {
            items: Vec::new(),
            slots: HashedSlots::default(),
        }
    }
}

impl<K: Ord + Copy> Default for IndexedHeap<K, HashedSlots> {
    fn default() -> Self {
        Self::hashed()
    }
}

impl<K: Ord + Copy> IndexedHeap<K, DenseSlots> {
    pub fn dense(capacity: usize) -> Self {
        IndexedHeap {
            items: Vec::new(),
            slots: DenseSlots::with_capacity(capacity),
        }
    }
}

impl<K: Ord + Copy, S: SlotMap> IndexedHeap<K, S> {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.slots.slot(id).is_some()
    }

    pub fn key_of(&self, id: usize) -> Option<K> {
        self.slots.slot(id).map(|s| self.items[s].0)
    }

    pub fn peek(&self) -> Option<(K, usize)> {
        self.items.first().copied()
    }

    /// Inserts a new id. Panics in debug builds if the id is already present.
    pub fn push(&mut self, id: usize, key: K) {
        debug_assert!(!self.contains(id), "id {id} already in heap");
        let slot = self.items.len();
        self.items.push((key, id));
        self.slots.set_slot(id, slot);
        self.sift_up(slot);
    }

    pub fn pop(&mut self) -> Option<(K, usize)> {
        let last = self.items.len().checked_sub(1)?;
        self.items.swap(0, last);
        let top = self.items.pop()?;
        self.slots.clear_slot(top.1);
        if !self.items.is_empty() {
            self.slots.set_slot(self.items[0].1, 0);
            self.sift_down(0);
        }
        Some(top)
    }

    /// Lowers the key of a present id. The new key must not be larger.
    pub fn decrease_key(&mut self, id: usize, key: K) {
        let slot = self.slots.slot(id).expect("decrease_key on absent id");
        debug_assert!(key <= self.items[slot].0, "decrease_key would increase");
        self.items[slot].0 = key;
        self.sift_up(slot);
    }

    /// Removes an arbitrary id, returning its key.
    pub fn remove(&mut self, id: usize) -> Option<K> {
        let slot = self.slots.slot(id)?;
        let last = self.items.len() - 1;
        self.items.swap(slot, last);
        let (key, _) = self.items.pop().expect("non-empty");
        self.slots.clear_slot(id);
        if slot < self.items.len() {
            self.slots.set_slot(self.items[slot].1, slot);
            self.sift_down(slot);
            self.sift_up(slot);
        }
        Some(key)
    }

    /// Ids currently held, in no particular order.
    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().map(|&(_, id)| id)
    }

    pub fn clear(&mut self) {
        for &(_, id) in &self.items {
            self.slots.clear_slot(id);
        }
        self.items.clear();
    }

    fn sift_up(&mut self, mut slot: usize) {
        while slot > 0 {
            let parent = (slot - 1) / 2;
            if self.items[slot].0 >= self.items[parent].0 {
                break;
            }
            self.swap(slot, parent);
            slot = parent;
        }
    }

    fn sift_down(&mut self, mut slot: usize) {
        let len = self.items.len();
        loop {
            let left = 2 * slot + 1;
            if left >= len {
                break;
            }
            let right = left + 1;
            let child = if right < len && self.items[right].0 < self.items[left].0 {
                right
            } else {
                left
            };
            if self.items[child].0 >= self.items[slot].0 {
                break;
            }
            self.swap(slot, child);
            slot = child;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.items.swap(a, b);
        self.slots.set_slot(self.items[a].1, a);
        self.slots.set_slot(self.items[b].1, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    #[test]
    fn pops_in_key_order() {
        let mut h = IndexedHeap::dense(5);
        for (id, key) in [(0, 5), (1, 3), (2, 9), (3, 1)] {
            h.push(id, key);
        }
        h.decrease_key(2, 0);
        let order: Vec<_> = std::iter::from_fn(|| h.pop()).collect();
        assert_eq!(order, vec![(0, 2), (1, 3), (3, 1), (5, 0)]);
        assert!(!h.contains(2));
    }

    #[derive(Debug, Clone)]
    enum Op {
        Push(usize, u32),
        Decrease(usize, u32),
        Remove(usize),
        Pop,
    }

    fn op() -> impl Strategy<Value = Op> {
        prop_oneof![
            (0usize..20, 0u32..100).prop_map(|(i, k)| Op::Push(i, k)),
            (0usize..20, 0u32..100).prop_map(|(i, k)| Op::Decrease(i, k)),
            (0usize..20).prop_map(Op::Remove),
            Just(Op::Pop),
        ]
    }

    proptest! {
        // Model: a map id -> key; the heap must always pop a minimal (key, id).
        #[test]
        fn agrees_with_ordered_model(ops in prop::collection::vec(op(), 0..200)) {
            let mut dense = IndexedHeap::dense(20);
            let mut hashed = IndexedHeap::hashed();
            let mut model: BTreeMap<usize, u32> = BTreeMap::new();
            for op in ops {
                match op {
                    Op::Push(id, k) if !model.contains_key(&id) => {
                        dense.push(id, (k, id));
                        hashed.push(id, (k, id));
                        model.insert(id, k);
                    }
                    Op::Decrease(id, k) if model.get(&id).is_some_and(|&old| k <= old) => {
                        dense.decrease_key(id, (k, id));
                        hashed.decrease_key(id, (k, id));
                        model.insert(id, k);
                    }
                    Op::Remove(id) => {
                        let expect = model.remove(&id).map(|k| (k, id));
                        prop_assert_eq!(dense.remove(id), expect);
                        prop_assert_eq!(hashed.remove(id), expect);
                    }
                    Op::Pop => {
                        let expect = model.iter().map(|(&id, &k)| (k, id)).min();
                        if let Some((_, id)) = expect {
                            model.remove(&id);
                        }
                        prop_assert_eq!(dense.pop().map(|p| p.0), expect);
                        prop_assert_eq!(hashed.pop().map(|p| p.0), expect);
                    }
                    _ => {}
                }
                prop_assert_eq!(dense.len(), model.len());
                prop_assert_eq!(hashed.len(), model.len());
            }
        }
    }
}
