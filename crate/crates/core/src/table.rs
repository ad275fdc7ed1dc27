//! Canonical `(distance, source)` ordering and the k-NN table it produces.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::VertexId;

/// A candidate `(distance, source)` pair, ordered lexicographically.
///
/// Distances are compared with [`f64::total_cmp`], so ties are exact bit
/// equality of the accumulated path sums.
#[derive(Debug, Clone, Copy)]
pub struct Key {
    pub dist: f64,
    pub source: VertexId,
}

impl Key {
    pub fn new(dist: f64, source: VertexId) -> Key {
        Key { dist, source }
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.source.cmp(&other.source))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key {}

/// Strict canonical order on `(distance, source)` pairs.
pub fn canonical_less(a: (f64, VertexId), b: (f64, VertexId)) -> bool {
    Key::new(a.0, a.1) < Key::new(b.0, b.1)
}

#[derive(Debug, Clone, Copy)]
pub struct NeighborEntry {
    pub source: VertexId,
    pub distance: f64,
}

impl NeighborEntry {
    pub fn key(&self) -> Key {
        Key::new(self.distance, self.source)
    }
}

impl PartialEq for NeighborEntry {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.distance.to_bits() == other.distance.to_bits()
    }
}

impl Eq for NeighborEntry {}

impl From<Key> for NeighborEntry {
    fn from(key: Key) -> Self {
        NeighborEntry {
            source: key.source,
            distance: key.dist,
        }
    }
}

/// For every vertex `v`, the up-to-`k` sources closest to `v` in
/// canonical order. Equality is bit-exact on distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnnTable {
    k: usize,
    rows: Vec<Vec<NeighborEntry>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error("line {line}: malformed table line: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

/// First point where two tables disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub vertex: VertexId,
    pub rank: usize,
    pub left: Option<NeighborEntry>,
    pub right: Option<NeighborEntry>,
}

impl KnnTable {
    pub fn new(k: usize, rows: Vec<Vec<NeighborEntry>>) -> KnnTable {
        KnnTable { k, rows }
    }

    /// Builds a table from unsorted per-vertex candidates, keeping the
    /// `k` canonically smallest of each row.
    pub fn from_candidates(k: usize, candidates: Vec<Vec<NeighborEntry>>) -> KnnTable {
        let rows = candidates
            .into_iter()
            .map(|mut row| {
                row.sort_unstable_by_key(NeighborEntry::key);
                row.truncate(k);
                row
            })
            .collect();
        KnnTable { k, rows }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, v: VertexId) -> &[NeighborEntry] {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[Vec<NeighborEntry>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<NeighborEntry>> {
        self.rows
    }

    /// Checks the structural row invariants: length at most `k`, strictly
    /// increasing canonical keys (so distinct sources), non-negative
    /// distances, and zero distance exactly on the self entry.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (v, row) in self.rows.iter().enumerate() {
            if row.len() > self.k {
                return Err(format!("row {v} has {} > k={} entries", row.len(), self.k));
            }
            for pair in row.windows(2) {
                if pair[0].key() >= pair[1].key() {
                    return Err(format!("row {v} not strictly increasing: {pair:?}"));
                }
            }
            for e in row {
                if e.distance.is_nan() || e.distance < 0.0 {
                    return Err(format!("row {v} has negative distance {e:?}"));
                }
                if (e.distance == 0.0) != (e.source == v) {
                    return Err(format!("row {v} has inconsistent self entry {e:?}"));
                }
            }
        }
        Ok(())
    }

    /// The first `(vertex, rank)` at which `self` and `other` differ.
    pub fn first_mismatch(&self, other: &KnnTable) -> Option<Mismatch> {
        let n = self.rows.len().max(other.rows.len());
        let empty: &[NeighborEntry] = &[];
        for v in 0..n {
            let a = self.rows.get(v).map_or(empty, Vec::as_slice);
            let b = other.rows.get(v).map_or(empty, Vec::as_slice);
            for rank in 0..a.len().max(b.len()) {
                let (l, r) = (a.get(rank).copied(), b.get(rank).copied());
                if l != r {
                    return Some(Mismatch {
                        vertex: v,
                        rank,
                        left: l,
                        right: r,
                    });
                }
            }
        }
        None
    }

    /// One line per entry: `v<TAB>rank<TAB>source<TAB>distance`.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut line = String::new();
        for (v, row) in self.rows.iter().enumerate() {
            for (rank, e) in row.iter().enumerate() {
                line.clear();
                let _ = writeln!(line, "{v}\t{rank}\t{}\t{}", e.source, format_distance(e.distance));
                out.write_all(line.as_bytes())?;
            }
        }
        Ok(())
    }

    /// Reads back the output of [`KnnTable::write_tsv`]. The vertex count
    /// and `k` are not part of the format and must be supplied.
    pub fn read_tsv<R: BufRead>(input: R, n: usize, k: usize) -> Result<KnnTable, TableError> {
        let mut rows: Vec<Vec<NeighborEntry>> = vec![Vec::new(); n];
        for (i, line) in input.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|e| TableError::Io(e.to_string()))?;
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| TableError::Malformed {
                line: line_no,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split('\t').collect();
            let [v, rank, source, dist] = fields[..] else {
                return Err(bad("expected four tab-separated fields"));
            };
            let v: usize = v.parse().map_err(|_| bad("bad vertex id"))?;
            let rank: usize = rank.parse().map_err(|_| bad("bad rank"))?;
            let source: usize = source.parse().map_err(|_| bad("bad source id"))?;
            let distance: f64 = dist.parse().map_err(|_| bad("bad distance"))?;
            let row = rows.get_mut(v).ok_or_else(|| bad("vertex id out of range"))?;
            if rank != row.len() {
                return Err(bad("ranks must be consecutive from 0"));
            }
            row.push(NeighborEntry { source, distance });
        }
        Ok(KnnTable { k, rows })
    }
}

/// Shortest decimal that round-trips; integral values carry no decimal point.
pub fn format_distance(d: f64) -> String {
    format!("{d}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_less_examples() {
        assert!(canonical_less((1.0, 5), (2.0, 1)));
        assert!(!canonical_less((1.0, 5), (1.0, 1)));
        assert!(!canonical_less((1.0, 3), (1.0, 3)));
    }

    #[test]
    fn distance_formatting() {
        assert_eq!(format_distance(2.0), "2");
        assert_eq!(format_distance(0.0), "0");
        assert_eq!(format_distance(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(format_distance(1.5), "1.5");
    }

    #[test]
    fn tsv_layout() {
        let t = KnnTable::new(
            2,
            vec![
                vec![NeighborEntry { source: 0, distance: 0.0 }],
                vec![
                    NeighborEntry { source: 1, distance: 0.0 },
                    NeighborEntry { source: 0, distance: 2.5 },
                ],
            ],
        );
        let mut buf = Vec::new();
        t.write_tsv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0\t0\t0\t0\n1\t0\t1\t0\n1\t1\t0\t2.5\n");
    }

    #[test]
    fn mismatch_locates_first_difference() {
        let a = KnnTable::new(2, vec![vec![NeighborEntry { source: 0, distance: 0.0 }]]);
        let b = KnnTable::new(
            2,
            vec![vec![
                NeighborEntry { source: 0, distance: 0.0 },
                NeighborEntry { source: 1, distance: 1.0 },
            ]],
        );
        let m = a.first_mismatch(&b).unwrap();
        assert_eq!((m.vertex, m.rank, m.left), (0, 1, None));
        assert!(a.first_mismatch(&a).is_none());
    }

    fn arb_key() -> impl Strategy<Value = (f64, usize)> {
        (prop_oneof![Just(0.0), Just(1.0), Just(2.5), 0.0f64..100.0], 0usize..4)
    }

    proptest! {
        #[test]
        fn canonical_less_is_strict_total_order(a in arb_key(), b in arb_key(), c in arb_key()) {
            prop_assert!(!canonical_less(a, a));
            let equal = a.0.to_bits() == b.0.to_bits() && a.1 == b.1;
            let count = [canonical_less(a, b), canonical_less(b, a), equal]
                .iter()
                .filter(|x| **x)
                .count();
            prop_assert_eq!(count, 1);
            if canonical_less(a, b) && canonical_less(b, c) {
                prop_assert!(canonical_less(a, c));
            }
        }

        #[test]
        fn tsv_round_trips(
            rows in prop::collection::vec(
                prop::collection::vec((0usize..50, 0.0f64..1e6), 0..5),
                1..6,
            )
        ) {
            let rows: Vec<Vec<NeighborEntry>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(|(source, distance)| NeighborEntry { source, distance }).collect())
                .collect();
            let n = rows.len();
            let t = KnnTable::new(5, rows);
            let mut buf = Vec::new();
            t.write_tsv(&mut buf).unwrap();
            let back = KnnTable::read_tsv(buf.as_slice(), n, 5).unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
