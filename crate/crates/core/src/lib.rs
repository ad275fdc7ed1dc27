//! k nearest neighbors of every vertex of a positively weighted digraph,
//! where "nearest" means smallest shortest-path distance.
//!
//! Three ways to build the same [`KnnTable`]:
//!
//! * [`knn_all`] / [`knn_from_terminals`]: one pass that runs Dijkstra from
//!   every source at once, with each vertex accepting at most `k` sources.
//! * [`randomized_knn`]: repeated multi-source Dijkstra from random samples
//!   (Monte Carlo; may omit entries with small probability).
//! * [`brute_force_knn`]: a full Dijkstra per vertex, used for verification.
//!
//! Row `v` lists sources `u` by `dist(u -> v)`, ties broken by source id.
//! Run on [`Graph::reverse`] to rank by `dist(v -> u)` instead.

pub mod cli;
pub mod fast;
pub mod generate;
pub mod graph;
pub mod heap;
pub mod oracle;
pub mod randomized;
pub mod stats;
pub mod table;

pub use fast::{knn_all, knn_from_terminals, Event, KnnEngine, KnnError, Membership};
pub use graph::{Edge, Graph, GraphError, GraphFormat, VertexId};
pub use oracle::{brute_force_knn, truncated_dijkstra};
pub use randomized::{multi_source_dijkstra, randomized_knn, round_count};
pub use stats::RunStats;
pub use table::{canonical_less, Key, KnnTable, NeighborEntry};
