//! The k nearest sources of every vertex on a small road-like graph.
//!
//! cargo run -p graph-knn --example nearest_sources

use graph_knn::{knn_all, Graph, Membership, RunStats};

fn main() {
    let roads = Graph::from_edges(
        6,
        [
            (0, 1, 4.0),
            (1, 0, 4.0),
            (1, 2, 1.0),
            (2, 3, 2.0),
            (3, 1, 2.0),
            (2, 4, 7.0),
            (4, 5, 1.0),
            (5, 2, 3.0),
        ],
    )
    .expect("valid graph");

    let mut stats = RunStats::default();
    let table = knn_all(&roads, 3, Membership::Hashed, &mut stats);

    for v in roads.vertices() {
        let row: Vec<String> = table
            .row(v)
            .iter()
            .map(|e| format!("{}@{}", e.source, e.distance))
            .collect();
        println!("vertex {v}: {}", row.join("  "));
    }
    print!("\n{stats}");
}
