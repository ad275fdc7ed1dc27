//! Each vertex's two closest facilities, where only some vertices are
//! facilities.
//!
//! cargo run -p graph-knn --example closest_terminals

use graph_knn::{knn_from_terminals, Graph, Membership, RunStats};

fn main() {
    // a ring of 8 vertices with a shortcut, edges in both directions
    let mut edges = Vec::new();
    for v in 0..8 {
        edges.push((v, (v + 1) % 8, 1.0));
        edges.push(((v + 1) % 8, v, 1.0));
    }
    edges.push((0, 4, 1.5));
    let ring = Graph::from_edges(8, edges).unwrap();

    let facilities = [0, 3];
    let table = knn_from_terminals(&ring, 2, &facilities, Membership::Bounded, &mut RunStats::default())
        .expect("non-empty terminal set");

    for v in ring.vertices() {
        let closest: Vec<String> = table
            .row(v)
            .iter()
            .map(|e| format!("facility {} at {}", e.source, e.distance))
            .collect();
        println!("{v}: {}", closest.join(", "));
    }
}
