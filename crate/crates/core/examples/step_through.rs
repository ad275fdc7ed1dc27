//! Drives the simultaneous Dijkstra one settle at a time and prints each
//! `(vertex, source, distance)` event as it is fixed.
//!
//! cargo run -p graph-knn --example step_through

use graph_knn::{Graph, KnnEngine, Membership};

fn main() {
    let g = Graph::from_edges(4, [(0, 1, 2.0), (1, 2, 2.0), (0, 2, 5.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap();
    let mut engine = KnnEngine::new(&g, 2, Membership::Hashed, g.vertices()).unwrap();

    let mut step = 0;
    while let Some(e) = engine.step() {
        step += 1;
        let full = if engine.is_disabled(e.target) { "  (vertex full)" } else { "" };
        println!("{step:>2}: vertex {} <- source {} at {}{full}", e.target, e.source, e.dist);
    }
    println!("\n{}", engine.stats());
    engine.into_table().write_tsv(std::io::stdout()).unwrap();
}
