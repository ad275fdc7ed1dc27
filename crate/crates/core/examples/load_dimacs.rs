//! Parses a DIMACS shortest-path file and ranks neighbors in both
//! directions: by distance into each vertex and, on the reversed graph, by
//! distance out of it.
//!
//! cargo run -p graph-knn --example load_dimacs [path/to/graph.gr]

use std::fs::File;

use graph_knn::{knn_all, Graph, GraphFormat, Membership, RunStats};

const SAMPLE: &str = "\
c one-way street grid
p sp 4 5
a 1 2 3
a 2 3 3
a 3 4 3
a 4 1 3
a 1 3 5
";

fn main() {
    let graph = match std::env::args().nth(1) {
        Some(path) => Graph::parse(File::open(&path).expect("readable file"), GraphFormat::Dimacs),
        None => Graph::parse(SAMPLE.as_bytes(), GraphFormat::Dimacs),
    };
    let graph = match graph {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    println!("{graph:?}");

    let into = knn_all(&graph, 3, Membership::Hashed, &mut RunStats::default());
    let out_of = knn_all(&graph.reverse(), 3, Membership::Hashed, &mut RunStats::default());
    for v in graph.vertices().take(10) {
        let fmt = |row: &[graph_knn::NeighborEntry]| {
            row.iter().map(|e| format!("{}:{}", e.source, e.distance)).collect::<Vec<_>>().join(" ")
        };
        println!("{v}  from [{}]  to [{}]", fmt(into.row(v)), fmt(out_of.row(v)));
    }
}
