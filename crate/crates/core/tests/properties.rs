mod common;

use graph_knn::{
    brute_force_knn, knn_all, knn_from_terminals, multi_source_dijkstra, randomized_knn, Graph, Membership,
    NeighborEntry, RunStats,
};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..14).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1u32..5), 0..50)
            .prop_map(move |edges| Graph::from_edges(n, edges.into_iter().map(|(u, v, w)| (u, v, f64::from(w)))).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fast_matches_oracle_in_both_modes(g in arb_graph(), k in 1usize..16) {
        let oracle = brute_force_knn(&g, k, None);
        for mode in [Membership::Hashed, Membership::Bounded] {
            let got = knn_all(&g, k, mode, &mut RunStats::default());
            prop_assert_eq!(&got, &oracle);
        }
        oracle.check_invariants().map_err(TestCaseError::fail)?;
    }

    #[test]
    fn smaller_k_gives_prefixes(g in arb_graph(), k in 1usize..8, extra in 1usize..8) {
        let small = knn_all(&g, k, Membership::Bounded, &mut RunStats::default());
        let big = knn_all(&g, k + extra, Membership::Hashed, &mut RunStats::default());
        for v in g.vertices() {
            prop_assert!(big.row(v).starts_with(small.row(v)));
        }
    }

    #[test]
    fn terminals_match_filtered_oracle(g in arb_graph(), k in 1usize..6, mask in prop::collection::vec(any::<bool>(), 14)) {
        let mut terminals: Vec<usize> = g.vertices().filter(|&v| mask[v]).collect();
        if terminals.is_empty() {
            terminals.push(0);
        }
        let got = knn_from_terminals(&g, k, &terminals, Membership::Hashed, &mut RunStats::default()).unwrap();
        prop_assert_eq!(got, brute_force_knn(&g, k, Some(&terminals)));
    }

    #[test]
    fn reverse_is_an_involution(g in arb_graph()) {
        let mut a: Vec<_> = g.edges().collect();
        let mut b: Vec<_> = g.reverse().reverse().edges().collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        prop_assert_eq!(a, b);
        prop_assert_eq!(g.reverse().edge_count(), g.edge_count());
    }

    #[test]
    fn randomized_is_sound_and_reproducible(g in arb_graph(), k in 1usize..5, seed in any::<u64>()) {
        let a = randomized_knn(&g, k, 3, seed, &mut RunStats::default());
        prop_assert_eq!(&a, &randomized_knn(&g, k, 3, seed, &mut RunStats::default()));
        let truth = brute_force_knn(&g, g.vertex_count(), None);
        for v in g.vertices() {
            for e in a.row(v) {
                prop_assert!(truth.row(v).contains(e), "unsound {:?} at {}", e, v);
            }
        }
    }

    #[test]
    fn multi_source_picks_canonical_nearest(g in arb_graph(), mask in prop::collection::vec(any::<bool>(), 14)) {
        let sources: Vec<usize> = g.vertices().filter(|&v| mask[v]).collect();
        let got = multi_source_dijkstra(&g, &sources, &mut RunStats::default());
        let oracle = if sources.is_empty() {
            None
        } else {
            Some(brute_force_knn(&g, 1, Some(&sources)))
        };
        for v in g.vertices() {
            let expect: Option<NeighborEntry> = oracle.as_ref().and_then(|t| t.row(v).first().copied());
            prop_assert_eq!(got[v], expect);
        }
    }
}

#[test]
fn operation_bounds_on_dense_corpus_graphs() {
    for inst in common::corpus(30) {
        let g = &inst.graph;
        let reach = common::reaching_counts(g);
        for k in common::ks_for(g.vertex_count()) {
            let mut stats = RunStats::default();
            let table = knn_all(g, k, Membership::Hashed, &mut stats);
            assert!(stats.relax_ops <= (k * g.edge_count()) as u64, "{}", inst.name);
            assert!(stats.global_extracts <= (k * g.vertex_count()) as u64);
            assert_eq!(stats.local_extracts, stats.global_extracts);
            for v in g.vertices() {
                assert_eq!(table.row(v).len(), k.min(reach[v]), "{} v={v}", inst.name);
            }
        }
    }
}

#[test]
fn non_integer_weights_match_oracle() {
    // dyadic weights keep every path sum exact
    let g = Graph::from_edges(
        5,
        [(0, 1, 0.5), (1, 2, 0.25), (0, 2, 0.75), (2, 3, 1.125), (3, 4, 0.5), (4, 0, 0.375), (1, 4, 2.0)],
    )
    .unwrap();
    for k in 1..=5 {
        assert_eq!(knn_all(&g, k, Membership::Bounded, &mut RunStats::default()), brute_force_knn(&g, k, None));
    }
}
