//! Randomized property suites tying the fast paths to the brute-force
//! oracles.

use proptest::prelude::*;

use capcolor::coloring::{self, Mode};
use capcolor::decomposition::{clique_cutset_decompose, twin_partition};
use capcolor::graph::{Graph, VertexSet};
use capcolor::oracles::{
    check_coloring, exact_clique_number, exact_independence_number, find_cap, find_even_hole,
    is_chordal,
};
use capcolor::{beta_greedy_color, min_degree_last_ordering};

/// Arbitrary graph on up to `max_n` vertices as an edge bitmap.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[idx] {
                        pairs.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::from_edge_list(n, &pairs).unwrap()
        })
    })
}

fn complement(g: &Graph) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.adjacent(u, v) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edge_list(g.n(), &pairs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimacs_roundtrip(g in arb_graph(12)) {
        let text = g.write_dimacs();
        let back = Graph::parse_dimacs(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.write_dimacs(), text);
    }

    #[test]
    fn induced_full_set_is_identity(g in arb_graph(10)) {
        let all: VertexSet = (0..g.n()).collect();
        let sub = g.induced_subgraph(&all).unwrap();
        prop_assert_eq!(&sub.graph, &g);
        prop_assert_eq!(sub.old_of_new, (0..g.n()).collect::<Vec<_>>());
    }

    #[test]
    fn components_partition_vertices(g in arb_graph(12)) {
        let comps = g.connected_components();
        let mut seen = vec![false; g.n()];
        for c in &comps.components {
            for v in c.iter() {
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
        }
        prop_assert!(seen.into_iter().all(|s| s));
        for (u, v) in g.edges() {
            prop_assert_eq!(comps.component_of[u], comps.component_of[v]);
        }
    }

    #[test]
    fn greedy_respects_beta(g in arb_graph(12)) {
        let c = beta_greedy_color(&g);
        prop_assert!(check_coloring(&g, &c).unwrap());
        prop_assert!(c.palette_size <= min_degree_last_ordering(&g).beta_value);
    }

    #[test]
    fn permissive_coloring_always_proper(g in arb_graph(11)) {
        let report = coloring::color(&g, Mode::Permissive).unwrap();
        prop_assert!(check_coloring(&g, &report.coloring).unwrap());
        prop_assert_eq!(report.colors_used, report.coloring.palette_size);
    }

    #[test]
    fn alpha_equals_omega_of_complement(g in arb_graph(10)) {
        let alpha = exact_independence_number(&g).unwrap();
        let omega_c = exact_clique_number(&complement(&g)).unwrap();
        prop_assert_eq!(alpha, omega_c);
    }

    #[test]
    fn chordal_graphs_have_no_even_hole_or_cap(g in arb_graph(9)) {
        if is_chordal(&g).is_some() {
            prop_assert!(find_even_hole(&g, 10_000_000).unwrap().is_none());
            prop_assert!(find_cap(&g, 10_000_000).unwrap().is_none());
        }
    }

    #[test]
    fn twin_classes_match_closed_neighborhoods(g in arb_graph(10)) {
        let tp = twin_partition(&g);
        let closed = |v: usize| {
            let mut nb = g.neighbors(v).to_vec();
            nb.push(v);
            nb.sort_unstable();
            nb
        };
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                prop_assert_eq!(
                    tp.class_of[u] == tp.class_of[v],
                    closed(u) == closed(v),
                    "vertices {} and {}", u, v
                );
            }
        }
    }

    #[test]
    fn decomposition_covers_edges_and_vertices(g in arb_graph(11)) {
        let tree = clique_cutset_decompose(&g);
        prop_assert_eq!(tree.vertex_set(), (0..g.n()).collect::<VertexSet>());
        let leaves = tree.leaves();
        for (u, v) in g.edges() {
            prop_assert!(leaves.iter().any(|a| a.contains(u) && a.contains(v)));
        }
        for (sep, _, _) in tree.internal_nodes() {
            prop_assert!(g.is_clique_set(sep));
        }
    }

    #[test]
    fn witness_validation(g in arb_graph(9)) {
        if let Some(h) = find_even_hole(&g, 10_000_000).unwrap() {
            prop_assert!(h.validate(&g));
            prop_assert_eq!(h.cycle.len() % 2, 0);
        }
        if let Some(c) = find_cap(&g, 10_000_000).unwrap() {
            prop_assert!(c.validate(&g));
        }
    }
}
