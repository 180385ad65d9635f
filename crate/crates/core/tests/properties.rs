//! Randomised properties of the graph primitives, the decomposition loop,
//! preassignment, subtree classification and the file formats.

mod common;

use arboricity::io::{
    parse_assignment, parse_certificate, parse_graph, write_assignment, write_certificate, write_graph,
};
use arboricity::oracle::{check_condition, verify_certificate, verify_decomposition};
use arboricity::{
    classify_subtrees, components, decompose, is_forest, path_in_forest, preassign, restriction_edge_count, EdgeSubset,
    Graph, SubtreeClass, Verdict, VertexSet,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(n, edges)` with loops and parallel edges allowed.
fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=max_m)))
}

fn loopless(max_n: usize, max_m: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    multigraph(max_n, max_m).prop_map(|(n, edges)| (n, edges.into_iter().filter(|(u, v)| u != v).collect()))
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().copied()).unwrap()
}

/// Direct reading of the classification rules: a part is isolated when no
/// other part shares its tree, and peculiar with witness `e` when `e` leaves
/// the part and deleting it cuts the part off from every other part.
fn classify_by_definition(g: &Graph, t: &EdgeSubset, parts: &[VertexSet]) -> Vec<SubtreeClass> {
    let comps = components(g, t);
    let owner = |v: usize| parts.iter().position(|p| p.contains(v));
    parts
        .iter()
        .enumerate()
        .map(|(p, members)| {
            let root = members.as_slice()[0];
            let alone = (0..g.vertex_count()).all(|v| !comps.same(root, v) || owner(v).is_none_or(|q| q == p));
            if alone {
                return SubtreeClass::Isolated;
            }
            let witness = t.iter().find(|&e| {
                let (x, y) = g.endpoints(e);
                if members.contains(x) == members.contains(y) {
                    return false;
                }
                let mut rest = t.clone();
                rest.remove(e);
                let cut = components(g, &rest);
                (0..g.vertex_count()).all(|v| !cut.same(root, v) || owner(v).is_none_or(|q| q == p))
            });
            witness.map_or(SubtreeClass::Neither, SubtreeClass::Peculiar)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn forest_test_matches_component_count((n, edges) in multigraph(7, 10), mask in any::<u16>()) {
        let g = build(n, &edges);
        let s = EdgeSubset::from_ids(g.edge_count(), (0..g.edge_count()).filter(|&e| mask >> e & 1 == 1));
        let comps = components(&g, &s);
        prop_assert_eq!(is_forest(&g, &s), s.len() + comps.count() == n);
    }

    #[test]
    fn components_partition_the_vertices((n, edges) in multigraph(7, 10)) {
        let g = build(n, &edges);
        let comps = components(&g, &g.all_edges());
        let mut seen = vec![0; n];
        for (k, part) in comps.parts.iter().enumerate() {
            prop_assert!(!part.is_empty());
            for v in part.iter() {
                seen[v] += 1;
                prop_assert_eq!(comps.index[v], k);
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        let minima: Vec<usize> = comps.parts.iter().map(|p| p.min().unwrap()).collect();
        prop_assert!(minima.windows(2).all(|w| w[0] < w[1]));
        for (u, v) in g.edges() {
            prop_assert!(comps.same(u, v));
        }
    }

    #[test]
    fn whole_vertex_set_spans_every_edge((n, edges) in multigraph(7, 10)) {
        let g = build(n, &edges);
        prop_assert_eq!(restriction_edge_count(&g, &g.all_vertices()), g.edge_count());
        prop_assert_eq!(restriction_edge_count(&g, &VertexSet::new()), 0);
    }

    #[test]
    fn forest_paths_are_walks((n, edges) in loopless(7, 10), u in 0usize..7, v in 0usize..7) {
        let g = build(n, &edges);
        let (u, v) = (u % n, v % n);
        let mut forest = EdgeSubset::empty(g.edge_count());
        for e in 0..g.edge_count() {
            forest.insert(e);
            if !is_forest(&g, &forest) {
                forest.remove(e);
            }
        }
        let comps = components(&g, &forest);
        match path_in_forest(&g, &forest, u, v).unwrap() {
            None => prop_assert!(!comps.same(u, v)),
            Some(path) => {
                let mut at = u;
                for &e in &path {
                    prop_assert!(forest.contains(e));
                    at = g.opposite(e, at);
                }
                prop_assert_eq!(at, v);
                prop_assert_eq!(path.iter().collect::<std::collections::HashSet<_>>().len(), path.len());
            }
        }
    }

    #[test]
    fn verdict_agrees_with_exhaustive_check((n, edges) in multigraph(6, 10), r in 0usize..4) {
        let g = build(n, &edges);
        let verdict = decompose(&g, r);
        let condition = check_condition(&g, r, 20).unwrap();
        prop_assert_eq!(verdict.is_feasible(), condition.is_satisfied());
        match &verdict {
            Verdict::Feasible(d) => {
                prop_assert_eq!(d.forests(), r);
                prop_assert!(verify_decomposition(&g, d));
            }
            Verdict::Infeasible(c) => prop_assert!(verify_certificate(&g, r, c.vertices())),
        }
        prop_assert_eq!(decompose(&g, r), verdict);
    }

    #[test]
    fn preassignment_pins_and_stays_valid((n, edges) in loopless(6, 10), r in 1usize..4, picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let g = build(n, &edges);
        let Verdict::Feasible(d) = decompose(&g, r) else { return Ok(()); };
        let m = g.edge_count();
        let mut pins: Vec<usize> = Vec::new();
        if m > 0 {
            for idx in picks.iter().take(r) {
                let e = idx.index(m);
                if !pins.contains(&e) {
                    pins.push(e);
                }
            }
        }
        let out = preassign(&g, &d, &pins).unwrap();
        prop_assert!(verify_decomposition(&g, &out));
        for (k, &e) in pins.iter().enumerate() {
            prop_assert_eq!(out.forest_of(e), k + 1);
        }
    }

    #[test]
    fn classification_matches_definition(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some((g, t, parts)) = common::random_forest_with_parts(&mut rng, n) else { return Ok(()); };
        let labels = classify_subtrees(&g, &t, &parts).unwrap();
        prop_assert_eq!(labels, classify_by_definition(&g, &t, &parts));
    }

    #[test]
    fn graph_text_round_trips((n, edges) in multigraph(8, 12)) {
        let g = build(n, &edges);
        let back = parse_graph(&write_graph(&g)).unwrap();
        prop_assert!(back == g);
    }

    #[test]
    fn artifacts_round_trip((n, edges) in multigraph(6, 10), r in 0usize..4) {
        let g = build(n, &edges);
        match decompose(&g, r) {
            Verdict::Feasible(d) => prop_assert_eq!(parse_assignment(&write_assignment(&d)).unwrap(), d),
            Verdict::Infeasible(c) => prop_assert_eq!(parse_certificate(&write_certificate(&g, &c)).unwrap(), c),
        }
    }
}
