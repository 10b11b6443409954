mod common;

use ckaf::graph::{Graph, GraphError, RawEdge};
use proptest::prelude::*;

#[test]
fn fix_a_path_counts() {
    let inst = common::fixture("fix_a");
    let g = &inst.labelled().graph;
    let v1 = g.vertex_id("v1").unwrap();
    let v2 = g.vertex_id("v2").unwrap();
    // From v1: v1, e, then e followed by any word in g1, g2.
    assert_eq!(g.enumerate_paths(v1, 2).len(), 4);
    assert_eq!(g.enumerate_paths(v1, 3).len(), 8);
    assert_eq!(g.paths_of_length(v2, 3).len(), 8);
    assert_eq!(g.paths_ending_at(v2, 1).len(), 4);
    assert!(g.leq(v2, v1));
    assert!(!g.leq(v1, v2));
}

#[test]
fn admissibility_is_enforced() {
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let in_two =
        Graph::validate(v(&["a", "b", "c"]), vec![RawEdge::new("x", "a", "c"), RawEdge::new("y", "b", "c")]).unwrap();
    assert!(ckaf::graph::TreeLoopDecomposition::decompose(&in_two).is_err());
    let cycle =
        Graph::validate(v(&["a", "b"]), vec![RawEdge::new("x", "a", "b"), RawEdge::new("y", "b", "a")]).unwrap();
    assert!(ckaf::graph::TreeLoopDecomposition::decompose(&cycle).is_err());
    assert_eq!(Graph::validate(vec![], vec![]), Err(GraphError::Empty));
    assert_eq!(Graph::validate(v(&["a", "a"]), vec![]), Err(GraphError::DuplicateId("a".into())));
}

proptest! {
    #[test]
    fn paths_compose_and_round_trip(seed in any::<u64>()) {
        let lg = common::random_instance(&mut common::rng(seed), 5);
        let g = &lg.graph;
        for v in g.vertices() {
            let paths = g.enumerate_paths(v, 3);
            for p in &paths {
                prop_assert_eq!(p.source, v);
                prop_assert!(p.len() <= 3);
                let mut at = p.source;
                for &e in &p.edges {
                    prop_assert_eq!(g.source(e), at);
                    at = g.range(e);
                }
                prop_assert_eq!(at, p.range);
                prop_assert_eq!(&g.parse_path(&g.path_name(p)).unwrap(), p);
            }
            let by_len: usize = (0..=3).map(|k| g.paths_of_length(v, k).len()).sum();
            prop_assert_eq!(by_len, paths.len());
        }
    }

    #[test]
    fn paths_into_a_vertex_match_enumeration(seed in any::<u64>()) {
        let lg = common::random_instance(&mut common::rng(seed), 5);
        let g = &lg.graph;
        for w in g.vertices() {
            let mut expected: Vec<_> = g
                .vertices()
                .flat_map(|v| g.enumerate_paths(v, 2))
                .filter(|p| p.range == w)
                .collect();
            expected.sort();
            prop_assert_eq!(g.paths_ending_at(w, 2), expected);
        }
    }

    #[test]
    fn reachability_is_a_preorder(seed in any::<u64>()) {
        let lg = common::random_instance(&mut common::rng(seed), 5);
        let g = &lg.graph;
        let vs: Vec<_> = g.vertices().collect();
        for &a in &vs {
            prop_assert!(g.leq(a, a));
            for &b in &vs {
                for &c in &vs {
                    if g.leq(a, b) && g.leq(b, c) {
                        prop_assert!(g.leq(a, c));
                    }
                }
                if a != b && g.leq(a, b) && g.leq(b, a) {
                    prop_assert!(false, "tree part has a cycle");
                }
            }
        }
    }
}
