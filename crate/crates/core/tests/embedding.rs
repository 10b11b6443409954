mod common;

use ckaf::embedding::blocks::{block_dimension, compute_k_exhaustive};
use ckaf::embedding::verify::{verify_construction, verify_instance, CHECK_NAMES};
use ckaf::embedding::{BuildOptions, Construction, Dimension, EmbeddingError, VerifyOptions, Window};
use ckaf::properness::is_almost_proper;
use proptest::prelude::*;

fn build(name: &str) -> (ckaf::instance::Instance, Vec<String>) {
    let inst = common::fixture(name);
    let names = {
        let lg = inst.labelled();
        let c = Construction::build(lg, inst.window().unwrap(), &BuildOptions::default()).unwrap();
        c.stage.f.iter().map(|p| lg.graph.path_name(p)).collect()
    };
    (inst, names)
}

#[test]
fn window_sets_f() {
    assert_eq!(build("fix_a").1, ["g1", "g2"]);
    assert_eq!(build("fix_b").1, ["g"]);
    assert_eq!(build("fix_c2").1, ["g2", "g3"]);
    assert_eq!(build("forest").1, ["alpha", "f", "beta", "f.beta"]);
}

#[test]
fn fix_a_cover_and_blocks() {
    let inst = common::fixture("fix_a");
    let lg = inst.labelled();
    let c = Construction::build(lg, inst.window().unwrap(), &BuildOptions::default()).unwrap();
    let v2 = lg.vertex("v2");
    let cover: Vec<String> = c.covers[v2.0].paths.iter().map(|p| lg.graph.path_name(p)).collect();
    assert_eq!(cover, ["v2", "g1", "g2"]);
    assert_eq!(c.blocks.len(), 3);
    assert_eq!(block_dimension(lg, v2).0, Dimension::Infinite);
    assert_eq!(block_dimension(lg, v2).1, [1, 4, 10, 22, 46]);
    assert_eq!(block_dimension(lg, lg.vertex("v1")), (Dimension::Finite(1), vec![1; 5]));
}

#[test]
fn finite_tree_blocks_count_paths() {
    // Empty F, one atom: one block per vertex, of dimension |E^{*,v}|.
    let inst = common::fixture("z3_chain");
    let lg = inst.labelled();
    let w = Window::from_i64s(&lg.group, &[&[0]]).unwrap();
    let c = Construction::build(lg, w, &BuildOptions::default()).unwrap();
    assert!(c.stage.f.is_empty());
    assert!(c.alg.equal(&c.q, &c.p));
    let dims: Vec<Dimension> = c.blocks.iter().map(|b| block_dimension(lg, b.index.v).0).collect();
    assert_eq!(dims, [Dimension::Finite(1), Dimension::Finite(2), Dimension::Finite(3)]);
}

#[test]
fn refuses_not_almost_proper() {
    let inst = common::fixture("fix_c1");
    let err = Construction::build(inst.labelled(), inst.window().unwrap(), &BuildOptions::default()).unwrap_err();
    assert_eq!(err, EmbeddingError::NotAlmostProper);
}

#[test]
fn bad_generators_are_rejected() {
    let inst = common::fixture("fix_a");
    let lg = inst.labelled();
    let c = Construction::build(lg, inst.window().unwrap(), &BuildOptions::default()).unwrap();
    let v1 = lg.path("v1");
    let e = lg.path("e");
    assert!(matches!(c.embed(&v1, 1, &e), Err(EmbeddingError::BadGenerator(_))));
    assert!(matches!(c.embed(&v1, 3, &v1), Err(EmbeddingError::BadGenerator(_))));
    assert!(matches!(c.embed(&v1, 0, &v1), Err(EmbeddingError::BadGenerator(_))));
}

#[test]
fn choice_of_tilde_v_keeps_block_count() {
    let inst = common::fixture("fix_c2");
    let lg = inst.labelled();
    let counts: Vec<usize> = lg
        .graph
        .vertices()
        .map(|v| {
            let opts = BuildOptions { tilde_v: Some(v), ..Default::default() };
            let c = Construction::build(lg, inst.window().unwrap(), &opts).unwrap();
            assert!(verify_construction(&c, &VerifyOptions::with_max_len(2)).iter().all(|r| r.passed));
            c.blocks.len()
        })
        .collect();
    assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
}

#[test]
fn suite_passes_on_fixtures_with_wider_windows() {
    for (name, pts) in [("fix_b", vec![vec![-1], vec![0], vec![2]]), ("fix_a", vec![vec![0], vec![1], vec![2]])] {
        let inst = common::fixture(name);
        let lg = inst.labelled();
        let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        let w = Window::from_i64s(&lg.group, &refs).unwrap();
        let res = verify_instance(lg, w, &BuildOptions::default(), &VerifyOptions::with_max_len(2)).unwrap();
        assert_eq!(res.len(), CHECK_NAMES.len());
        for r in res {
            assert!(r.passed, "{name}: {} {:?}", r.name, r.detail);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_almost_proper_instances_verify(seed in any::<u64>()) {
        let lg = common::random_instance(&mut common::rng(seed), 3);
        prop_assume!(is_almost_proper(&lg).almost_proper);
        let w = Window::new(&lg.group, vec![lg.group.zero()]).unwrap();
        let c = Construction::build(&lg, w, &BuildOptions::default()).unwrap();
        for r in verify_construction(&c, &VerifyOptions::with_max_len(2)) {
            prop_assert!(r.passed, "{} {:?}", r.name, r.detail);
        }
    }

    #[test]
    fn candidate_blocks_equal_exhaustive_blocks(seed in any::<u64>()) {
        let lg = common::random_instance(&mut common::rng(seed), 3);
        prop_assume!(is_almost_proper(&lg).almost_proper && lg.group.free_rank > 0);
        let mut pts = vec![lg.group.zero()];
        let mut one = vec![0i64; lg.group.arity()];
        one[0] = 1;
        pts.push(lg.group.from_i64s(&one).unwrap());
        let w = Window::new(&lg.group, pts).unwrap();
        let c = Construction::build(&lg, w, &BuildOptions::default()).unwrap();
        if let Some(full) = compute_k_exhaustive(&c.alg, &c.window, &c.stage, &c.q, 4096) {
            let fast: Vec<_> = c.blocks.iter().map(|b| b.index.clone()).collect();
            let slow: Vec<_> = full.iter().map(|b| b.index.clone()).collect();
            prop_assert_eq!(fast, slow);
        }
    }
}
