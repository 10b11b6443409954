#![allow(dead_code)]

use std::path::PathBuf;

use ckaf::group::GroupSpec;
use ckaf::instance::Instance;
use ckaf::labelled::LabelledGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIXTURES: [&str; 8] = ["fix_a", "fix_b", "fix_c1", "fix_c2", "forest", "z2_chain", "z3_branches", "z3_chain"];

/// Almost proper fixtures with loops, used for the identity suite.
pub const SUITE: [&str; 4] = ["fix_a", "fix_b", "fix_c2", "forest"];

/// Finite groups, no loops.
pub const FINITE: [&str; 3] = ["z2_chain", "z3_branches", "z3_chain"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Instance {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    Instance::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// A random forest with up to `max_vertices` vertices and some 1-loops,
/// labelled in one of a few small groups.
pub fn random_instance(rng: &mut ChaCha8Rng, max_vertices: usize) -> LabelledGraph {
    let groups = [
        GroupSpec::integers(),
        GroupSpec::new(1, vec![2]).unwrap(),
        GroupSpec::new(2, vec![]).unwrap(),
        GroupSpec::cyclic(3).unwrap(),
    ];
    let group = groups[rng.gen_range(0..groups.len())].clone();
    let n = rng.gen_range(1..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String, String, Vec<i64>)> = Vec::new();
    let label = |rng: &mut ChaCha8Rng| (0..group.arity()).map(|_| rng.gen_range(-2..=2)).collect::<Vec<i64>>();
    for i in 1..n {
        if rng.gen_bool(0.75) {
            let parent = rng.gen_range(0..i);
            edges.push((format!("t{i}"), names[parent].clone(), names[i].clone(), label(rng)));
        }
    }
    for (i, v) in names.iter().enumerate() {
        for j in 0..rng.gen_range(0..=2) {
            edges.push((format!("g{i}_{j}"), v.clone(), v.clone(), label(rng)));
        }
    }
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str, &[i64])> =
        edges.iter().map(|(a, b, c, l)| (a.as_str(), b.as_str(), c.as_str(), l.as_slice())).collect();
    LabelledGraph::build(group, &vs, &es).expect("forest with loops is admissible")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
