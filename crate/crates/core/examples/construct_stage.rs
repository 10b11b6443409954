//! One stage of the embedding for a single loop labelled 1 and the window
//! {0, 1}: F, E*_F, q and the block set K.
//!
//! ```bash
//! cargo run --example construct_stage
//! ```

use ckaf::embedding::{BuildOptions, Construction};
use ckaf::instance::Instance;

fn main() {
    let inst = Instance::parse(include_str!("../fixtures/fix_b.json")).unwrap();
    let lg = inst.labelled();
    let c = Construction::build(lg, inst.window().unwrap(), &BuildOptions::default()).unwrap();
    let names = |ps: &[ckaf::graph::Path]| ps.iter().map(|p| lg.graph.path_name(p)).collect::<Vec<_>>();
    println!("F = {:?}", names(&c.stage.f));
    println!("m = {}", c.stage.m);
    println!("E*_F = {:?}", names(&c.stage.estar_f));
    println!("q = {}", c.alg.display(&c.q));
    for (b, block) in c.blocks.iter().enumerate() {
        println!("block {} with q_b = {}", c.block_name(b), c.alg.display(&block.projection));
    }
    for cover in &c.covers {
        println!("E*({}) = {:?}", lg.graph.vertex_name(cover.v), names(&cover.paths));
    }
}
