//! Writes each generator `s_mu p_i s_nu^*` with legs of length at most one as
//! a sum of matrix units and checks the re-expansion.
//!
//! ```bash
//! cargo run --example embed_generators
//! ```

use ckaf::embedding::{BuildOptions, Construction};
use ckaf::instance::Instance;

fn main() {
    let inst = Instance::parse(include_str!("../fixtures/fix_a.json")).unwrap();
    let lg = inst.labelled();
    let g = &lg.graph;
    let c = Construction::build(lg, inst.window().unwrap(), &BuildOptions::default()).unwrap();
    for v in g.vertices() {
        let legs = g.paths_ending_at(v, 1);
        for mu in &legs {
            for nu in &legs {
                for i in 1..=c.window.size() {
                    let units = c.embed_verified(mu, i, nu).expect("re-expansion matches");
                    let shown: Vec<String> = units
                        .iter()
                        .map(|u| {
                            format!("e[{}; {}, {}]", c.block_name(u.block), g.path_name(&u.alpha), g.path_name(&u.beta))
                        })
                        .collect();
                    println!("s[{}] p_{i} s[{}]^* = {}", g.path_name(mu), g.path_name(nu), shown.join(" + "));
                }
            }
        }
    }
}
