//! Runs the identity suite on the two-component forest, then again with a
//! deliberately broken q to show which checks catch it.
//!
//! ```bash
//! cargo run --example verify_lemmas
//! ```

use ckaf::embedding::verify::verify_instance;
use ckaf::embedding::{BuildOptions, VerifyOptions};
use ckaf::instance::Instance;

fn main() {
    let inst = Instance::parse(include_str!("../fixtures/forest.json")).unwrap();
    let lg = inst.labelled();
    let opts = VerifyOptions::default();
    for corrupt_q in [false, true] {
        let build = BuildOptions { corrupt_q, ..Default::default() };
        let results = verify_instance(lg, inst.window().unwrap(), &build, &opts).unwrap();
        println!("corrupted q: {corrupt_q}");
        for r in results {
            println!("  {:<30} {:>5} cases  {}", r.name, r.cases, if r.passed { "ok" } else { "FAIL" });
        }
    }
}
