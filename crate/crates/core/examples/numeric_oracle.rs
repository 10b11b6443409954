//! Cross-checks the symbolic zero test against exact sparse matrices on a
//! finite group, where the representation is finite dimensional.
//!
//! ```bash
//! cargo run --example numeric_oracle
//! ```

use ckaf::algebra::oracle::{cross_check, MatrixRep};
use ckaf::instance::Instance;

fn main() {
    for (name, text) in [
        ("z2_chain", include_str!("../fixtures/z2_chain.json")),
        ("z3_branches", include_str!("../fixtures/z3_branches.json")),
        ("z3_chain", include_str!("../fixtures/z3_chain.json")),
    ] {
        let inst = Instance::parse(text).unwrap();
        let lg = inst.labelled();
        let dim = MatrixRep::new(lg).unwrap().dim();
        let r = cross_check(lg, 200, 7).unwrap();
        println!(
            "{name}: dimension {dim}, {} expressions, {} zero, disagreements {}, mismatches {}",
            r.cases, r.symbolic_zero, r.zero_test_disagreements, r.representation_mismatches
        );
        assert!(r.passed());
    }
}
