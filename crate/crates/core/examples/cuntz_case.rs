//! Single-vertex graphs (Cuntz case): the monoid criterion against the general
//! decision procedure, over every labelling of two loops in [-2, 2] x Z/2.
//!
//! ```bash
//! cargo run --example cuntz_case
//! ```

use ckaf::group::GroupSpec;
use ckaf::labelled::LabelledGraph;
use ckaf::properness::{cuntz_case_check, is_almost_proper};

fn main() {
    let group = GroupSpec::new(1, vec![2]).unwrap();
    let mut total = 0;
    let mut proper = 0;
    for a in -2..=2 {
        for s in 0..2 {
            for b in -2..=2 {
                for t in 0..2 {
                    let (la, lb) = ([a, s], [b, t]);
                    let lg = LabelledGraph::build(group.clone(), &["v"], &[("x", "v", "v", &la), ("y", "v", "v", &lb)])
                        .unwrap();
                    let monoid = cuntz_case_check(&lg).unwrap();
                    let general = is_almost_proper(&lg).almost_proper;
                    assert_eq!(monoid, general, "labels {la:?} {lb:?}");
                    total += 1;
                    proper += usize::from(general);
                }
            }
        }
    }
    println!("{total} labellings, {proper} almost proper, criteria agree on all");
}
