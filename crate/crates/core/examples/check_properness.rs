//! Decides almost properness for the bundled fixtures and prints the
//! certificate behind each verdict.
//!
//! ```bash
//! cargo run --example check_properness
//! ```

use ckaf::instance::Instance;
use ckaf::properness::{check_necessary_condition, is_almost_proper, ZeroSumCertificate};

const FIXTURES: [(&str, &str); 5] = [
    ("fix_a", include_str!("../fixtures/fix_a.json")),
    ("fix_b", include_str!("../fixtures/fix_b.json")),
    ("fix_c1", include_str!("../fixtures/fix_c1.json")),
    ("fix_c2", include_str!("../fixtures/fix_c2.json")),
    ("forest", include_str!("../fixtures/forest.json")),
];

fn main() {
    for (name, text) in FIXTURES {
        let inst = Instance::parse(text).expect("bundled fixture parses");
        let lg = inst.labelled();
        let verdict = is_almost_proper(lg);
        println!("{name}: almost proper = {}", verdict.almost_proper);
        for w in &verdict.witnesses {
            let loops: Vec<&str> = w.family.loops.iter().map(|&e| lg.graph.edge(e).name.as_str()).collect();
            let labels = w.family.labels(lg);
            assert!(w.certificate.verify(&lg.group, &labels));
            match &w.certificate {
                ZeroSumCertificate::Primal { multiplicities } => {
                    let terms: Vec<String> =
                        loops.iter().zip(multiplicities).map(|(l, m)| format!("{m}*{l}")).collect();
                    println!("  along {}: zero sum {}", lg.graph.path_name(&w.family.path), terms.join(" + "));
                }
                ZeroSumCertificate::Dual { functional } => {
                    println!(
                        "  along {}: functional {:?} is positive on {}",
                        lg.graph.path_name(&w.family.path),
                        functional.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        loops.join(", ")
                    );
                }
            }
        }
        let violations = check_necessary_condition(lg);
        if !violations.is_empty() {
            println!("  {} loop(s) with an exit carry a finite-order label", violations.len());
        }
    }
}
