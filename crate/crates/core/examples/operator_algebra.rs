//! Symbolic operators `s_mu f s_nu^*`: products, the covariance rule, the
//! Cuntz-Krieger expansion and the exact zero test.
//!
//! ```bash
//! cargo run --example operator_algebra
//! ```

use ckaf::algebra::{Algebra, GammaSet};
use ckaf::group::GroupSpec;
use ckaf::labelled::LabelledGraph;

fn main() {
    let z = GroupSpec::integers();
    let lg =
        LabelledGraph::build(z.clone(), &["v1", "v2"], &[("e", "v1", "v2", &[2]), ("g", "v2", "v2", &[1])]).unwrap();
    let alg = Algebra::new(&lg);
    let pt = |n: i64| z.from_i64s(&[n]).unwrap();

    // f s_e = s_e sigma_{omega_e}(f): chi_{{2}} s_e = s_e chi_{{0}}.
    let lhs = alg.mul(&alg.chi(&GammaSet::singleton(pt(2))), &alg.edge(lg.edge("e")));
    let rhs = alg.mul(&alg.edge(lg.edge("e")), &alg.chi(&GammaSet::singleton(pt(0))));
    println!("chi{{2}} s_e = {}", alg.display(&lhs));
    assert!(alg.equal(&lhs, &rhs));

    // p_{v2} = s_g s_g^* at the non-sink v2.
    let g = lg.path("g");
    let ck = &alg.vertex(lg.vertex("v2")) - &alg.sandwich(&g, &alg.vertex(lg.vertex("v2")));
    println!("p_v2 - s_g s_g^* = {}  (zero: {})", alg.display(&ck), alg.is_zero(&ck));

    // s_e^* s_e = p_{v2}, and the adjoint of a product reverses it.
    let e = alg.edge(lg.edge("e"));
    let x = alg.mul(&alg.adjoint(&e), &e);
    println!("s_e^* s_e = {}", alg.display(&x));
    let y = alg.mul(&e, &alg.chi(&GammaSet::finite([pt(0), pt(1)])));
    println!("(s_e chi{{0,1}})^* = {}", alg.display(&alg.adjoint(&y)));

    // A normal form at level 2.
    let nf = alg.normal_form(&alg.chi(&GammaSet::singleton(pt(0))), 2).unwrap();
    println!("chi{{0}} expanded to level 2 has {} terms", nf.len());
}
