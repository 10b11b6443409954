mod common;

use ckaf::group::{GroupElement, GroupSpec};
use ckaf::labelled::LabelledGraph;
use ckaf::properness::{
    brute_force_zero_sum, check_necessary_condition, cuntz_case_check, is_almost_proper, zero_sum_certificate,
    ZeroSumCertificate,
};
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn fix_c1_zero_sum_is_one_of_each() {
    let inst = common::fixture("fix_c1");
    let v = is_almost_proper(inst.labelled());
    assert!(!v.almost_proper);
    let w = v.obstruction().unwrap();
    assert_eq!(
        w.certificate,
        ZeroSumCertificate::Primal { multiplicities: vec![BigUint::from(1u8), BigUint::from(1u8)] }
    );
}

#[test]
fn fixtures_with_separated_loops_are_almost_proper() {
    for name in common::SUITE {
        assert!(is_almost_proper(common::fixture(name).labelled()).almost_proper, "{name}");
    }
}

#[test]
fn torsion_loop_with_exit_violates_necessity() {
    let g = GroupSpec::new(1, vec![2]).unwrap();
    let lg = LabelledGraph::build(g, &["a", "b"], &[("t", "a", "b", &[0, 0]), ("x", "a", "a", &[0, 1])]).unwrap();
    assert_eq!(check_necessary_condition(&lg).len(), 1);
    assert!(!is_almost_proper(&lg).almost_proper);
}

fn elems(g: &GroupSpec, raw: &[Vec<i64>]) -> Vec<GroupElement> {
    raw.iter().map(|c| g.from_i64s(c).unwrap()).collect()
}

proptest! {
    #[test]
    fn certificate_agrees_with_brute_force_in_z(raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 1), 1..=3)) {
        let g = GroupSpec::integers();
        let labels = elems(&g, &raw);
        let cert = zero_sum_certificate(&g, &labels).unwrap();
        prop_assert!(cert.verify(&g, &labels));
        prop_assert_eq!(cert.is_primal(), brute_force_zero_sum(&g, &labels, 12).is_some());
    }

    #[test]
    fn certificate_agrees_with_brute_force_in_z2_plus_torsion(
        raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=3)
    ) {
        let g = GroupSpec::new(2, vec![2]).unwrap();
        let labels = elems(&g, &raw);
        let cert = zero_sum_certificate(&g, &labels).unwrap();
        prop_assert!(cert.verify(&g, &labels));
        // Cramer's rule bounds a minimal free solution by 8 per loop; doubling
        // clears the torsion part, so 48 in total suffices.
        prop_assert_eq!(cert.is_primal(), brute_force_zero_sum(&g, &labels, 48).is_some());
    }

    #[test]
    fn cuntz_criterion_matches(raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 1), 1..=3)) {
        let g = GroupSpec::integers();
        let names: Vec<String> = (0..raw.len()).map(|i| format!("x{i}")).collect();
        let edges: Vec<(&str, &str, &str, &[i64])> =
            names.iter().zip(&raw).map(|(n, l)| (n.as_str(), "v", "v", l.as_slice())).collect();
        let lg = LabelledGraph::build(g, &["v"], &edges).unwrap();
        prop_assert_eq!(cuntz_case_check(&lg).unwrap(), is_almost_proper(&lg).almost_proper);
    }

    #[test]
    fn verdict_is_invariant_under_loop_order(raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 1), 2..=3)) {
        let g = GroupSpec::integers();
        let mut rev = raw.clone();
        rev.reverse();
        let a = zero_sum_certificate(&g, &elems(&g, &raw)).unwrap().is_primal();
        let b = zero_sum_certificate(&g, &elems(&g, &rev)).unwrap().is_primal();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn almost_proper_implies_no_violations(seed in any::<u64>()) {
        let lg = common::random_instance(&mut common::rng(seed), 5);
        let verdict = is_almost_proper(&lg);
        for w in &verdict.witnesses {
            prop_assert!(w.certificate.verify(&lg.group, &w.family.labels(&lg)));
        }
        if verdict.almost_proper {
            prop_assert!(check_necessary_condition(&lg).is_empty());
        }
    }
}
