//! The four equal-rank counterexample pairs and the control pair.

use rootgeom::catalog::RootSystem;
use rootgeom::counterexample::{
    chamber_index, find_subsystem, find_violation, CounterexampleError, EqualRankPair,
};
use rootgeom::reflect;

fn build_pair(sup: &str, sub: &str) -> EqualRankPair {
    let sup_sys = RootSystem::build(sup.parse().unwrap()).unwrap();
    find_subsystem(&sup_sys, sub.parse().unwrap()).unwrap()
}

const PAPER_PAIRS: [(&str, &str, u128); 4] = [
    ("E7", "A7", 72),
    ("E8", "A8", 1920),
    ("E8", "D8", 135),
    ("F4", "B4", 3),
];

#[test]
fn violations_exist_for_all_four_pairs() {
    for (sup, sub, _) in PAPER_PAIRS {
        let pair = build_pair(sup, sub);
        let cert = find_violation(&pair).unwrap();
        cert.validate(&pair).unwrap();
        // Reflections preserve the ambient system, so the image is an
        // ambient root; a violation means it left the subsystem.
        assert!(pair.sup_system.roots().contains(&cert.image));
        assert!(!pair.sub_roots.contains(&cert.image));
        // Recompute the reflection from scratch as well.
        let image = reflect(&cert.root, &cert.alpha, pair.sup_system.gram()).unwrap();
        assert_eq!(image, cert.image, "{sub} in {sup}");
    }
}

#[test]
fn subsystems_have_the_expected_sizes() {
    for (sup, sub, _) in PAPER_PAIRS {
        let pair = build_pair(sup, sub);
        let expected: rootgeom::SimpleType = sub.parse().unwrap();
        assert_eq!(
            pair.sub_roots.len(),
            expected.root_count(),
            "{sub} in {sup}"
        );
        assert_eq!(pair.sub_simple_roots.len(), expected.rank() as usize);
    }
}

#[test]
fn subsystems_are_reflection_closed_internally() {
    for (sup, sub) in [("E8", "D8"), ("F4", "B4"), ("G2", "A2")] {
        let pair = build_pair(sup, sub);
        let gram = pair.sup_system.gram();
        for r in &pair.sub_roots {
            for s in &pair.sub_roots {
                let image = reflect(s, r, gram).unwrap();
                assert!(pair.sub_roots.contains(&image), "{sub} in {sup}");
            }
        }
    }
}

#[test]
fn chamber_indices_reproduce_the_expected_values() {
    for (sup, sub, expected_index) in PAPER_PAIRS {
        let pair = build_pair(sup, sub);
        let record = chamber_index(&pair).unwrap();
        assert_eq!(record.index, expected_index, "{sub} in {sup}");
        assert!(record.exceeds_bound(), "{sub} in {sup}");
    }
}

#[test]
fn control_pair_a2_in_g2_has_no_violation_and_tight_index() {
    let pair = build_pair("G2", "A2");
    assert!(matches!(
        find_violation(&pair),
        Err(CounterexampleError::NoViolation { .. })
    ));
    let record = chamber_index(&pair).unwrap();
    assert_eq!(record.index, 2);
    assert_eq!(record.dynkin_bound, 2);
    assert!(!record.exceeds_bound());
}

#[test]
fn search_output_is_stable_across_reruns() {
    for (sup, sub, _) in PAPER_PAIRS {
        let first = build_pair(sup, sub);
        let second = build_pair(sup, sub);
        assert_eq!(first.sub_simple_roots, second.sub_simple_roots);
        assert_eq!(first.sub_roots, second.sub_roots);
        let c1 = find_violation(&first).unwrap();
        let c2 = find_violation(&second).unwrap();
        assert_eq!(c1, c2);
    }
}
