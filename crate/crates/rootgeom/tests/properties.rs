//! Property tests for the exact lattice primitives.

use std::collections::BTreeSet;

use proptest::prelude::*;

use rootgeom::lattice::{GramForm, IntegralLattice, QVec};
use rootgeom::oracle::shell_box_enumeration;
use rootgeom::{frac, rat, reflect, Rational};

/// The `B4` weight lattice: `Z^4` extended by the all-halves vector. Its
/// norm-1 shell is the eight unit vectors plus the sixteen half-vectors,
/// confirmed against the independent box enumeration.
#[test]
fn b4_weight_lattice_norm_1_shell() {
    let mut gens: Vec<QVec> = (0..4).map(|i| QVec::unit(4, i)).collect();
    gens.push(QVec::new(vec![frac(1, 2); 4]));
    let lat = IntegralLattice::hnf_basis(&gens, GramForm::identity(4)).unwrap();
    let shell: BTreeSet<QVec> = lat.vectors_of_norm(&rat(1)).unwrap().into_iter().collect();
    let mut expected = BTreeSet::new();
    for i in 0..4 {
        expected.insert(QVec::unit(4, i));
        expected.insert(-&QVec::unit(4, i));
    }
    for signs in 0..16u32 {
        expected.insert(QVec::new(
            (0..4)
                .map(|i| {
                    if signs >> i & 1 == 1 {
                        frac(-1, 2)
                    } else {
                        frac(1, 2)
                    }
                })
                .collect(),
        ));
    }
    assert_eq!(shell.len(), 24);
    assert_eq!(shell, expected);
    let boxed: BTreeSet<QVec> = shell_box_enumeration(&lat, &rat(1)).into_iter().collect();
    assert_eq!(shell, boxed);
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn qvec_strategy(dim: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(rational_strategy(), dim).prop_map(QVec::new)
}

/// Random positive definite Gram matrix `M^T M` from a lower-triangular
/// integer `M` with nonzero diagonal.
fn gram_strategy(dim: usize) -> impl Strategy<Value = GramForm> {
    prop::collection::vec(-2i64..=2, dim * dim).prop_map(move |entries| {
        let m: Vec<Vec<Rational>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match j.cmp(&i) {
                        std::cmp::Ordering::Less => rat(entries[i * dim + j]),
                        std::cmp::Ordering::Equal => rat(entries[i * dim + j].abs() + 1),
                        std::cmp::Ordering::Greater => rat(0),
                    })
                    .collect()
            })
            .collect();
        let rows: Vec<Vec<Rational>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).fold(rat(0), |acc, k| acc + &m[k][i] * &m[k][j]))
                    .collect()
            })
            .collect();
        GramForm::new(rows).expect("M^T M with invertible M is positive definite")
    })
}

/// Random full-rank lattice of the given rank, with a random Gram form.
fn lattice_strategy(rank: usize) -> impl Strategy<Value = IntegralLattice> {
    let basis = prop::collection::vec(-2i64..=2, rank * rank);
    (basis, gram_strategy(rank)).prop_map(move |(entries, gram)| {
        let basis: Vec<QVec> = (0..rank)
            .map(|i| {
                QVec::new(
                    (0..rank)
                        .map(|j| match j.cmp(&i) {
                            std::cmp::Ordering::Less => rat(entries[i * rank + j]),
                            std::cmp::Ordering::Equal => rat(entries[i * rank + j].abs() + 1),
                            std::cmp::Ordering::Greater => rat(0),
                        })
                        .collect(),
                )
            })
            .collect();
        IntegralLattice::from_basis(basis, gram).expect("triangular basis is independent")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_is_symmetric(
        v in qvec_strategy(3),
        w in qvec_strategy(3),
        g in gram_strategy(3),
    ) {
        prop_assert_eq!(g.inner(&v, &w).unwrap(), g.inner(&w, &v).unwrap());
    }

    #[test]
    fn reflection_is_an_involution_and_isometry(
        v in qvec_strategy(3),
        w in qvec_strategy(3),
        root in qvec_strategy(3),
        g in gram_strategy(3),
    ) {
        prop_assume!(!root.is_zero());
        let rv = reflect(&v, &root, &g).unwrap();
        let rw = reflect(&w, &root, &g).unwrap();
        prop_assert_eq!(reflect(&rv, &root, &g).unwrap(), v.clone());
        prop_assert_eq!(g.inner(&rv, &rw).unwrap(), g.inner(&v, &w).unwrap());
    }

    #[test]
    fn hnf_basis_is_idempotent(lat in lattice_strategy(3)) {
        let rebuilt =
            IntegralLattice::hnf_basis(lat.basis(), lat.gram().clone()).unwrap();
        prop_assert_eq!(rebuilt.basis_gram_det(), lat.basis_gram_det());
        for b in lat.basis() {
            prop_assert!(rebuilt.contains(b).unwrap());
        }
        for b in rebuilt.basis() {
            prop_assert!(lat.contains(b).unwrap());
        }
    }
}

proptest! {
    // Shell enumeration is the expensive property; fewer cases suffice.
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shell_matches_box_oracle(
        lat in lattice_strategy(3),
        norm_num in 1i64..=6,
    ) {
        let target = rat(norm_num);
        let mut fast = lat.vectors_of_norm(&target).unwrap();
        let mut slow = shell_box_enumeration(&lat, &target);
        fast.sort();
        slow.sort();
        prop_assert_eq!(&fast, &slow);
        // Closed under negation, and all members of the lattice.
        for v in &fast {
            prop_assert!(fast.binary_search(&-v).is_ok());
            prop_assert!(lat.contains(v).unwrap());
            prop_assert_eq!(lat.gram().norm(v).unwrap(), target.clone());
        }
    }
}
