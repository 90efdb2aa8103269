//! Independent brute-force reference implementations.
//!
//! Deliberately naive routines used by the test suites to cross-check the
//! fast paths: box enumeration instead of backtracking for lattice shells,
//! a double loop for the root-length equation, breadth-first group closure
//! for Weyl orders, and permutation search for diagram automorphisms. None
//! of them share code with the implementations they check.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::catalog::reflect;
use crate::lattice::{floor_sqrt, GramForm, IntegralLattice, QVec};
use crate::Rational;

/// Every lattice vector of squared length `target`, by scanning the full
/// coefficient box `|c_i| <= floor(sqrt(target * (G^{-1})_{ii}))` given by
/// the inverse of the basis Gram matrix, and filtering exactly.
pub fn shell_box_enumeration(lattice: &IntegralLattice, target: &Rational) -> Vec<QVec> {
    assert!(target.is_positive(), "shell norm must be positive");
    let gram_inv = lattice
        .basis_gram()
        .inverse()
        .expect("basis Gram matrix is invertible");
    let rank = lattice.rank();
    let bounds: Vec<BigInt> = (0..rank)
        .map(|i| floor_sqrt(&(target * gram_inv.at(i, i))))
        .collect();
    let mut out = Vec::new();
    let mut coeff = alloc::vec![BigInt::zero(); rank];
    scan_box(lattice, target, &bounds, 0, &mut coeff, &mut out);
    out
}

fn scan_box(
    lattice: &IntegralLattice,
    target: &Rational,
    bounds: &[BigInt],
    level: usize,
    coeff: &mut Vec<BigInt>,
    out: &mut Vec<QVec>,
) {
    if level == bounds.len() {
        let v = lattice.member(coeff);
        if &lattice.gram().norm(&v).unwrap() == target {
            out.push(v);
        }
        return;
    }
    let mut c = -bounds[level].clone();
    while c <= bounds[level] {
        coeff[level] = c.clone();
        scan_box(lattice, target, bounds, level + 1, coeff, out);
        c += BigInt::one();
    }
    coeff[level] = BigInt::zero();
}

/// All pairs `0 <= k <= n <= n_max` with `(n-k) + k(n-k) = 2(n+1)`, by an
/// exhaustive double loop.
pub fn diophantine_double_loop(n_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 0..=n {
            if (n - k) + k * (n - k) == 2 * (n + 1) {
                out.push((k, n));
            }
        }
    }
    out
}

/// Order of the group generated by the reflections in the given simple
/// roots, by breadth-first closure. Elements are represented by their
/// images of the simple roots. Panics if the closure exceeds `cap`.
pub fn reflection_group_order(simple_roots: &[QVec], gram: &GramForm, cap: usize) -> u128 {
    let identity: Vec<QVec> = simple_roots.to_vec();
    let mut seen: BTreeSet<Vec<QVec>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = alloc::vec![identity];
    while let Some(element) = frontier.pop() {
        for generator in simple_roots {
            let next: Vec<QVec> = element
                .iter()
                .map(|v| reflect(v, generator, gram).unwrap())
                .collect();
            if seen.insert(next.clone()) {
                assert!(seen.len() <= cap, "reflection group exceeded cap {cap}");
                frontier.push(next);
            }
        }
    }
    seen.len() as u128
}

/// Number of permutations of the nodes preserving a Cartan matrix.
pub fn dynkin_automorphism_count(cartan: &[Vec<i64>]) -> u64 {
    let n = cartan.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    permute(&mut perm, 0, cartan, &mut count);
    count
}

fn permute(perm: &mut Vec<usize>, k: usize, cartan: &[Vec<i64>], count: &mut u64) {
    let n = perm.len();
    if k == n {
        let preserves = (0..n).all(|i| (0..n).all(|j| cartan[perm[i]][perm[j]] == cartan[i][j]));
        if preserves {
            *count += 1;
        }
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, cartan, count);
        perm.swap(k, i);
    }
}

/// Deterministic xorshift generator for reproducible randomized tests.
#[derive(Debug, Clone)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        XorShift64 { state: seed.max(1) }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    /// Uniform-ish integer in `[lo, hi]`.
    pub fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// Random full-rank lower-triangular integer basis in dimension `dim`,
/// entries bounded, diagonal nonzero. Useful as a reproducible source of
/// valid lattices.
pub fn random_triangular_basis(rng: &mut XorShift64, dim: usize) -> Vec<QVec> {
    (0..dim)
        .map(|i| {
            let coords: Vec<Rational> = (0..dim)
                .map(|j| {
                    if j > i {
                        crate::rat(0)
                    } else if j == i {
                        crate::rat(rng.in_range(1, 2))
                    } else {
                        crate::rat(rng.in_range(-2, 2))
                    }
                })
                .collect();
            QVec::new(coords)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::standard_cartan;
    use crate::rat;

    #[test]
    fn box_enumeration_z2() {
        let lat = IntegralLattice::from_basis(
            alloc::vec![QVec::from_ints(&[1, 0]), QVec::from_ints(&[0, 1])],
            GramForm::identity(2),
        )
        .unwrap();
        let mut shell = shell_box_enumeration(&lat, &rat(1));
        shell.sort();
        assert_eq!(shell.len(), 4);
    }

    #[test]
    fn double_loop_matches_known_solutions() {
        assert_eq!(
            diophantine_double_loop(100),
            alloc::vec![(3, 7), (2, 8), (5, 8)]
        );
    }

    #[test]
    fn a2_reflection_group() {
        let sys = crate::catalog::RootSystem::build("A2".parse().unwrap()).unwrap();
        assert_eq!(
            reflection_group_order(sys.simple_roots(), sys.gram(), 100),
            6
        );
    }

    #[test]
    fn dynkin_counts() {
        assert_eq!(
            dynkin_automorphism_count(&standard_cartan("D4".parse().unwrap())),
            6
        );
        assert_eq!(
            dynkin_automorphism_count(&standard_cartan("A2".parse().unwrap())),
            2
        );
        assert_eq!(
            dynkin_automorphism_count(&standard_cartan("B4".parse().unwrap())),
            1
        );
    }
}
