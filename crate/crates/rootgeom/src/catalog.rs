//! Catalog of the simple root systems with their weight lattices.
//!
//! Each type is built in fixed coordinates and normalizations:
//!
//! * `A_n` lives in its own rank-`n` coordinate lattice `Z e_1 + … + Z e_n`
//!   with the non-Euclidean Gram matrix `n/(n+1)` on the diagonal and
//!   `-1/(n+1)` off it, so that all roots `e_i - e_j` (indices up to `n+1`,
//!   with `e_{n+1} = -(e_1 + … + e_n)`) have squared length 2.
//! * `B_n`, `C_n`, `D_n`, `F_4` live in Euclidean `R^n` with the classical
//!   root sets and weight lattices.
//! * `E_8` is the even coordinate-system lattice in `R^8`; its roots are the
//!   240 lattice vectors of squared length 2. `E_7` and `E_6` are carved out
//!   of `E_8` by orthogonal projection along one (resp. two) roots.
//! * `G_2` uses the simple roots themselves as coordinates, with short roots
//!   of squared length 2 and long roots of squared length 6.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;
use core::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::{GramForm, IntegralLattice, LatticeError, QVec};
use crate::matrix::QMat;
use crate::{frac, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("inadmissible type {family}{rank}")]
    InadmissibleRank { family: Family, rank: u32 },
    #[error("cannot parse '{0}' as a simple type (expected e.g. A7, E8)")]
    ParseType(String),
    #[error("{0} is not built by projection (only E6 and E7 are)")]
    NotProjected(SimpleType),
    #[error("norm-2 shell of the projected lattice disagrees with the projected roots for {0}")]
    ProjectionShellMismatch(SimpleType),
    #[error("reflection in the zero vector")]
    ZeroRoot,
    #[error("Cartan entry at ({i},{j}) is not an integer: {value}")]
    NonIntegralCartanEntry { i: usize, j: usize, value: String },
    #[error("simple roots are not linearly independent")]
    DependentSimpleRoots,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// The seven Cartan–Killing families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A simple Lie type with an admissible rank:
/// `A_n (n>=1)`, `B_n (n>=2)`, `C_n (n>=3)`, `D_n (n>=4)`,
/// `E_6`, `E_7`, `E_8`, `F_4`, `G_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    family: Family,
    rank: u32,
}

impl SimpleType {
    pub fn new(family: Family, rank: u32) -> Result<Self, CatalogError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(CatalogError::InadmissibleRank { family, rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    /// Number of roots of the type.
    pub fn root_count(self) -> usize {
        let n = self.rank as usize;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match self.rank {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u128 {
        fn factorial(n: u32) -> u128 {
            (1..=n as u128).product()
        }
        let n = self.rank;
        match self.family {
            Family::A => factorial(n + 1),
            Family::B | Family::C => (1u128 << n) * factorial(n),
            Family::D => (1u128 << (n - 1)) * factorial(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Order of the automorphism group of the Dynkin diagram.
    pub fn dynkin_automorphism_order(self) -> u64 {
        match (self.family, self.rank) {
            (Family::A, 1) => 1,
            (Family::A, _) => 2,
            (Family::B | Family::C, _) => 1,
            (Family::D, 4) => 6,
            (Family::D, _) => 2,
            (Family::E, 6) => 2,
            _ => 1,
        }
    }

    /// All admissible types of rank at most `max_rank` in the A–D families,
    /// plus the five exceptional types, in canonical order.
    pub fn all_up_to_rank(max_rank: u32) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for f in [Family::A, Family::B, Family::C, Family::D] {
            for n in 1..=max_rank {
                if let Ok(t) = SimpleType::new(f, n) {
                    out.push(t);
                }
            }
        }
        for (f, n) in [
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            out.push(SimpleType::new(f, n).unwrap());
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CatalogError::ParseType(String::from(s));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(err()),
        };
        let rank: u32 = chars.as_str().parse().map_err(|_| err())?;
        SimpleType::new(family, rank).map_err(|_| err())
    }
}

/// A simple root system in explicit coordinates: root set, simple roots,
/// and the weight lattice, all under one ambient Gram form.
#[derive(Debug, Clone)]
pub struct RootSystem {
    simple_type: SimpleType,
    gram: GramForm,
    roots: BTreeSet<QVec>,
    simple_roots: Vec<QVec>,
    weight_lattice: IntegralLattice,
}

impl RootSystem {
    /// Builds the root system of an admissible simple type.
    pub fn build(t: SimpleType) -> Result<RootSystem, CatalogError> {
        let sys = match t.family() {
            Family::A => build_a(t.rank() as usize),
            Family::B => build_b(t.rank() as usize),
            Family::C => build_c(t.rank() as usize),
            Family::D => build_d(t.rank() as usize),
            Family::E => match t.rank() {
                8 => build_e8(),
                _ => return RootSystem::build_e_projection(t),
            },
            Family::F => build_f4(),
            Family::G => build_g2(),
        }?;
        sys.check_consistency()?;
        Ok(sys)
    }

    /// Builds `E_7` or `E_6` by orthogonal projection of the `E_8` lattice
    /// along one (resp. two) chosen roots. Verifies internally that the
    /// norm-2 shell of the projected lattice equals the set of `E_8` roots
    /// lying in the projection plane, and fails if they differ.
    pub fn build_e_projection(t: SimpleType) -> Result<RootSystem, CatalogError> {
        if t.family() != Family::E || t.rank() == 8 {
            return Err(CatalogError::NotProjected(t));
        }
        let e8 = build_e8()?;
        let e1 = QVec::unit(8, 0);
        let e2 = QVec::unit(8, 1);
        let e3 = QVec::unit(8, 2);
        let mut axes = vec![&e1 - &e2];
        if t.rank() == 6 {
            axes.push(&e2 - &e3);
        }
        let sys = project_from_e8(t, &e8, &axes)?;
        sys.check_consistency()?;
        Ok(sys)
    }

    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn ambient_dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &GramForm {
        &self.gram
    }

    pub fn roots(&self) -> &BTreeSet<QVec> {
        &self.roots
    }

    pub fn simple_roots(&self) -> &[QVec] {
        &self.simple_roots
    }

    pub fn weight_lattice(&self) -> &IntegralLattice {
        &self.weight_lattice
    }

    /// Distinct squared root lengths, ascending.
    pub fn root_norms(&self) -> Vec<Rational> {
        let mut norms: Vec<Rational> = Vec::new();
        for r in &self.roots {
            let n = self.gram.norm(r).unwrap();
            if !norms.contains(&n) {
                norms.push(n);
            }
        }
        norms.sort();
        norms
    }

    /// Number of roots of the given squared length.
    pub fn roots_of_norm(&self, norm: &Rational) -> usize {
        self.roots
            .iter()
            .filter(|r| &self.gram.norm(r).unwrap() == norm)
            .count()
    }

    /// Cartan matrix of the stored simple roots.
    pub fn cartan(&self) -> Result<Vec<Vec<i64>>, CatalogError> {
        cartan_matrix(&self.simple_roots, &self.gram)
    }

    /// Index of the root lattice inside the weight lattice, computed as the
    /// covolume ratio (its square is the ratio of basis-Gram determinants).
    pub fn fundamental_index(&self) -> Result<u64, CatalogError> {
        let root_gens: Vec<QVec> = self.roots.iter().cloned().collect();
        let root_lattice = IntegralLattice::hnf_basis(&root_gens, self.gram.clone())?;
        let ratio = root_lattice.basis_gram_det() / self.weight_lattice.basis_gram_det();
        if !ratio.is_integer() {
            return Err(CatalogError::Internal(String::from(
                "covolume ratio is not an integer",
            )));
        }
        let sq = ratio.to_integer();
        let idx = sq.sqrt();
        if &idx * &idx != sq {
            return Err(CatalogError::Internal(String::from(
                "squared covolume ratio is not a perfect square",
            )));
        }
        idx.to_u64()
            .ok_or_else(|| CatalogError::Internal(String::from("index overflow")))
    }

    /// Invariants every built system must satisfy.
    fn check_consistency(&self) -> Result<(), CatalogError> {
        let t = self.simple_type;
        let fail = |msg: &str| Err(CatalogError::Internal(alloc::format!("{t}: {msg}")));
        if self.roots.len() != t.root_count() {
            return fail("root count mismatch");
        }
        if self.simple_roots.len() != t.rank() as usize {
            return fail("simple root count mismatch");
        }
        for r in &self.roots {
            if !self.weight_lattice.contains(r)? {
                return fail("root outside the weight lattice");
            }
            if !self.roots.contains(&-r) {
                return fail("roots not closed under negation");
            }
        }
        for s in &self.simple_roots {
            if !self.roots.contains(s) {
                return fail("simple root is not a root");
            }
        }
        if self.cartan()? != standard_cartan(t) {
            return fail("Cartan matrix does not match the type");
        }
        Ok(())
    }
}

/// Reflection of `v` in the hyperplane orthogonal to `root`:
/// `v - (2<v,root>/<root,root>) root`. An involution and an isometry.
pub fn reflect(v: &QVec, root: &QVec, gram: &GramForm) -> Result<QVec, CatalogError> {
    if root.is_zero() {
        return Err(CatalogError::ZeroRoot);
    }
    let num = gram.inner(v, root)?;
    let den = gram.norm(root)?;
    let coeff = rat(2) * num / den;
    Ok(v - &root.scale(&coeff))
}

/// Cartan matrix `C[i][j] = 2<a_i,a_j>/<a_j,a_j>` of a list of simple roots.
/// Fails if the roots are dependent or any entry is non-integral.
pub fn cartan_matrix(
    simple_roots: &[QVec],
    gram: &GramForm,
) -> Result<Vec<Vec<i64>>, CatalogError> {
    for r in simple_roots {
        if r.is_zero() {
            return Err(CatalogError::ZeroRoot);
        }
    }
    let rows: Vec<Vec<Rational>> = simple_roots.iter().map(|r| r.coords().to_vec()).collect();
    if QMat::from_rows(&rows).rank() != simple_roots.len() {
        return Err(CatalogError::DependentSimpleRoots);
    }
    let n = simple_roots.len();
    let mut c = vec![vec![0i64; n]; n];
    for j in 0..n {
        let den = gram.norm(&simple_roots[j])?;
        for (i, row) in c.iter_mut().enumerate() {
            let val = rat(2) * gram.inner(&simple_roots[i], &simple_roots[j])? / &den;
            if !val.is_integer() {
                return Err(CatalogError::NonIntegralCartanEntry {
                    i,
                    j,
                    value: alloc::format!("{val}"),
                });
            }
            row[j] = val.to_integer().to_i64().expect("small Cartan entry");
        }
    }
    Ok(c)
}

/// The standard (Bourbaki-ordered) Cartan matrix of a simple type, with the
/// convention `C[i][j] = 2<a_i,a_j>/<a_j,a_j>`.
pub fn standard_cartan(t: SimpleType) -> Vec<Vec<i64>> {
    let n = t.rank() as usize;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    fn edge(c: &mut [Vec<i64>], i: usize, j: usize) {
        c[i][j] = -1;
        c[j][i] = -1;
    }
    match t.family() {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                edge(&mut c, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                edge(&mut c, i, i + 1);
            }
            // Last simple root is short: the arrow doubles one entry.
            c[n - 2][n - 1] = -2;
        }
        Family::C => {
            for i in 0..n - 1 {
                edge(&mut c, i, i + 1);
            }
            c[n - 1][n - 2] = -2;
        }
        Family::D => {
            for i in 0..n - 2 {
                edge(&mut c, i, i + 1);
            }
            edge(&mut c, n - 3, n - 1);
        }
        Family::E => {
            // Chain 1-3-4-5-…-n with node 2 attached to node 4 (1-indexed).
            edge(&mut c, 0, 2);
            for i in 2..n - 1 {
                edge(&mut c, i, i + 1);
            }
            edge(&mut c, 1, 3);
        }
        Family::F => {
            edge(&mut c, 0, 1);
            edge(&mut c, 1, 2);
            edge(&mut c, 2, 3);
            c[1][2] = -2;
        }
        Family::G => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    c
}

fn half() -> Rational {
    frac(1, 2)
}

/// `(e_1 + … + e_n)/2`.
fn half_sum(dim: usize) -> QVec {
    QVec::new(vec![half(); dim])
}

fn units(dim: usize) -> Vec<QVec> {
    (0..dim).map(|i| QVec::unit(dim, i)).collect()
}

fn build_a(n: usize) -> Result<RootSystem, CatalogError> {
    let gram = GramForm::new(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            frac(n as i64, n as i64 + 1)
                        } else {
                            frac(-1, n as i64 + 1)
                        }
                    })
                    .collect()
            })
            .collect(),
    )?;
    // e_1, …, e_n are the lattice basis; e_{n+1} = -(e_1 + … + e_n).
    let mut e = units(n);
    e.push(QVec::new(vec![rat(-1); n]));
    let mut roots = BTreeSet::new();
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                roots.insert(&e[i] - &e[j]);
            }
        }
    }
    let simple_roots: Vec<QVec> = (0..n).map(|i| &e[i] - &e[i + 1]).collect();
    let weight_lattice = IntegralLattice::hnf_basis(&units(n), gram.clone())?;
    Ok(RootSystem {
        simple_type: SimpleType::new(Family::A, n as u32).unwrap(),
        gram,
        roots,
        simple_roots,
        weight_lattice,
    })
}

/// `{±e_i ± e_j : i < j}`.
fn pair_roots(n: usize) -> BTreeSet<QVec> {
    let e = units(n);
    let mut roots = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                roots.insert(&e[i].scale(&rat(si)) + &e[j].scale(&rat(sj)));
            }
        }
    }
    roots
}

fn build_b(n: usize) -> Result<RootSystem, CatalogError> {
    let gram = GramForm::identity(n);
    let e = units(n);
    let mut roots = pair_roots(n);
    for v in &e {
        roots.insert(v.clone());
        roots.insert(-v);
    }
    let mut simple_roots: Vec<QVec> = (0..n - 1).map(|i| &e[i] - &e[i + 1]).collect();
    simple_roots.push(e[n - 1].clone());
    let mut gens = units(n);
    gens.push(half_sum(n));
    let weight_lattice = IntegralLattice::hnf_basis(&gens, gram.clone())?;
    Ok(RootSystem {
        simple_type: SimpleType::new(Family::B, n as u32).unwrap(),
        gram,
        roots,
        simple_roots,
        weight_lattice,
    })
}

fn build_c(n: usize) -> Result<RootSystem, CatalogError> {
    let gram = GramForm::identity(n);
    let e = units(n);
    let mut roots = pair_roots(n);
    for v in &e {
        roots.insert(v.scale(&rat(2)));
        roots.insert(v.scale(&rat(-2)));
    }
    let mut simple_roots: Vec<QVec> = (0..n - 1).map(|i| &e[i] - &e[i + 1]).collect();
    simple_roots.push(e[n - 1].scale(&rat(2)));
    let weight_lattice = IntegralLattice::hnf_basis(&units(n), gram.clone())?;
    Ok(RootSystem {
        simple_type: SimpleType::new(Family::C, n as u32).unwrap(),
        gram,
        roots,
        simple_roots,
        weight_lattice,
    })
}

fn build_d(n: usize) -> Result<RootSystem, CatalogError> {
    let gram = GramForm::identity(n);
    let e = units(n);
    let roots = pair_roots(n);
    let mut simple_roots: Vec<QVec> = (0..n - 1).map(|i| &e[i] - &e[i + 1]).collect();
    simple_roots.push(&e[n - 2] + &e[n - 1]);
    let mut gens = units(n);
    gens.push(half_sum(n));
    let weight_lattice = IntegralLattice::hnf_basis(&gens, gram.clone())?;
    Ok(RootSystem {
        simple_type: SimpleType::new(Family::D, n as u32).unwrap(),
        gram,
        roots,
        simple_roots,
        weight_lattice,
    })
}

fn build_e8() -> Result<RootSystem, CatalogError> {
    let gram = GramForm::identity(8);
    let e = units(8);
    // Generators of the even coordinate-system lattice: the even-sum integer
    // vectors together with the all-halves vector.
    let mut gens: Vec<QVec> = (0..7).map(|i| &e[i] - &e[i + 1]).collect();
    gens.push(&e[6] + &e[7]);
    gens.push(half_sum(8));
    let weight_lattice = IntegralLattice::hnf_basis(&gens, gram.clone())?;
    // The roots are exactly the 240 lattice vectors of squared length 2.
    let roots: BTreeSet<QVec> = weight_lattice
        .vectors_of_norm(&rat(2))?
        .into_iter()
        .collect();
    let mut a1 = vec![half(); 8];
    for c in a1.iter_mut().take(7).skip(1) {
        *c = -half();
    }
    let mut simple_roots = vec![QVec::new(a1), &e[0] + &e[1]];
    simple_roots.extend((0..6).map(|i| &e[i + 1] - &e[i]));
    Ok(RootSystem {
        simple_type: SimpleType::new(Family::E, 8).unwrap(),
        gram,
        roots,
        simple_roots,
        weight_lattice,
    })
}

fn build_f4() -> Result<RootSystem, CatalogError> {
    let gram = GramForm::identity(4);
    let e = units(4);
    let mut roots = pair_roots(4);
    for v in &e {
        roots.insert(v.clone());
        roots.insert(-v);
    }
    for signs in 0..16u32 {
        let coords = (0..4)
            .map(|i| if signs >> i & 1 == 1 { -half() } else { half() })
            .collect();
        roots.insert(QVec::new(coords));
    }
    let simple_roots = vec![
        &e[1] - &e[2],
        &e[2] - &e[3],
        e[3].clone(),
        QVec::new(vec![half(), -half(), -half(), -half()]),
    ];
    let mut gens = units(4);
    gens.push(half_sum(4));
    let weight_lattice = IntegralLattice::hnf_basis(&gens, gram.clone())?;
    Ok(RootSystem {
        simple_type: SimpleType::new(Family::F, 4).unwrap(),
        gram,
        roots,
        simple_roots,
        weight_lattice,
    })
}

fn build_g2() -> Result<RootSystem, CatalogError> {
    // Coordinates are the simple roots themselves: a short root `a` of
    // squared length 2 and a long root `b` of squared length 6 at 150 deg.
    let gram = GramForm::new(vec![vec![rat(2), rat(-3)], vec![rat(-3), rat(6)]])?;
    let positive: Vec<QVec> = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
        .iter()
        .map(|&(x, y)| QVec::from_ints(&[x, y]))
        .collect();
    let mut roots = BTreeSet::new();
    for r in &positive {
        roots.insert(r.clone());
        roots.insert(-r);
    }
    let simple_roots = vec![QVec::from_ints(&[1, 0]), QVec::from_ints(&[0, 1])];
    // The weight lattice of G2 equals the root lattice.
    let weight_lattice = IntegralLattice::hnf_basis(&simple_roots, gram.clone())?;
    Ok(RootSystem {
        simple_type: SimpleType::new(Family::G, 2).unwrap(),
        gram,
        roots,
        simple_roots,
        weight_lattice,
    })
}

/// Orthogonal projection of `v` onto the complement of `span(axes)`.
/// The axes need not be mutually orthogonal; they are Gram–Schmidt
/// orthogonalized first (exactly).
fn project_away(v: &QVec, axes: &[QVec], gram: &GramForm) -> Result<QVec, LatticeError> {
    let mut ortho: Vec<QVec> = Vec::with_capacity(axes.len());
    for a in axes {
        let mut u = a.clone();
        for o in &ortho {
            let c = gram.inner(&u, o)? / gram.norm(o)?;
            u = &u - &o.scale(&c);
        }
        ortho.push(u);
    }
    let mut w = v.clone();
    for o in &ortho {
        let c = gram.inner(&w, o)? / gram.norm(o)?;
        w = &w - &o.scale(&c);
    }
    Ok(w)
}

fn project_from_e8(
    t: SimpleType,
    e8: &RootSystem,
    axes: &[QVec],
) -> Result<RootSystem, CatalogError> {
    let gram = e8.gram().clone();
    // Project the canonical basis of the E8 lattice; the integer span of the
    // images is the weight lattice of the projected type.
    let projected: Vec<QVec> = e8
        .weight_lattice()
        .basis()
        .iter()
        .map(|b| project_away(b, axes, &gram))
        .collect::<Result<_, _>>()?;
    let weight_lattice = IntegralLattice::hnf_basis(&projected, gram.clone())?;
    if weight_lattice.rank() != t.rank() as usize {
        return Err(CatalogError::Internal(alloc::format!(
            "{t}: projected lattice has rank {}",
            weight_lattice.rank()
        )));
    }
    // Roots: the E8 roots lying in the projection plane.
    let mut roots = BTreeSet::new();
    for r in e8.roots() {
        let orthogonal = axes
            .iter()
            .map(|a| gram.inner(r, a))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .all(Rational::is_zero);
        if orthogonal {
            roots.insert(r.clone());
        }
    }
    // The norm-2 shell of the projected lattice must consist of those roots
    // and nothing else; anything different contradicts the construction.
    let shell: BTreeSet<QVec> = weight_lattice
        .vectors_of_norm(&rat(2))?
        .into_iter()
        .collect();
    if shell != roots {
        return Err(CatalogError::ProjectionShellMismatch(t));
    }
    let simple_roots = extract_simple_roots(&roots, &gram, t)?;
    Ok(RootSystem {
        simple_type: t,
        gram,
        roots,
        simple_roots,
        weight_lattice,
    })
}

/// First nonzero coordinate positive: a linear positivity convention, used
/// to pick one system of positive roots deterministically.
fn lex_positive(v: &QVec) -> bool {
    v.coords()
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_positive())
}

/// Extracts simple roots of `roots` (the indecomposable positive roots for
/// the lexicographic positivity), then reorders them to match the standard
/// Cartan matrix of `t`.
fn extract_simple_roots(
    roots: &BTreeSet<QVec>,
    gram: &GramForm,
    t: SimpleType,
) -> Result<Vec<QVec>, CatalogError> {
    let positive: BTreeSet<QVec> = roots.iter().filter(|r| lex_positive(r)).cloned().collect();
    let simple: Vec<QVec> = positive
        .iter()
        .filter(|r| {
            // r is simple iff it is not the sum of two positive roots.
            !positive
                .iter()
                .any(|s| s != *r && positive.contains(&(*r - s)))
        })
        .cloned()
        .collect();
    if simple.len() != t.rank() as usize {
        return Err(CatalogError::Internal(alloc::format!(
            "{t}: found {} indecomposable positive roots",
            simple.len()
        )));
    }
    let cartan = cartan_matrix(&simple, gram)?;
    let target = standard_cartan(t);
    let n = simple.len();
    // Backtracking search for an ordering that realizes the standard matrix.
    fn assign(
        cartan: &[Vec<i64>],
        target: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let k = perm.len();
        if k == target.len() {
            return true;
        }
        for cand in 0..used.len() {
            if used[cand] {
                continue;
            }
            let ok = (0..k).all(|j| {
                cartan[cand][perm[j]] == target[k][j] && cartan[perm[j]][cand] == target[j][k]
            });
            if ok {
                used[cand] = true;
                perm.push(cand);
                if assign(cartan, target, perm, used) {
                    return true;
                }
                perm.pop();
                used[cand] = false;
            }
        }
        false
    }
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if !assign(&cartan, &target, &mut perm, &mut used) {
        return Err(CatalogError::Internal(alloc::format!(
            "{t}: extracted simple roots do not realize the standard Cartan matrix"
        )));
    }
    Ok(perm.into_iter().map(|i| simple[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn t(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn admissible_ranks() {
        assert!(SimpleType::new(Family::A, 1).is_ok());
        assert!(SimpleType::new(Family::A, 0).is_err());
        assert!(SimpleType::new(Family::B, 1).is_err());
        assert!(SimpleType::new(Family::C, 2).is_err());
        assert!(SimpleType::new(Family::D, 3).is_err());
        assert!(SimpleType::new(Family::E, 5).is_err());
        assert!(SimpleType::new(Family::E, 9).is_err());
        assert!(SimpleType::new(Family::F, 5).is_err());
        assert!(SimpleType::new(Family::G, 3).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(t("A7").to_string(), "A7");
        assert_eq!(t("e8"), SimpleType::new(Family::E, 8).unwrap());
        assert!("H3".parse::<SimpleType>().is_err());
        assert!("A".parse::<SimpleType>().is_err());
        assert!("A0".parse::<SimpleType>().is_err());
    }

    #[test]
    fn weyl_orders_match_tables() {
        assert_eq!(t("A7").weyl_order(), 40_320);
        assert_eq!(t("A8").weyl_order(), 362_880);
        assert_eq!(t("B4").weyl_order(), 384);
        assert_eq!(t("D8").weyl_order(), 5_160_960);
        assert_eq!(t("E6").weyl_order(), 51_840);
        assert_eq!(t("E7").weyl_order(), 2_903_040);
        assert_eq!(t("E8").weyl_order(), 696_729_600);
        assert_eq!(t("F4").weyl_order(), 1152);
        assert_eq!(t("G2").weyl_order(), 12);
    }

    #[test]
    fn dynkin_automorphism_orders() {
        assert_eq!(t("A1").dynkin_automorphism_order(), 1);
        assert_eq!(t("A2").dynkin_automorphism_order(), 2);
        assert_eq!(t("B4").dynkin_automorphism_order(), 1);
        assert_eq!(t("C5").dynkin_automorphism_order(), 1);
        assert_eq!(t("D4").dynkin_automorphism_order(), 6);
        assert_eq!(t("D8").dynkin_automorphism_order(), 2);
        assert_eq!(t("E6").dynkin_automorphism_order(), 2);
        assert_eq!(t("E7").dynkin_automorphism_order(), 1);
        assert_eq!(t("G2").dynkin_automorphism_order(), 1);
    }

    #[test]
    fn a7_gram_entries() {
        let sys = RootSystem::build(t("A7")).unwrap();
        assert_eq!(sys.gram().entry(0, 0), &frac(7, 8));
        assert_eq!(sys.gram().entry(0, 1), &frac(-1, 8));
    }

    #[test]
    fn root_counts_small() {
        for (name, count) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("C3", 18),
            ("D4", 24),
            ("F4", 48),
            ("G2", 12),
        ] {
            let sys = RootSystem::build(t(name)).unwrap();
            assert_eq!(sys.roots().len(), count, "{name}");
        }
    }

    #[test]
    fn e8_has_240_roots() {
        let sys = RootSystem::build(t("E8")).unwrap();
        assert_eq!(sys.roots().len(), 240);
        for r in sys.roots() {
            assert_eq!(sys.gram().norm(r).unwrap(), rat(2));
        }
    }

    #[test]
    fn e7_e6_projection_counts() {
        let e7 = RootSystem::build_e_projection(t("E7")).unwrap();
        assert_eq!(e7.roots().len(), 126);
        assert_eq!(e7.weight_lattice().rank(), 7);
        let e6 = RootSystem::build_e_projection(t("E6")).unwrap();
        assert_eq!(e6.roots().len(), 72);
        assert_eq!(e6.weight_lattice().rank(), 6);
    }

    #[test]
    fn e_projection_wrong_type_rejected() {
        assert!(matches!(
            RootSystem::build_e_projection(t("E8")),
            Err(CatalogError::NotProjected(_))
        ));
        assert!(RootSystem::build_e_projection(t("F4")).is_err());
    }

    #[test]
    fn projection_formula_matches_componentwise() {
        // Along e1 - e2 the projection averages the first two coordinates.
        let g = GramForm::identity(8);
        let axis = &QVec::unit(8, 0) - &QVec::unit(8, 1);
        let w = QVec::from_ints(&[3, 1, 2, 0, 0, 0, 0, 5]);
        let p = project_away(&w, core::slice::from_ref(&axis), &g).unwrap();
        assert_eq!(p, QVec::from_ints(&[2, 2, 2, 0, 0, 0, 0, 5]));
        // A vector already orthogonal to the axis is fixed.
        let v = &QVec::unit(8, 0) + &QVec::unit(8, 1);
        assert_eq!(project_away(&v, &[axis], &g).unwrap(), v);
        // Along e1 - e2 and e2 - e3 the first three coordinates average.
        let axes = [
            &QVec::unit(8, 0) - &QVec::unit(8, 1),
            &QVec::unit(8, 1) - &QVec::unit(8, 2),
        ];
        let w = QVec::from_ints(&[3, 1, 2, 7, 0, 0, 0, 5]);
        let p = project_away(&w, &axes, &g).unwrap();
        assert_eq!(p, QVec::from_ints(&[2, 2, 2, 7, 0, 0, 0, 5]));
    }

    #[test]
    fn reflect_negates_own_root() {
        let g = GramForm::identity(8);
        let r = &QVec::unit(8, 0) - &QVec::unit(8, 1);
        assert_eq!(reflect(&r, &r, &g).unwrap(), -&r);
    }

    #[test]
    fn reflect_fixes_orthogonal() {
        let g = GramForm::identity(3);
        let r = &QVec::unit(3, 0) - &QVec::unit(3, 1);
        let v = QVec::unit(3, 2);
        assert_eq!(reflect(&v, &r, &g).unwrap(), v);
    }

    #[test]
    fn reflect_zero_root_rejected() {
        let g = GramForm::identity(2);
        assert!(matches!(
            reflect(&QVec::unit(2, 0), &QVec::zero(2), &g),
            Err(CatalogError::ZeroRoot)
        ));
    }

    #[test]
    fn cartan_matrix_values() {
        let a2 = RootSystem::build(t("A2")).unwrap();
        assert_eq!(a2.cartan().unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        let g2 = RootSystem::build(t("G2")).unwrap();
        assert_eq!(g2.cartan().unwrap(), vec![vec![2, -1], vec![-3, 2]]);
        // Rank one.
        let g = GramForm::identity(2);
        let single = [QVec::unit(2, 0)];
        assert_eq!(cartan_matrix(&single, &g).unwrap(), vec![vec![2]]);
    }

    #[test]
    fn cartan_matrix_rejects_non_roots() {
        let g = GramForm::identity(2);
        let v = QVec::from_ints(&[1, 0]);
        let w = QVec::from_ints(&[1, 1]);
        // <v,w3> = 1 with <w3,w3> = 10/9 gives a fractional entry.
        let w3 = QVec::new(vec![rat(1), frac(1, 3)]);
        assert!(cartan_matrix(&[v.clone(), w3], &g).is_err());
        assert!(cartan_matrix(&[v.clone(), w], &g).is_ok());
        assert!(matches!(
            cartan_matrix(&[v.clone(), v], &g),
            Err(CatalogError::DependentSimpleRoots)
        ));
    }

    #[test]
    fn fundamental_indices() {
        for (name, idx) in [
            ("A3", 4u64),
            ("B3", 2),
            ("C4", 2),
            ("D4", 4),
            ("F4", 1),
            ("G2", 1),
        ] {
            let sys = RootSystem::build(t(name)).unwrap();
            assert_eq!(sys.fundamental_index().unwrap(), idx, "{name}");
        }
    }
}
