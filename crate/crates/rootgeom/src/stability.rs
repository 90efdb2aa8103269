//! Norm-shell stability of root systems inside their weight lattices.
//!
//! For a simple type, every isometry of the weight lattice preserves each
//! shell of lattice vectors of a fixed squared length. The roots of a given
//! length are therefore permuted by such isometries exactly when the shell
//! contains no non-root vectors. `check_stability` enumerates the shells
//! that determine the root system (the unique shell for the simply-laced
//! families, the short-root shell for `B`, `C`, `G2`, and both shells for
//! `F4`) and reports any non-root vectors it finds as witnesses.
//!
//! The sweep over all types of bounded rank flags exactly `A7`, `A8`, `B4`,
//! `D8` and nothing else.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::catalog::{reflect, CatalogError, Family, RootSystem, SimpleType};
use crate::lattice::{GramForm, LatticeError, QVec};
use crate::matrix::QMat;
use crate::{rat, Rational};

/// Default ceiling on the rank accepted by [`check_stability`]; shell
/// enumeration grows combinatorially with the rank.
pub const DEFAULT_RANK_LIMIT: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("rank {rank} of {simple_type} exceeds the configured limit {limit}")]
    RankLimitExceeded {
        simple_type: SimpleType,
        rank: u32,
        limit: u32,
    },
    #[error("sweep requires max_rank >= 8, got {0}")]
    SweepRankTooSmall(u32),
    #[error("weights do not span the space (the induced form is degenerate)")]
    DegenerateForm,
    #[error("weight multiset is empty")]
    EmptyMultiset,
    #[error("zero vector passed where a root is required")]
    ZeroVector,
    #[error("integrality precondition fails: 2<r,s>/<s,s> = {0} is not an integer")]
    NonIntegralPairing(String),
    #[error("input is not a crystallographic root system: {0}")]
    NotCrystallographic(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Stable,
    PotentiallyUnstable,
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Verdict::Stable => write!(f, "Stable"),
            Verdict::PotentiallyUnstable => write!(f, "PotentiallyUnstable"),
        }
    }
}

/// Vector counts for one shell of the weight lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellCount {
    /// Squared length of the shell.
    pub norm: Rational,
    /// Number of weight-lattice vectors of that squared length.
    pub lattice_count: usize,
    /// Number of roots of that squared length.
    pub root_count: usize,
}

/// Outcome of the shell check for one simple type.
///
/// The check runs on the full weight lattice; any character lattice of the
/// type sits between the root lattice and the weight lattice, so a `Stable`
/// verdict covers them all. Witnesses are lattice vectors of a determining
/// root length that are not roots; the verdict is `Stable` exactly when
/// there are none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub simple_type: SimpleType,
    pub verdict: Verdict,
    /// One entry per distinct root length, ascending.
    pub shells: Vec<ShellCount>,
    /// Squared lengths whose shells decide the verdict.
    pub determining_norms: Vec<Rational>,
    /// Non-root lattice vectors found in the determining shells, in shell
    /// enumeration order.
    pub witnesses: Vec<QVec>,
    /// For the `A` family: solutions `(k, n)` of the root-length equation
    /// `(n-k) + k(n-k) = 2(n+1)` at this rank. Cross-validates the shell
    /// enumeration: witnesses exist exactly when solutions do.
    pub diophantine: Option<Vec<(u64, u64)>>,
}

/// Shell check with the default rank limit of [`DEFAULT_RANK_LIMIT`].
pub fn check_stability(t: SimpleType) -> Result<StabilityReport, StabilityError> {
    check_stability_limited(t, DEFAULT_RANK_LIMIT)
}

/// Shell check with an explicit rank ceiling.
pub fn check_stability_limited(
    t: SimpleType,
    limit: u32,
) -> Result<StabilityReport, StabilityError> {
    if t.rank() > limit {
        return Err(StabilityError::RankLimitExceeded {
            simple_type: t,
            rank: t.rank(),
            limit,
        });
    }
    let sys = RootSystem::build(t)?;
    let norms = sys.root_norms();
    let determining_norms: Vec<Rational> = match t.family() {
        // Short roots determine the system for the two-length families,
        // except F4 where the roots are all weights of both lengths.
        Family::B | Family::C | Family::G => vec![norms[0].clone()],
        Family::F => norms.clone(),
        Family::A | Family::D | Family::E => norms.clone(),
    };
    let mut shells = Vec::with_capacity(norms.len());
    let mut witnesses = Vec::new();
    for norm in &norms {
        let shell = sys.weight_lattice().vectors_of_norm(norm)?;
        shells.push(ShellCount {
            norm: norm.clone(),
            lattice_count: shell.len(),
            root_count: sys.roots_of_norm(norm),
        });
        if determining_norms.contains(norm) {
            witnesses.extend(shell.into_iter().filter(|v| !sys.roots().contains(v)));
        }
    }
    let verdict = if witnesses.is_empty() {
        Verdict::Stable
    } else {
        Verdict::PotentiallyUnstable
    };
    let diophantine = match t.family() {
        Family::A => {
            let n = t.rank() as u64;
            let sols: Vec<(u64, u64)> = an_diophantine(n)
                .into_iter()
                .filter(|&(_, sol_n)| sol_n == n)
                .collect();
            if sols.is_empty() != witnesses.is_empty() {
                return Err(StabilityError::Internal(alloc::format!(
                    "{t}: shell enumeration and the root-length equation disagree"
                )));
            }
            Some(sols)
        }
        _ => None,
    };
    Ok(StabilityReport {
        simple_type: t,
        verdict,
        shells,
        determining_norms,
        witnesses,
        diophantine,
    })
}

/// Result of [`theorem6_sweep`]: one report per type, in canonical order.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub max_rank: u32,
    pub reports: BTreeMap<SimpleType, StabilityReport>,
}

impl SweepOutcome {
    /// Types flagged `PotentiallyUnstable`.
    pub fn flagged(&self) -> Vec<SimpleType> {
        self.reports
            .values()
            .filter(|r| r.verdict == Verdict::PotentiallyUnstable)
            .map(|r| r.simple_type)
            .collect()
    }

    /// The four types the sweep is expected to flag.
    pub fn expected_flagged() -> [SimpleType; 4] {
        [
            SimpleType::new(Family::A, 7).unwrap(),
            SimpleType::new(Family::A, 8).unwrap(),
            SimpleType::new(Family::B, 4).unwrap(),
            SimpleType::new(Family::D, 8).unwrap(),
        ]
    }

    /// True iff exactly `A7`, `A8`, `B4`, `D8` are flagged.
    pub fn pattern_holds(&self) -> bool {
        self.flagged() == Self::expected_flagged()
    }
}

/// Runs [`check_stability`] on every admissible type of rank `<= max_rank`
/// in the A–D families plus the five exceptional types.
pub fn theorem6_sweep(max_rank: u32) -> Result<SweepOutcome, StabilityError> {
    if max_rank < 8 {
        return Err(StabilityError::SweepRankTooSmall(max_rank));
    }
    let mut reports = BTreeMap::new();
    for t in SimpleType::all_up_to_rank(max_rank) {
        reports.insert(t, check_stability_limited(t, max_rank)?);
    }
    Ok(SweepOutcome { max_rank, reports })
}

/// All pairs `0 <= k <= n <= n_max` with `(n-k) + k(n-k) = 2(n+1)`,
/// sorted by `(n, k)`.
///
/// Solved exactly per `n`: the equation is `k^2 - (n-1)k + (n+2) = 0`, so
/// `k = ((n-1) ± sqrt(D))/2` with discriminant `D = (n-7)(n+1)`, which must
/// be a perfect square.
pub fn an_diophantine(n_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        if n < 7 {
            continue; // D = (n-7)(n+1) < 0: no real solution
        }
        let d = (n - 7) * (n + 1);
        let s = d.sqrt();
        if s * s != d {
            continue;
        }
        let mut ks = Vec::new();
        if (n - 1) >= s && (n - 1 - s) % 2 == 0 {
            ks.push((n - 1 - s) / 2);
        }
        if s > 0 && (n - 1 + s) % 2 == 0 {
            ks.push((n - 1 + s) / 2);
        }
        ks.sort_unstable();
        for k in ks {
            if k <= n {
                debug_assert_eq!((n - k) + k * (n - k), 2 * (n + 1));
                out.push((k, n));
            }
        }
    }
    out.sort_by_key(|&(k, n)| (n, k));
    out
}

/// A finite multiset of weights in coordinates on the character space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    entries: Vec<(QVec, u32)>,
    dim: usize,
}

impl WeightMultiset {
    /// Entries with zero multiplicity are rejected; total multiplicity must
    /// be at least one.
    pub fn new(entries: Vec<(QVec, u32)>) -> Result<Self, StabilityError> {
        let dim = match entries.first() {
            Some((v, _)) => v.dim(),
            None => return Err(StabilityError::EmptyMultiset),
        };
        for (v, m) in &entries {
            if *m == 0 {
                return Err(StabilityError::Internal(String::from(
                    "zero multiplicity in weight multiset",
                )));
            }
            if v.dim() != dim {
                return Err(StabilityError::Lattice(LatticeError::DimensionMismatch(
                    v.dim(),
                    dim,
                )));
            }
        }
        Ok(WeightMultiset { entries, dim })
    }

    pub fn entries(&self) -> &[(QVec, u32)] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|&(_, m)| m as u64).sum()
    }
}

/// The adjoint weight multiset of a root system: every root once, plus the
/// zero weight with multiplicity equal to the rank. Weights are expressed in
/// coordinates on the weight-lattice basis.
pub fn adjoint_weights(sys: &RootSystem) -> Result<WeightMultiset, StabilityError> {
    let rank = sys.weight_lattice().rank();
    let mut entries = Vec::with_capacity(sys.roots().len() + 1);
    for r in sys.roots() {
        let coords = sys
            .weight_lattice()
            .coordinates_of(r)?
            .ok_or_else(|| StabilityError::Internal(String::from("root outside lattice span")))?;
        entries.push((QVec::new(coords), 1));
    }
    entries.push((QVec::zero(rank), rank as u32));
    WeightMultiset::new(entries)
}

/// The inner product induced on the character space by a spanning weight
/// multiset: the dual-space form has matrix `F = sum_i m_i w_i w_i^T`, and
/// the form carried back to the character space is `F^{-1}`.
pub fn induced_gram(char_weights: &WeightMultiset) -> Result<GramForm, StabilityError> {
    let d = char_weights.dim();
    let mut f = QMat::zero(d, d);
    for (w, m) in char_weights.entries() {
        let mq = rat(*m as i64);
        for i in 0..d {
            if w.coords()[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if !w.coords()[j].is_zero() {
                    *f.at_mut(i, j) += &w.coords()[i] * &w.coords()[j] * &mq;
                }
            }
        }
    }
    let inv = f.inverse().ok_or(StabilityError::DegenerateForm)?;
    let rows: Vec<Vec<Rational>> = (0..d).map(|i| inv.row(i).to_vec()).collect();
    GramForm::new(rows).map_err(|_| StabilityError::DegenerateForm)
}

/// Classifies the angle between two characters of torus-sharing groups.
///
/// Both integrality conditions `2<r,s>/<r,r> ∈ Z` and `2<r,s>/<s,s> ∈ Z`
/// are required; then `4 cos²θ` is their product, an integer in `0..=4`,
/// and the angle in degrees is one of 0, 30, 45, 60, 90, 120, 135, 150, 180.
pub fn angle_classify(r: &QVec, s: &QVec, g: &GramForm) -> Result<u32, StabilityError> {
    if r.is_zero() || s.is_zero() {
        return Err(StabilityError::ZeroVector);
    }
    let pairing = g.inner(r, s)?;
    let c_r = rat(2) * &pairing / g.norm(r)?;
    let c_s = rat(2) * &pairing / g.norm(s)?;
    for c in [&c_r, &c_s] {
        if !c.is_integer() {
            return Err(StabilityError::NonIntegralPairing(alloc::format!("{c}")));
        }
    }
    let four_cos_sq = (c_r * c_s).to_integer();
    debug_assert!((BigInt::zero()..=BigInt::from(4)).contains(&four_cos_sq));
    let m = four_cos_sq.to_u32().expect("4cos^2 in 0..=4");
    let acute = match m {
        0 => return Ok(90),
        1 => 60,
        2 => 45,
        3 => 30,
        _ => 0,
    };
    Ok(if pairing.is_positive() {
        acute
    } else {
        180 - acute
    })
}

/// The almost-simple factor types of a semisimple group. An empty list
/// (trivial derived group) is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactorList {
    pub factors: Vec<SimpleType>,
}

impl From<Vec<SimpleType>> for FactorList {
    fn from(factors: Vec<SimpleType>) -> Self {
        FactorList { factors }
    }
}

/// The Lie-type predicate on factor lists: at most one factor of type `A4`,
/// and every factor of type `A_n` with `n` outside `{1, 2, 3, 5, 7, 8}`.
/// Vacuously true for the empty list.
pub fn hypothesis_a(factors: &FactorList) -> bool {
    let mut a4_count = 0usize;
    for t in &factors.factors {
        if t.family() != Family::A {
            return false;
        }
        match t.rank() {
            1 | 2 | 3 | 5 | 7 | 8 => return false,
            4 => a4_count += 1,
            _ => {}
        }
    }
    a4_count <= 1
}

/// Splits a (possibly reducible) crystallographic root set into its
/// irreducible components: the connected components of the non-orthogonality
/// relation. Components of distinct factors span mutually orthogonal
/// subspaces by construction.
pub fn orthogonal_factor_decomposition(
    roots: &[QVec],
    g: &GramForm,
) -> Result<Vec<Vec<QVec>>, StabilityError> {
    let not_crystal = |msg: String| Err(StabilityError::NotCrystallographic(msg));
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    for r in roots {
        if r.is_zero() {
            return not_crystal(String::from("contains the zero vector"));
        }
    }
    // Pairwise integrality and closure under reflection.
    let set: alloc::collections::BTreeSet<&QVec> = roots.iter().collect();
    if set.len() != roots.len() {
        return not_crystal(String::from("contains duplicates"));
    }
    for r in roots {
        for s in roots {
            let c = rat(2) * g.inner(r, s)? / g.norm(s)?;
            if !c.is_integer() {
                return not_crystal(alloc::format!("pairing 2<{r},{s}>/<{s},{s}> = {c}"));
            }
        }
    }
    for r in roots {
        for s in roots {
            let image = reflect(s, r, g)?;
            if !set.contains(&image) {
                return not_crystal(alloc::format!("not closed under reflection of {s} in {r}"));
            }
        }
    }
    // Union-find over the non-orthogonality graph.
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if !g.inner(&roots[i], &roots[j])?.is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut components: BTreeMap<usize, Vec<QVec>> = BTreeMap::new();
    for i in 0..n {
        let rep = find(&mut parent, i);
        components.entry(rep).or_default().push(roots[i].clone());
    }
    let mut out: Vec<Vec<QVec>> = components.into_values().collect();
    for c in &mut out {
        c.sort();
    }
    out.sort();
    Ok(out)
}
