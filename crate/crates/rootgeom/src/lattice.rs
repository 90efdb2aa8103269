//! Exact rational vectors, Gram forms, and integral lattices.
//!
//! A lattice is given by a rational basis inside an ambient space carrying a
//! positive definite rational Gram form. The basis may have smaller rank than
//! the ambient dimension. All operations are exact; no floating point enters
//! anywhere.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{hnf_rows, QMat};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("empty generating set")]
    EmptyGenerators,
    #[error("shell norm must be positive, got {0}")]
    NonPositiveNorm(String),
}

/// Vector with exact rational coordinates. Equality and ordering are exact
/// coordinate-wise comparisons, so vectors can live in sorted sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVec {
    coords: Vec<Rational>,
}

impl QVec {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVec { coords }
    }

    pub fn zero(dim: usize) -> Self {
        QVec {
            coords: vec![Rational::zero(); dim],
        }
    }

    /// Unit coordinate vector `e_i` (0-indexed).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = QVec::zero(dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVec {
            coords: coords.iter().map(|&c| crate::rat(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> QVec {
        QVec {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Plain coordinate dot product (no Gram form).
    pub fn dot(&self, other: &QVec) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl Add for &QVec {
    type Output = QVec;
    fn add(self, rhs: &QVec) -> QVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        QVec {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QVec {
    type Output = QVec;
    fn sub(self, rhs: &QVec) -> QVec {
        debug_assert_eq!(self.dim(), rhs.dim());
        QVec {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &QVec {
    type Output = QVec;
    fn neg(self) -> QVec {
        QVec {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Symmetric positive definite rational form on the ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    dim: usize,
    entries: Vec<Rational>, // row-major
}

impl GramForm {
    /// Validates symmetry and positive definiteness (exactly, via `LDL^T`).
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let dim = rows.len();
        for row in &rows {
            if row.len() != dim {
                return Err(LatticeError::DimensionMismatch(row.len(), dim));
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        let m = QMat::from_rows(&rows);
        if m.ldlt().is_none() {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(GramForm {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rational::one();
        }
        GramForm { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    /// Exact inner product `v^T G w`.
    pub fn inner(&self, v: &QVec, w: &QVec) -> Result<Rational, LatticeError> {
        if v.dim() != self.dim {
            return Err(LatticeError::DimensionMismatch(v.dim(), self.dim));
        }
        if w.dim() != self.dim {
            return Err(LatticeError::DimensionMismatch(w.dim(), self.dim));
        }
        let mut acc = Rational::zero();
        for (i, vi) in v.coords().iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.coords().iter().enumerate() {
                if !wj.is_zero() {
                    let g = self.entry(i, j);
                    if !g.is_zero() {
                        acc += vi * g * wj;
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Squared length of `v` under the form.
    pub fn norm(&self, v: &QVec) -> Result<Rational, LatticeError> {
        self.inner(v, v)
    }
}

/// Free `inner` mirroring [`GramForm::inner`].
pub fn inner(v: &QVec, w: &QVec, g: &GramForm) -> Result<Rational, LatticeError> {
    g.inner(v, w)
}

/// Lattice of all integer combinations of a rational basis, of rank `r <= d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralLattice {
    basis: Vec<QVec>,
    gram: GramForm,
}

impl IntegralLattice {
    /// Wraps an explicit basis; rejects dependent vectors and any basis whose
    /// induced Gram matrix fails to be positive definite.
    pub fn from_basis(basis: Vec<QVec>, gram: GramForm) -> Result<Self, LatticeError> {
        if basis.is_empty() {
            return Err(LatticeError::EmptyGenerators);
        }
        for b in &basis {
            if b.dim() != gram.dim() {
                return Err(LatticeError::DimensionMismatch(b.dim(), gram.dim()));
            }
        }
        let rows: Vec<Vec<Rational>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        if QMat::from_rows(&rows).rank() != basis.len() {
            return Err(LatticeError::DependentBasis);
        }
        let lat = IntegralLattice { basis, gram };
        if lat.basis_gram().ldlt().is_none() {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(lat)
    }

    /// Canonical basis of the group of integer combinations of `generators`:
    /// denominators are cleared, the integer matrix is put in Hermite normal
    /// form, and the scale is divided back out.
    pub fn hnf_basis(generators: &[QVec], gram: GramForm) -> Result<Self, LatticeError> {
        let nonzero: Vec<&QVec> = generators.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(LatticeError::EmptyGenerators);
        }
        for g in &nonzero {
            if g.dim() != gram.dim() {
                return Err(LatticeError::DimensionMismatch(g.dim(), gram.dim()));
            }
        }
        let mut scale = BigInt::one();
        for g in &nonzero {
            for c in g.coords() {
                scale = scale.lcm(c.denom());
            }
        }
        let int_rows: Vec<Vec<BigInt>> = nonzero
            .iter()
            .map(|g| {
                g.coords()
                    .iter()
                    .map(|c| c.numer() * (&scale / c.denom()))
                    .collect()
            })
            .collect();
        let hnf = hnf_rows(int_rows);
        let scale_q = Rational::from_integer(scale);
        let basis: Vec<QVec> = hnf
            .into_iter()
            .map(|row| {
                QVec::new(
                    row.into_iter()
                        .map(|x| Rational::from_integer(x) / &scale_q)
                        .collect(),
                )
            })
            .collect();
        IntegralLattice::from_basis(basis, gram)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn gram(&self) -> &GramForm {
        &self.gram
    }

    /// Gram matrix of the basis vectors under the ambient form.
    pub(crate) fn basis_gram(&self) -> QMat {
        let r = self.basis.len();
        let mut m = QMat::zero(r, r);
        for i in 0..r {
            for j in i..r {
                let v = self.gram.inner(&self.basis[i], &self.basis[j]).unwrap();
                *m.at_mut(i, j) = v.clone();
                *m.at_mut(j, i) = v;
            }
        }
        m
    }

    /// Determinant of the basis Gram matrix (the squared covolume).
    pub fn basis_gram_det(&self) -> Rational {
        self.basis_gram().det()
    }

    /// Rational coordinates of `v` in the basis, if `v` lies in the span.
    pub fn coordinates_of(&self, v: &QVec) -> Result<Option<Vec<Rational>>, LatticeError> {
        if v.dim() != self.ambient_dim() {
            return Err(LatticeError::DimensionMismatch(v.dim(), self.ambient_dim()));
        }
        // Columns are the basis vectors.
        let cols: Vec<Vec<Rational>> = (0..self.ambient_dim())
            .map(|i| self.basis.iter().map(|b| b.coords()[i].clone()).collect())
            .collect();
        Ok(QMat::from_rows(&cols).solve(v.coords()))
    }

    /// True iff `v` is an integer combination of the basis.
    pub fn contains(&self, v: &QVec) -> Result<bool, LatticeError> {
        Ok(self
            .coordinates_of(v)?
            .is_some_and(|coeffs| coeffs.iter().all(Rational::is_integer)))
    }

    /// The lattice vector with the given integer coefficients.
    pub fn member(&self, coeffs: &[BigInt]) -> QVec {
        debug_assert_eq!(coeffs.len(), self.rank());
        let mut v = QVec::zero(self.ambient_dim());
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = &v + &b.scale(&Rational::from_integer(c.clone()));
            }
        }
        v
    }

    /// All lattice vectors of squared length exactly `target`, each once.
    ///
    /// Exact Fincke–Pohst enumeration: the basis Gram matrix is factored as
    /// `L D L^T` over the rationals and integer coefficient vectors are
    /// enumerated by bounded backtracking. The result is sorted
    /// lexicographically by coefficient vector, so output order is stable.
    pub fn vectors_of_norm(&self, target: &Rational) -> Result<Vec<QVec>, LatticeError> {
        if !target.is_positive() {
            return Err(LatticeError::NonPositiveNorm(format!("{target}")));
        }
        let (lower, diag) = self
            .basis_gram()
            .ldlt()
            .expect("basis Gram matrix is positive definite by construction");
        let r = self.rank();
        let mut coeff = vec![BigInt::zero(); r];
        let mut found: Vec<Vec<BigInt>> = Vec::new();
        descend(&lower, &diag, target.clone(), r, &mut coeff, &mut found);
        found.sort();
        Ok(found.iter().map(|c| self.member(c)).collect())
    }
}

/// Backtracking level of the shell enumeration: coefficients at indices
/// `>= level` are fixed, `remaining` is the norm budget left for the rest.
fn descend(
    lower: &QMat,
    diag: &[Rational],
    remaining: Rational,
    level: usize,
    coeff: &mut Vec<BigInt>,
    found: &mut Vec<Vec<BigInt>>,
) {
    if level == 0 {
        if remaining.is_zero() {
            found.push(coeff.clone());
        }
        return;
    }
    let i = level - 1;
    // offset = sum_{j > i} L[j][i] * x_j
    let mut offset = Rational::zero();
    for j in i + 1..coeff.len() {
        if !coeff[j].is_zero() {
            offset += lower.at(j, i) * Rational::from_integer(coeff[j].clone());
        }
    }
    // d_i * (x_i + offset)^2 <= remaining
    let rho = &remaining / &diag[i];
    let sqrt_bound = ratio_sqrt_upper(&rho);
    let lo = (-&offset - &sqrt_bound).ceil().to_integer();
    let hi = (-&offset + &sqrt_bound).floor().to_integer();
    let mut x = lo;
    while x <= hi {
        let shifted = Rational::from_integer(x.clone()) + &offset;
        let used = &diag[i] * &shifted * &shifted;
        if used <= remaining {
            coeff[i] = x.clone();
            descend(lower, diag, &remaining - &used, i, coeff, found);
        }
        x += 1;
    }
    coeff[i] = BigInt::zero();
}

/// Rational upper bound on `sqrt(rho)` for `rho >= 0`:
/// `sqrt(p/q) = sqrt(p q)/q <= (isqrt(p q) + 1)/q`.
fn ratio_sqrt_upper(rho: &Rational) -> Rational {
    debug_assert!(!rho.is_negative());
    let p = rho.numer();
    let q = rho.denom();
    Rational::new((p * q).sqrt() + 1, q.clone())
}

/// `floor(sqrt(x))` for a nonnegative rational, as an integer.
pub fn floor_sqrt(x: &Rational) -> BigInt {
    debug_assert!(!x.is_negative());
    x.numer().div_floor(x.denom()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, rat};
    use alloc::collections::BTreeSet;

    /// A_n weight-lattice Gram matrix: n/(n+1) on the diagonal, -1/(n+1) off.
    fn a_n_gram(n: i64) -> GramForm {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            frac(n, n + 1)
                        } else {
                            frac(-1, n + 1)
                        }
                    })
                    .collect()
            })
            .collect();
        GramForm::new(rows).unwrap()
    }

    #[test]
    fn inner_a7_diagonal() {
        let g = a_n_gram(7);
        let e1 = QVec::unit(7, 0);
        let e2 = QVec::unit(7, 1);
        assert_eq!(g.inner(&e1, &e1).unwrap(), frac(7, 8));
        assert_eq!(g.inner(&e1, &e2).unwrap(), frac(-1, 8));
    }

    #[test]
    fn inner_orthonormal() {
        let g = GramForm::identity(3);
        let e1 = QVec::unit(3, 0);
        let e2 = QVec::unit(3, 1);
        assert_eq!(g.inner(&e1, &e2).unwrap(), rat(0));
    }

    #[test]
    fn inner_a7_roots() {
        // <e1 - e2, e2 - e3> under the A7 form, expanded bilinearly by an
        // explicit double loop over matrix entries as an independent route.
        let g = a_n_gram(7);
        let r = &QVec::unit(7, 0) - &QVec::unit(7, 1);
        let s = &QVec::unit(7, 1) - &QVec::unit(7, 2);
        let mut by_hand = rat(0);
        for i in 0..7 {
            for j in 0..7 {
                by_hand += r.coords()[i].clone() * g.entry(i, j) * s.coords()[j].clone();
            }
        }
        assert_eq!(by_hand, rat(-1));
        assert_eq!(g.inner(&r, &s).unwrap(), rat(-1));
    }

    #[test]
    fn inner_dimension_mismatch() {
        let g = GramForm::identity(3);
        let v = QVec::unit(2, 0);
        assert!(matches!(
            g.inner(&v, &v),
            Err(LatticeError::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn gram_validation() {
        assert!(matches!(
            GramForm::new(vec![vec![rat(1), rat(2)], vec![rat(3), rat(1)]]),
            Err(LatticeError::NotSymmetric)
        ));
        assert!(matches!(
            GramForm::new(vec![vec![rat(1), rat(2)], vec![rat(2), rat(1)]]),
            Err(LatticeError::NotPositiveDefinite)
        ));
    }

    #[test]
    fn hnf_basis_gcd() {
        let g = GramForm::identity(1);
        let gens = vec![QVec::from_ints(&[2]), QVec::from_ints(&[3])];
        let lat = IntegralLattice::hnf_basis(&gens, g).unwrap();
        assert_eq!(lat.basis(), &[QVec::from_ints(&[1])]);
    }

    #[test]
    fn hnf_basis_empty_rejected() {
        let g = GramForm::identity(2);
        assert!(matches!(
            IntegralLattice::hnf_basis(&[], g.clone()),
            Err(LatticeError::EmptyGenerators)
        ));
        assert!(matches!(
            IntegralLattice::hnf_basis(&[QVec::zero(2)], g),
            Err(LatticeError::EmptyGenerators)
        ));
    }

    #[test]
    fn hnf_basis_halves_covolume() {
        let g = GramForm::identity(2);
        let gens = vec![
            QVec::from_ints(&[1, 0]),
            QVec::from_ints(&[0, 1]),
            QVec::new(vec![frac(1, 2), frac(1, 2)]),
        ];
        let lat = IntegralLattice::hnf_basis(&gens, g).unwrap();
        assert_eq!(lat.rank(), 2);
        // Index-2 superlattice of Z^2: squared covolume drops to 1/4.
        assert_eq!(lat.basis_gram_det(), frac(1, 4));
        for v in &gens {
            assert!(lat.contains(v).unwrap());
        }
    }

    #[test]
    fn contains_zero_vector() {
        let g = GramForm::identity(2);
        let lat = IntegralLattice::from_basis(vec![QVec::from_ints(&[1, 0])], g).unwrap();
        assert!(lat.contains(&QVec::zero(2)).unwrap());
        // e2 is outside the rank-1 span entirely.
        assert!(!lat.contains(&QVec::unit(2, 1)).unwrap());
    }

    #[test]
    fn even_sum_sublattice_excludes_unit_vectors() {
        // Integer vectors of even coordinate sum in dimension 8.
        let mut gens: Vec<QVec> = Vec::new();
        for i in 0..7 {
            gens.push(&QVec::unit(8, i) - &QVec::unit(8, i + 1));
        }
        gens.push(&QVec::unit(8, 6) + &QVec::unit(8, 7));
        let lat = IntegralLattice::hnf_basis(&gens, GramForm::identity(8)).unwrap();
        assert_eq!(lat.rank(), 8);
        assert!(!lat.contains(&QVec::unit(8, 0)).unwrap());
        let e1_plus_e2 = &QVec::unit(8, 0) + &QVec::unit(8, 1);
        assert!(lat.contains(&e1_plus_e2).unwrap());
    }

    #[test]
    fn shell_unit_vectors() {
        let g = GramForm::identity(2);
        let lat = IntegralLattice::from_basis(
            vec![QVec::from_ints(&[1, 0]), QVec::from_ints(&[0, 1])],
            g,
        )
        .unwrap();
        let shell: BTreeSet<QVec> = lat.vectors_of_norm(&rat(1)).unwrap().into_iter().collect();
        let expected: BTreeSet<QVec> = [
            QVec::from_ints(&[1, 0]),
            QVec::from_ints(&[-1, 0]),
            QVec::from_ints(&[0, 1]),
            QVec::from_ints(&[0, -1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(shell, expected);
    }

    #[test]
    fn shell_rejects_nonpositive_norm() {
        let g = GramForm::identity(1);
        let lat = IntegralLattice::from_basis(vec![QVec::from_ints(&[1])], g).unwrap();
        assert!(matches!(
            lat.vectors_of_norm(&rat(0)),
            Err(LatticeError::NonPositiveNorm(_))
        ));
        assert!(lat.vectors_of_norm(&rat(-2)).is_err());
    }

    #[test]
    fn floor_sqrt_exact() {
        assert_eq!(floor_sqrt(&frac(39, 10)), BigInt::from(1));
        assert_eq!(floor_sqrt(&frac(41, 10)), BigInt::from(2));
        assert_eq!(floor_sqrt(&rat(16)), BigInt::from(4));
    }
}
