//! Dense square matrices and column vectors over the Gaussian rationals.
//!
//! Everything here is exact. Dimensions stay tiny (two-qubit operators are
//! 4x4; user scenarios are capped well below 100x100), so a dense row-major
//! layout and textbook Gaussian elimination are all that is needed. The one
//! nontrivial operation is [`Matrix::integer_spectrum`]: eigenvalue
//! multiplicities are obtained as exact kernel dimensions of `A - kI`, which
//! for a Hermitian (hence diagonalizable) matrix are the true multiplicities
//! — no characteristic polynomial, no numerics.

use std::fmt;
use std::ops::{Add, Mul, Neg, RangeInclusive, Sub};

use num::Zero;
use thiserror::Error;

use crate::scalar::{self, GaussianRational};

/// Errors from exact integer-spectrum computation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    /// The spectrum is only meaningful (and the kernel-dimension method only
    /// sound) for Hermitian input.
    #[error("matrix is not Hermitian")]
    NotHermitian,
    /// Kernel dimensions over the candidate range account for fewer
    /// eigenvalues than the dimension: the spectrum is not contained in the
    /// candidate integers.
    #[error(
        "non-integer spectrum: candidates {lo}..={hi} account for {found} of {dim} eigenvalues"
    )]
    NonIntegerSpectrum { lo: i64, hi: i64, found: usize, dim: usize },
}

/// Dense square matrix over the Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    /// Builds a `dim x dim` matrix from a row-major entry list.
    pub fn from_entries(dim: usize, entries: Vec<GaussianRational>) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        Matrix { dim, entries }
    }

    /// Builds a matrix by evaluating `f(row, col)` at every position.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> GaussianRational) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Matrix::from_entries(dim, entries)
    }

    /// Diagonal matrix with the given integer entries.
    pub fn diagonal(values: &[i64]) -> Self {
        Matrix::from_fn(
            values.len(),
            |r, c| {
                if r == c {
                    scalar::int(values[r])
                } else {
                    scalar::zero()
                }
            },
        )
    }

    pub fn zero(dim: usize) -> Self {
        Matrix::from_fn(dim, |_, _| scalar::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Matrix::from_fn(dim, |r, c| if r == c { scalar::one() } else { scalar::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &GaussianRational {
        &self.entries[row * self.dim + col]
    }

    /// Scalar multiple `c * self`.
    pub fn scale(&self, c: &GaussianRational) -> Matrix {
        Matrix::from_fn(self.dim, |r, s| c.clone() * self.entry(r, s).clone())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix {
        Matrix::from_fn(self.dim, |r, c| self.entry(c, r).conj())
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.dim).fold(scalar::zero(), |acc, k| acc + self.entry(k, k).clone())
    }

    /// Kronecker product; `self` is the left (first) tensor factor, so with
    /// the computational basis ordered |00>, |01>, |10>, |11> the left factor
    /// acts on the first particle.
    pub fn tensor(&self, other: &Matrix) -> Matrix {
        let (da, db) = (self.dim, other.dim);
        Matrix::from_fn(da * db, |r, c| {
            let a = self.entry(r / db, c / db);
            let b = other.entry(r % db, c % db);
            a.clone() * b.clone()
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.dim, v.dim(), "matrix/vector dimension mismatch");
        Vector::new(
            (0..self.dim)
                .map(|r| {
                    (0..self.dim).fold(scalar::zero(), |acc, c| {
                        acc + self.entry(r, c).clone() * v.entry(c).clone()
                    })
                })
                .collect(),
        )
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self * other == other * self
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.dagger()
    }

    /// `self * self == I`.
    pub fn is_involution(&self) -> bool {
        self * self == Matrix::identity(self.dim)
    }

    /// `self * self == self`.
    pub fn is_idempotent(&self) -> bool {
        self * self == *self
    }

    /// Column rank via exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let d = self.dim;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..d {
            // Find a pivot at or below the current elimination front.
            let pivot = (rank..d).find(|&r| !m[r * d + col].is_zero());
            let Some(p) = pivot else { continue };
            if p != rank {
                for c in 0..d {
                    m.swap(p * d + c, rank * d + c);
                }
            }
            let pivot_val = m[rank * d + col].clone();
            for r in (rank + 1)..d {
                if m[r * d + col].is_zero() {
                    continue;
                }
                let factor = m[r * d + col].clone() / pivot_val.clone();
                for c in col..d {
                    let delta = factor.clone() * m[rank * d + c].clone();
                    m[r * d + c] = m[r * d + c].clone() - delta;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Dimension of the null space (`dim - rank`), computed exactly.
    pub fn kernel_dimension(&self) -> usize {
        self.dim - self.rank()
    }

    /// Exact eigenvalue multiplicities over a window of integer candidates.
    ///
    /// For each candidate `k`, the multiplicity is the kernel dimension of
    /// `self - kI`. The matrix must be Hermitian (checked); then it is
    /// diagonalizable, kernel dimensions are true multiplicities, and they
    /// must sum to the dimension. If they do not, part of the spectrum lies
    /// outside the window or is not an integer at all, and an error is
    /// returned rather than a partial answer.
    ///
    /// Returns `(eigenvalue, multiplicity)` pairs in ascending eigenvalue
    /// order, omitting candidates with multiplicity zero.
    pub fn integer_spectrum(
        &self,
        candidates: RangeInclusive<i64>,
    ) -> Result<Vec<(i64, usize)>, SpectrumError> {
        if !self.is_hermitian() {
            return Err(SpectrumError::NotHermitian);
        }
        let (lo, hi) = (*candidates.start(), *candidates.end());
        let identity = Matrix::identity(self.dim);
        let mut spectrum = Vec::new();
        let mut found = 0;
        for k in candidates {
            let shifted = self - &identity.scale(&scalar::int(k));
            let mult = shifted.kernel_dimension();
            if mult > 0 {
                spectrum.push((k, mult));
                found += mult;
            }
        }
        if found != self.dim {
            return Err(SpectrumError::NonIntegerSpectrum { lo, hi, found, dim: self.dim });
        }
        Ok(spectrum)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> =
                (0..self.dim).map(|c| scalar::format_gaussian(self.entry(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch in +");
        Matrix::from_fn(self.dim, |r, c| self.entry(r, c).clone() + rhs.entry(r, c).clone())
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch in -");
        Matrix::from_fn(self.dim, |r, c| self.entry(r, c).clone() - rhs.entry(r, c).clone())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch in *");
        Matrix::from_fn(self.dim, |r, c| {
            (0..self.dim).fold(scalar::zero(), |acc, k| {
                acc + self.entry(r, k).clone() * rhs.entry(k, c).clone()
            })
        })
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&scalar::int(-1))
    }
}

/// Column vector over the Gaussian rationals. States are kept unnormalized
/// (integer entries) so that membership in the field is never left.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    entries: Vec<GaussianRational>,
}

impl Vector {
    pub fn new(entries: Vec<GaussianRational>) -> Self {
        assert!(!entries.is_empty(), "vector must be nonempty");
        Vector { entries }
    }

    /// Vector with the given integer entries.
    pub fn from_ints(values: &[i64]) -> Self {
        Vector::new(values.iter().map(|&v| scalar::int(v)).collect())
    }

    /// Standard basis vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        Vector::new((0..dim).map(|j| if j == k { scalar::one() } else { scalar::zero() }).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, k: usize) -> &GaussianRational {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, c: &GaussianRational) -> Vector {
        Vector::new(self.entries.iter().map(|e| c.clone() * e.clone()).collect())
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch in +");
        Vector::new(
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() + b.clone()).collect(),
        )
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(scalar::format_gaussian).collect();
        write!(f, "({})", parts.join(", "))
    }
}
