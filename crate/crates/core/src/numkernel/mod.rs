//! Dense complex linear algebra for small operators.
//!
//! Everything here is a pure function of its inputs. Matrices are row-major and
//! bipartite operators use the A-major index convention `i_a * n_b + i_b`, which
//! matches `kron(a_factor, b_factor)`.
//!
//! Symmetrized products are normalized as `½(ab + ba)`. With this convention the
//! local Pauli coefficient matrix of the Werner family has unit diagonal.

mod eigen;
mod matrix;
mod svd;

pub use eigen::{exp_i_hermitian, herm_eig, HermitianEigen};
pub use matrix::ComplexMatrix;
pub use svd::{ky_fan_norm, singular_values};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{c, i_unit, Real};

/// Default absolute tolerance on `max |A - A^dag|`.
pub const DEFAULT_HERMITICITY_TOL: f64 = 1e-10;

/// Square matrix known to be Hermitian within a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T: Real> {
    matrix: ComplexMatrix<T>,
    hermiticity_tol: T,
}

impl<T: Real> HermitianOperator<T> {
    /// Validates with the default tolerance.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerance(matrix, T::tol(DEFAULT_HERMITICITY_TOL))
    }

    pub fn with_tolerance(matrix: ComplexMatrix<T>, tol: T) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermiticity_defect();
        if deviation > tol {
            return Err(Error::NotHermitian {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            matrix,
            hermiticity_tol: tol,
        })
    }

    /// Hermitian part `½(m + m^dag)` of an arbitrary square matrix.
    pub fn hermitian_part(m: &ComplexMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let h = (m + &m.adjoint()).scale_real(T::half());
        Ok(Self::from_trusted(h))
    }

    /// Wraps a matrix that is Hermitian by construction, symmetrizing away rounding.
    pub(crate) fn from_trusted(m: ComplexMatrix<T>) -> Self {
        let n = m.rows();
        let sym = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * T::half());
        Self {
            matrix: sym,
            hermiticity_tol: T::tol(DEFAULT_HERMITICITY_TOL),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_trusted(ComplexMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn hermiticity_tol(&self) -> T {
        self.hermiticity_tol
    }

    /// `<v|A|v>`, real for Hermitian `A`.
    pub fn quadratic_form(&self, v: &[Complex<T>]) -> Result<T> {
        let av = self.matrix.apply(v)?;
        Ok(v.iter().zip(&av).map(|(a, b)| (a.conj() * *b).re).sum())
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::from_trusted(self.matrix.kron(&other.matrix))
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_trusted(self.matrix.scale_real(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_size(&self.matrix, &other.matrix)?;
        Ok(Self::from_trusted(&self.matrix + &other.matrix))
    }
}

/// Pauli matrix `σ_k`, `k = 0` giving the identity, `1..=3` giving x, y, z.
pub fn pauli<T: Real>(k: usize) -> ComplexMatrix<T> {
    let (o, l) = (T::zero(), T::one());
    let rows = match k {
        0 => [[c(l, o), c(o, o)], [c(o, o), c(l, o)]],
        1 => [[c(o, o), c(l, o)], [c(l, o), c(o, o)]],
        2 => [[c(o, o), c(o, -l)], [c(o, l), c(o, o)]],
        3 => [[c(l, o), c(o, o)], [c(o, o), c(-l, o)]],
        _ => panic!("pauli index {k} out of range"),
    };
    ComplexMatrix::from_rows(&rows.map(|r| r.to_vec()))
}

/// [`pauli`] wrapped as a [`HermitianOperator`].
pub fn pauli_op<T: Real>(k: usize) -> HermitianOperator<T> {
    HermitianOperator::from_trusted(pauli(k))
}

/// Which factor of a bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Traces out the factor not named by `keep`.
pub fn partial_trace<T: Real>(
    m: &ComplexMatrix<T>,
    (n_a, n_b): (usize, usize),
    keep: Subsystem,
) -> Result<ComplexMatrix<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if n_a == 0 || n_b == 0 || n_a * n_b != m.rows() {
        return Err(Error::NotFactorizable {
            size: m.rows(),
            n_a,
            n_b,
        });
    }
    let out = match keep {
        Subsystem::A => ComplexMatrix::from_fn(n_a, n_a, |i, j| {
            (0..n_b).map(|k| m[(i * n_b + k, j * n_b + k)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(n_b, n_b, |i, j| {
            (0..n_a).map(|k| m[(k * n_b + i, k * n_b + j)]).sum()
        }),
    };
    Ok(out)
}

fn check_same_size<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<()> {
    if a.shape() != b.shape() || !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "operators of shape {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

/// `[a, b] = ab - ba`, anti-Hermitian for Hermitian inputs.
pub fn commutator<T: Real>(a: &HermitianOperator<T>, b: &HermitianOperator<T>) -> Result<ComplexMatrix<T>> {
    commutator_of(a.matrix(), b.matrix())
}

pub fn commutator_of<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    check_same_size(a, b)?;
    Ok(&(a * b) - &(b * a))
}

/// `½(ab + ba)`.
pub fn sym_product<T: Real>(a: &HermitianOperator<T>, b: &HermitianOperator<T>) -> Result<HermitianOperator<T>> {
    check_same_size(a.matrix(), b.matrix())?;
    let (a, b) = (a.matrix(), b.matrix());
    Ok(HermitianOperator::from_trusted((&(a * b) + &(b * a)).scale_real(T::half())))
}

/// `i[a, b]`, Hermitian for Hermitian inputs.
pub fn i_commutator<T: Real>(a: &HermitianOperator<T>, b: &HermitianOperator<T>) -> Result<HermitianOperator<T>> {
    let k = commutator(a, b)?;
    Ok(HermitianOperator::from_trusted(k.scale(i_unit())))
}
