//! Pure and density states, Bloch and Schmidt decompositions, named states.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numkernel::{
    herm_eig, partial_trace, pauli, singular_values, ComplexMatrix, HermitianOperator, Subsystem,
};
use crate::scalar::{is_finite, re, Real};

pub const DEFAULT_PSD_TOL: f64 = 1e-9;
pub const DEFAULT_TRACE_TOL: f64 = 1e-9;
/// Absolute cutoff on singular values of a normalized state when counting Schmidt rank.
pub const DEFAULT_SCHMIDT_RANK_TOL: f64 = 1e-9;

/// Nonzero vector in `C^N`. Amplitudes are not required to be normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> PureState<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument("empty state vector".into()));
        }
        if !amplitudes.iter().all(is_finite) {
            return Err(Error::NonFinite);
        }
        if amplitudes.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| re(T::lit(x))).collect())
    }

    /// Computational basis vector `|k>` in `C^n`.
    pub fn basis(n: usize, k: usize) -> Self {
        assert!(k < n, "basis index out of range");
        let mut v = vec![Complex::zero(); n];
        v[k] = Complex::one();
        Self { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            amplitudes: self.amplitudes.iter().map(|z| z / n).collect(),
        }
    }

    /// `λψ`; fails for `λ = 0`.
    pub fn scaled(&self, lambda: Complex<T>) -> Result<Self> {
        Self::new(self.amplitudes.iter().map(|z| z * lambda).collect())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inner product of states of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * *b)
            .sum())
    }

    /// `self ⊗ other` in A-major order.
    pub fn tensor(&self, other: &Self) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| *a * *b))
            .collect();
        Self { amplitudes }
    }

    /// `U ψ`.
    pub fn evolved_by(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        Self::new(u.apply(&self.amplitudes)?)
    }

    /// Normalized expectation value `<ψ|A|ψ>/<ψ|ψ>`.
    pub fn expectation(&self, a: &HermitianOperator<T>) -> Result<T> {
        Ok(a.quadratic_form(&self.amplitudes)? / self.norm_sqr())
    }

    /// Normalized expectation of an arbitrary operator.
    pub fn expectation_of(&self, m: &ComplexMatrix<T>) -> Result<Complex<T>> {
        let mv = m.apply(&self.amplitudes)?;
        let num: Complex<T> = self.amplitudes.iter().zip(&mv).map(|(a, b)| a.conj() * *b).sum();
        Ok(num / self.norm_sqr())
    }
}

/// Tolerances used when validating a density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityTolerances<T: Real> {
    pub hermiticity: T,
    pub psd: T,
    pub trace: T,
}

impl<T: Real> Default for DensityTolerances<T> {
    fn default() -> Self {
        Self {
            hermiticity: T::tol(crate::numkernel::DEFAULT_HERMITICITY_TOL),
            psd: T::tol(DEFAULT_PSD_TOL),
            trace: T::tol(DEFAULT_TRACE_TOL),
        }
    }
}

/// Positive semidefinite unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState<T: Real> {
    op: HermitianOperator<T>,
    tolerances: DensityTolerances<T>,
}

impl<T: Real> DensityState<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerances(matrix, DensityTolerances::default())
    }

    /// Validates Hermiticity, positivity and trace. States that fail positivity by
    /// more than the tolerance are rejected, never clipped.
    pub fn with_tolerances(matrix: ComplexMatrix<T>, tolerances: DensityTolerances<T>) -> Result<Self> {
        let op = HermitianOperator::with_tolerance(matrix, tolerances.hermiticity)?;
        let trace = op.matrix().trace().re;
        if (trace - T::one()).abs() > tolerances.trace {
            return Err(Error::TraceNotOne {
                trace: trace.to_f64().unwrap_or(f64::NAN),
                tol: tolerances.trace.to_f64().unwrap_or(f64::NAN),
            });
        }
        let min = herm_eig(&op)?.values[0];
        if min < -tolerances.psd {
            return Err(Error::NotPositive {
                min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
                tol: tolerances.psd.to_f64().unwrap_or(f64::NAN),
            });
        }
        // rebuild through the symmetrizing constructor so stored entries are exactly Hermitian
        let op = HermitianOperator::from_trusted(op.into_matrix());
        Ok(Self { op, tolerances })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        self.op.matrix()
    }

    pub fn operator(&self) -> &HermitianOperator<T> {
        &self.op
    }

    pub fn tolerances(&self) -> DensityTolerances<T> {
        self.tolerances
    }

    /// `Tr(ρ A)`.
    pub fn expectation(&self, a: &ComplexMatrix<T>) -> Result<Complex<T>> {
        self.matrix().trace_of_product(a)
    }

    /// Eigenvalues, ascending.
    pub fn spectrum(&self) -> Result<Vec<T>> {
        Ok(herm_eig(&self.op)?.values)
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: T) -> Result<usize> {
        Ok(self.spectrum()?.into_iter().filter(|&l| l > tol).count())
    }

    pub fn purity(&self) -> T {
        self.matrix().hs_inner(self.matrix()).re
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            op: self.op.kron(&other.op),
            tolerances: self.tolerances,
        }
    }
}

/// Sizes of the two factors of `C^{n_a} ⊗ C^{n_b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteDims {
    n_a: usize,
    n_b: usize,
}

impl BipartiteDims {
    pub fn new(n_a: usize, n_b: usize) -> Result<Self> {
        if n_a < 2 || n_b < 2 {
            return Err(Error::InvalidArgument(format!(
                "bipartite factors must have dimension >= 2, got {n_a} x {n_b}"
            )));
        }
        Ok(Self { n_a, n_b })
    }

    /// `C^n ⊗ C^n`.
    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    /// Square split of a total dimension, when it is a perfect square.
    pub fn infer_square(total: usize) -> Option<Self> {
        let n = (total as f64).sqrt().round() as usize;
        (n * n == total).then(|| Self::new(n, n).ok()).flatten()
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn total(&self) -> usize {
        self.n_a * self.n_b
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.n_a, self.n_b)
    }

    pub fn is_square(&self) -> bool {
        self.n_a == self.n_b
    }

    pub(crate) fn check(&self, size: usize) -> Result<()> {
        if size != self.total() {
            return Err(Error::NotFactorizable {
                size,
                n_a: self.n_a,
                n_b: self.n_b,
            });
        }
        Ok(())
    }
}

/// Schmidt coefficients, descending, and the rank they imply.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtData<T: Real> {
    pub coefficients: Vec<T>,
    pub rank: usize,
}

/// `|ψ><ψ| / <ψ|ψ>`.
pub fn projector<T: Real>(psi: &PureState<T>) -> DensityState<T> {
    let m = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()).scale_real(T::one() / psi.norm_sqr());
    DensityState {
        op: HermitianOperator::from_trusted(m),
        tolerances: DensityTolerances::default(),
    }
}

/// `ρ = y0·1 + y·σ` for a qubit operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition<T: Real> {
    pub y0: T,
    pub y: [T; 3],
}

impl<T: Real> BlochDecomposition<T> {
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let mut m = pauli::<T>(0).scale_real(self.y0);
        for k in 0..3 {
            m = &m + &pauli::<T>(k + 1).scale_real(self.y[k]);
        }
        m
    }

    /// `|y|²`; a pure state gives ¼.
    pub fn y_norm_sqr(&self) -> T {
        self.y.iter().map(|&v| v * v).sum()
    }
}

/// Coefficients `y_k = ½ Tr(ρ σ_k)`.
pub fn bloch_decompose<T: Real>(rho: &DensityState<T>) -> Result<BlochDecomposition<T>> {
    bloch_decompose_matrix(rho.matrix())
}

pub(crate) fn bloch_decompose_matrix<T: Real>(m: &ComplexMatrix<T>) -> Result<BlochDecomposition<T>> {
    if m.shape() != (2, 2) {
        return Err(Error::DimensionMismatch(format!(
            "Bloch decomposition needs a 2x2 operator, got {:?}",
            m.shape()
        )));
    }
    let coeff = |k: usize| m.trace_of_product(&pauli(k)).map(|z| z.re * T::half());
    Ok(BlochDecomposition {
        y0: coeff(0)?,
        y: [coeff(1)?, coeff(2)?, coeff(3)?],
    })
}

/// Reshapes `ψ/‖ψ‖` into its `n_a x n_b` amplitude matrix.
pub fn amplitude_matrix<T: Real>(psi: &PureState<T>, dims: BipartiteDims) -> Result<ComplexMatrix<T>> {
    dims.check(psi.dim())?;
    let n = psi.norm();
    let amps = psi.amplitudes();
    Ok(ComplexMatrix::from_fn(dims.n_a(), dims.n_b(), |i, j| amps[i * dims.n_b() + j] / n))
}

pub fn schmidt<T: Real>(psi: &PureState<T>, dims: BipartiteDims) -> Result<SchmidtData<T>> {
    schmidt_with_tol(psi, dims, T::tol(DEFAULT_SCHMIDT_RANK_TOL))
}

pub fn schmidt_with_tol<T: Real>(psi: &PureState<T>, dims: BipartiteDims, rank_tol: T) -> Result<SchmidtData<T>> {
    let coefficients = singular_values(&amplitude_matrix(psi, dims)?);
    let rank = coefficients.iter().filter(|&&s| s > rank_tol).count();
    Ok(SchmidtData { coefficients, rank })
}

/// Reduced state on the kept factor.
pub fn reduced<T: Real>(rho: &DensityState<T>, dims: BipartiteDims, keep: Subsystem) -> Result<DensityState<T>> {
    dims.check(rho.dim())?;
    let m = partial_trace(rho.matrix(), dims.pair(), keep)?;
    DensityState::with_tolerances(m, rho.tolerances)
}

/// `(|00> + |11>)/√2`.
pub fn bell_phi_plus<T: Real>() -> PureState<T> {
    let h = re(T::half().sqrt());
    PureState {
        amplitudes: vec![h, Complex::zero(), Complex::zero(), h],
    }
}

/// `1/N`.
pub fn max_mixed<T: Real>(n: usize) -> Result<DensityState<T>> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let m = ComplexMatrix::identity(n).scale_real(T::one() / T::lit(n as f64));
    Ok(DensityState {
        op: HermitianOperator::from_trusted(m),
        tolerances: DensityTolerances::default(),
    })
}

/// `x |φ+><φ+| + (1 - x) 1/4`, `x ∈ [0, 1]`.
pub fn werner<T: Real>(x: T) -> Result<DensityState<T>> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(Error::OutOfRange {
            value: x.to_f64().unwrap_or(f64::NAN),
            min: 0.0,
            max: 1.0,
        });
    }
    let bell = projector(&bell_phi_plus::<T>());
    let mixed = max_mixed::<T>(4)?;
    let m = &bell.matrix().scale_real(x) + &mixed.matrix().scale_real(T::one() - x);
    Ok(DensityState {
        op: HermitianOperator::from_trusted(m),
        tolerances: DensityTolerances::default(),
    })
}
