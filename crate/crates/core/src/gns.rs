//! GNS construction for the full matrix algebra `M_N(C)` and a density state.
//!
//! The algebra is spanned by matrix units `E_(i,j) = |i><j|`, flattened as
//! `a = i·N + j`. The GNS inner product `<a|b>_ρ = Tr(ρ a†b)` evaluates to
//!
//! ```text
//! gram[(i,j), (k,l)] = δ_ik · ρ_lj
//! ```
//!
//! i.e. `gram = 1_N ⊗ ρᵀ`, so its rank is `N·rank(ρ)`. The Gelfand ideal is the
//! null space of `gram` and the GNS Hilbert space is the quotient.
//!
//! The orbit `G/G_ρ` of `ρ` under `U(N)` is tracked only by its dimension,
//! `N² − Σ m_k²` where `m_k` are the eigenvalue multiplicities of `ρ`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::Result;
use crate::numkernel::{herm_eig, ComplexMatrix, HermitianOperator};
use crate::scalar::Real;
use crate::states::DensityState;

/// Gram eigenvalues below `tol·λ_max` belong to the ideal.
pub const DEFAULT_GNS_RANK_TOL: f64 = 1e-10;
/// Eigenvalues of `ρ` closer than this count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GnsResult<T: Real> {
    pub gram: HermitianOperator<T>,
    /// Ascending.
    pub gram_spectrum: Vec<T>,
    pub ideal_dim: usize,
    pub hilbert_dim: usize,
    /// Matrix units `(i, j)` independent modulo the ideal, in flattened order.
    pub quotient_basis: Vec<(usize, usize)>,
    /// Smallest gram eigenvalue outside the ideal.
    pub min_positive_eigenvalue: Option<T>,
    pub orbit_dim: usize,
}

pub fn gns_construct<T: Real>(rho: &DensityState<T>) -> Result<GnsResult<T>> {
    gns_construct_with_tol(rho, T::tol(DEFAULT_GNS_RANK_TOL))
}

pub fn gns_construct_with_tol<T: Real>(rho: &DensityState<T>, rel_tol: T) -> Result<GnsResult<T>> {
    let gram = gram_matrix(rho);
    let n2 = gram.rows();
    let gram = HermitianOperator::from_trusted(gram);
    let spectrum = herm_eig(&gram)?.values;
    let lmax = spectrum.last().copied().unwrap_or_else(T::zero);
    let cutoff = rel_tol * lmax;
    let hilbert_dim = spectrum.iter().filter(|&&l| l > cutoff).count();
    let min_positive_eigenvalue = spectrum.iter().copied().find(|&l| l > cutoff);
    let quotient_basis = greedy_basis(gram.matrix(), cutoff)
        .into_iter()
        .map(|a| (a / rho.dim(), a % rho.dim()))
        .collect();
    Ok(GnsResult {
        gram,
        gram_spectrum: spectrum,
        ideal_dim: n2 - hilbert_dim,
        hilbert_dim,
        quotient_basis,
        min_positive_eigenvalue,
        orbit_dim: orbit_dim(rho)?,
    })
}

fn gram_matrix<T: Real>(rho: &DensityState<T>) -> ComplexMatrix<T> {
    let n = rho.dim();
    let r = rho.matrix();
    ComplexMatrix::from_fn(n * n, n * n, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        if i == k {
            r[(l, j)]
        } else {
            Complex::zero()
        }
    })
}

/// Gram-Schmidt over matrix units in the `gram` inner product.
fn greedy_basis<T: Real>(gram: &ComplexMatrix<T>, cutoff: T) -> Vec<usize> {
    let n = gram.rows();
    let inner = |u: &[Complex<T>], v: &[Complex<T>]| -> Complex<T> {
        let gv = gram.apply(v).expect("square gram");
        u.iter().zip(&gv).map(|(a, b)| a.conj() * *b).sum()
    };
    let mut chosen = Vec::new();
    let mut ortho: Vec<Vec<Complex<T>>> = Vec::new();
    for a in 0..n {
        let mut v = vec![Complex::zero(); n];
        v[a] = Complex::new(T::one(), T::zero());
        for _ in 0..2 {
            for q in &ortho {
                let proj = inner(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi = *vi - *qi * proj;
                }
            }
        }
        let norm_sqr = inner(&v, &v).re;
        if norm_sqr > cutoff {
            let s = T::one() / norm_sqr.sqrt();
            ortho.push(v.into_iter().map(|x| x * s).collect());
            chosen.push(a);
        }
    }
    chosen
}

fn orbit_dim<T: Real>(rho: &DensityState<T>) -> Result<usize> {
    let values = rho.spectrum()?;
    let n = values.len();
    let mut stabilizer = 0;
    let mut start = 0;
    for k in 1..=n {
        if k == n || values[k] - values[k - 1] > T::tol(DEGENERACY_TOL) {
            let m = k - start;
            stabilizer += m * m;
            start = k;
        }
    }
    Ok(n * n - stabilizer)
}
