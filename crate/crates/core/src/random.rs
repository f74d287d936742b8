//! Random operators and states for sampling-based checks.

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::numkernel::{ComplexMatrix, HermitianOperator};
use crate::scalar::{c, Real};

fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let x: f64 = StandardNormal.sample(rng);
    T::lit(x)
}

/// Complex Gaussian entries with unit variance per component.
pub fn gaussian_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex<T>> {
    (0..n).map(|_| c(normal(rng), normal(rng))).collect()
}

pub fn gaussian_matrix<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(normal(rng), normal(rng)))
}

/// Hermitian matrix drawn from the Gaussian unitary ensemble (up to scale).
pub fn hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> HermitianOperator<T> {
    HermitianOperator::hermitian_part(&gaussian_matrix(rng, n, n)).expect("square")
}

/// Haar-distributed unitary via Gram-Schmidt on a Gaussian matrix.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix<T> {
    let g = gaussian_matrix::<T, R>(rng, n, n);
    let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.col(j);
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex<T> = q.iter().zip(&v).map(|(a, b)| a.conj() * *b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi = *vi - *qi * proj;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Uniformly distributed unit vector in `C^n`.
pub fn unit_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex<T>> {
    let v = gaussian_vector::<T, R>(rng, n);
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Random density matrix of the given rank: `Σ_k p_k |v_k><v_k|` with random
/// orthonormal `v_k` and strictly positive weights.
pub fn density_matrix<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix<T> {
    assert!(rank >= 1 && rank <= n, "rank must be in 1..=n");
    let u = haar_unitary::<T, R>(rng, n);
    let weights: Vec<T> = (0..rank).map(|_| T::lit(rng.random_range(0.2..1.0))).collect();
    let total: T = weights.iter().copied().sum();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, w) in weights.into_iter().enumerate() {
        let v = u.col(k);
        out = &out + &ComplexMatrix::outer(&v, &v).scale_real(w / total);
    }
    out
}

/// Nonzero scalar with random modulus and phase.
pub fn nonzero_scalar<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let modulus: f64 = rng.random_range(0.05..20.0);
    let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Complex::from_polar(T::lit(modulus), T::lit(phase))
}
