use num_complex::Complex;
use num_traits::Zero;

use super::{ComplexMatrix, HermitianOperator};
use crate::error::{Error, Result};
use crate::scalar::{c, Real};

const MAX_SWEEPS: usize = 64;

/// Spectrum of a Hermitian operator. Column `k` of `vectors` belongs to `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigen<T: Real> {
    /// Ascending.
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V diag(f(λ)) V^dag`.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> Complex<T>) -> ComplexMatrix<T> {
        let n = self.values.len();
        let v = &self.vectors;
        let fl: Vec<Complex<T>> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.reconstruct_with(|l| c(l, T::zero()))
    }

    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        self.vectors.col(k)
    }
}

/// Eigendecomposition of a Hermitian operator by cyclic complex Jacobi rotations.
pub fn herm_eig<T: Real>(a: &HermitianOperator<T>) -> Result<HermitianEigen<T>> {
    jacobi(a.matrix())
}

fn off_diagonal_norm_sqr<T: Real>(m: &ComplexMatrix<T>) -> T {
    let n = m.rows();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc = acc + m[(i, j)].norm_sqr();
            }
        }
    }
    acc
}

fn jacobi<T: Real>(input: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = input.rows();
    let mut a = input.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = input.frobenius_norm();
    let floor = T::lit(n as f64) * T::epsilon() * scale;
    let threshold = floor * floor;

    let mut converged = n <= 1 || scale.is_zero();
    let mut sweep = 0;
    while !converged && sweep < MAX_SWEEPS {
        sweep += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r.is_zero() {
                    continue;
                }
                // diagonal phase similarity making the (p, q) entry real and nonnegative
                let phase = apq / r;
                let u = phase.conj();
                for k in 0..n {
                    a[(k, q)] = a[(k, q)] * u;
                    v[(k, q)] = v[(k, q)] * u;
                }
                for k in 0..n {
                    a[(q, k)] = a[(q, k)] * phase;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (T::two() * r);
                let sign = if theta < T::zero() { -T::one() } else { T::one() };
                let t = sign / (theta.abs() + (theta * theta + T::one()).sqrt());
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * cs - akq * sn;
                    a[(k, q)] = akp * sn + akq * cs;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cs - vkq * sn;
                    v[(k, q)] = vkp * sn + vkq * cs;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * cs - aqk * sn;
                    a[(q, k)] = apk * sn + aqk * cs;
                }
                a[(p, q)] = Complex::zero();
                a[(q, p)] = Complex::zero();
                a[(p, p)] = c(app - t * r, T::zero());
                a[(q, q)] = c(aqq + t * r, T::zero());
            }
        }
        converged = off_diagonal_norm_sqr(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "hermitian jacobi",
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// `exp(i·s·H)` for Hermitian `H`.
pub fn exp_i_hermitian<T: Real>(h: &HermitianOperator<T>, s: T) -> Result<ComplexMatrix<T>> {
    let eig = herm_eig(h)?;
    Ok(eig.reconstruct_with(|l| {
        let phi = s * l;
        c(phi.cos(), phi.sin())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{pauli_op, DEFAULT_HERMITICITY_TOL};
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn residual(a: &HermitianOperator<f64>, eig: &HermitianEigen<f64>) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..a.dim() {
            let v = eig.vector(k);
            let av = a.matrix().apply(&v).unwrap();
            let r: f64 = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (*x - *y * eig.values[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn sigma_z_spectrum() {
        let e = herm_eig(&pauli_op::<f64>(3)).unwrap();
        assert_eq!(e.values, vec![-1.0, 1.0]);
    }

    #[test]
    fn sigma_x_spectrum_and_vectors() {
        let e = herm_eig(&pauli_op::<f64>(1)).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        let h = 0.5f64.sqrt();
        // compare via projectors, eigenvector phases are arbitrary
        let minus = ComplexMatrix::outer(&[c(h, 0.0), c(-h, 0.0)], &[c(h, 0.0), c(-h, 0.0)]);
        let v0 = e.vector(0);
        assert!(ComplexMatrix::outer(&v0, &v0).max_abs_diff(&minus) < 1e-14);
    }

    #[test]
    fn random_reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in [1, 2, 3, 4, 7, 16] {
            let a = random::hermitian::<f64, _>(&mut rng, n);
            let e = herm_eig(&a).unwrap();
            let norm = a.matrix().frobenius_norm();
            assert!(e.reconstruct().max_abs_diff(a.matrix()) <= 1e-10 * norm);
            assert!(residual(&a, &e) <= 1e-10 * norm);
            let gram = &e.vectors.adjoint() * &e.vectors;
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random::haar_unitary::<f64, _>(&mut rng, 4);
        let d = ComplexMatrix::from_real_diagonal(&[2.0, 2.0, -1.0, 2.0]);
        let a = HermitianOperator::from_trusted(&(&u * &d) * &u.adjoint());
        let e = herm_eig(&a).unwrap();
        let expected = [-1.0, 2.0, 2.0, 2.0];
        for (x, y) in e.values.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn exponential_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = random::hermitian::<f64, _>(&mut rng, 3);
        let u = exp_i_hermitian(&h, 0.7).unwrap();
        let uu = &u.adjoint() * &u;
        assert!(uu.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn single_precision_eig() {
        let m = ComplexMatrix::<f32>::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let a = HermitianOperator::with_tolerance(m, f32::tol(DEFAULT_HERMITICITY_TOL)).unwrap();
        let e = herm_eig(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-6 && (e.values[1] - 3.0).abs() < 1e-6);
    }
}
