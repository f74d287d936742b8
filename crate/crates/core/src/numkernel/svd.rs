use num_complex::Complex;

use super::ComplexMatrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Singular values, descending, `min(rows, cols)` of them.
///
/// One-sided Jacobi: columns are rotated pairwise until mutually orthogonal, and
/// the singular values are the resulting column norms. Small singular values come
/// out with absolute accuracy of order `eps·‖m‖`, which the Schmidt-rank test
/// relies on.
pub fn singular_values<T: Real>(m: &ComplexMatrix<T>) -> Vec<T> {
    // work on the orientation with at least as many rows as columns
    let work = if m.cols() > m.rows() { m.adjoint() } else { m.clone() };
    let (rows, cols) = work.shape();
    let mut colv: Vec<Vec<Complex<T>>> = (0..cols).map(|j| work.col(j)).collect();
    let tol = T::epsilon() * T::lit(rows.max(1) as f64);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: T = colv[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = colv[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex<T> = colv[p].iter().zip(&colv[q]).map(|(a, b)| a.conj() * *b).sum();
                let g = gamma.norm();
                if g.is_zero() || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rephase column q so that <p|q> is real positive
                let u = gamma.conj() / g;
                for z in colv[q].iter_mut() {
                    *z = *z * u;
                }
                let zeta = (beta - alpha) / (T::two() * g);
                let sign = if zeta < T::zero() { -T::one() } else { T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let a = colv[p][i];
                    let b = colv[q][i];
                    colv[p][i] = a * cs - b * sn;
                    colv[q][i] = a * sn + b * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<T> = colv
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv
}

/// Sum of all singular values, `Tr √(m^dag m)`.
pub fn ky_fan_norm<T: Real>(m: &ComplexMatrix<T>) -> T {
    singular_values(m).into_iter().sum()
}
