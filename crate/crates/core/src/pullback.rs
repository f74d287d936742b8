//! Pull-back tensor coefficients on unitary orbits and the criteria built on them.
//!
//! For a Lie algebra represented by Hermitian generators `R_j`, a pure fiducial
//! state gives the coefficient matrices
//!
//! ```text
//! sym_jk     = <½[R_j, R_k]_+> − <R_j><R_k>
//! antisym_jk = <−i[R_j, R_k]_−>
//! ```
//!
//! and a density state gives
//!
//! ```text
//! sym_jk     = Tr(ρ ½[R_j, R_k]_+)
//! antisym_jk = Tr(ρ (−i)[R_j, R_k]_−)
//! ```
//!
//! Note the asymmetry: the mixed-state tensor carries no first-moment subtraction.
//! The antisymmetric part is stored as the real matrix `<−i[R_j, R_k]>`, so that for
//! pure states `antisym_jk = −ray_poisson(R_j, R_k, ψ)`.
//!
//! Generators are normalized `Tr(λ_j λ_k) = 2δ_jk` and ordered: symmetric
//! off-diagonal pairs, antisymmetric off-diagonal pairs, then diagonals. Pairs are
//! lexicographic in `(j, k)`. For `N = 2` this is exactly `(σ_x, σ_y, σ_z)`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numkernel::{ky_fan_norm, partial_trace, ComplexMatrix, HermitianOperator, Subsystem};
use crate::scalar::{c, re, Real};
use crate::states::{reduced, schmidt_with_tol, werner, BipartiteDims, DensityState, PureState, SchmidtData,
    DEFAULT_SCHMIDT_RANK_TOL};

/// Relative factor in `‖block‖_F ≤ tol·(1 + ‖sym‖_F)`.
pub const DEFAULT_ZERO_BLOCK_TOL: f64 = 1e-9;
/// Relative slack when comparing a statistic with its bound, so that the
/// boundary case counts as satisfying the inequality despite rounding.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-12;
/// Agreement tolerance for the Schmidt cross-check of maximal entanglement.
pub const SCHMIDT_FLATNESS_TOL: f64 = 1e-6;
/// `r_sq` below this leaves the distance ratio undefined.
pub const DISTANCE_RATIO_FLOOR: f64 = 1e-14;

/// Tolerances used by the criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriterionTolerances<T: Real> {
    pub zero_block: T,
    pub boundary: T,
    /// Schmidt coefficients above this count towards the rank.
    pub schmidt_rank: T,
}

impl<T: Real> Default for CriterionTolerances<T> {
    fn default() -> Self {
        Self {
            zero_block: T::tol(DEFAULT_ZERO_BLOCK_TOL),
            boundary: T::tol(DEFAULT_BOUNDARY_TOL),
            schmidt_rank: T::tol(DEFAULT_SCHMIDT_RANK_TOL),
        }
    }
}

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> RealMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }

    /// `max |M − Mᵀ|`.
    pub fn symmetry_defect(&self) -> T {
        self.max_abs_diff(&self.transpose())
    }

    /// `max |M + Mᵀ|`.
    pub fn antisymmetry_defect(&self) -> T {
        self.data
            .iter()
            .enumerate()
            .map(|(k, &v)| (v + self.get(k % self.cols, k / self.cols)).abs())
            .fold(T::zero(), T::max)
    }

    pub fn to_complex(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| re(self.get(i, j)))
    }
}

/// Split of a generator list into A-local and B-local parts, `A` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partition {
    pub dims: BipartiteDims,
    pub a_count: usize,
    pub b_count: usize,
}

impl Partition {
    pub fn a_range(&self) -> std::ops::Range<usize> {
        0..self.a_count
    }

    pub fn b_range(&self) -> std::ops::Range<usize> {
        self.a_count..self.a_count + self.b_count
    }
}

/// Ordered Hermitian generators `R(X_j)` of a Lie algebra representation.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraRep<T: Real> {
    generators: Vec<HermitianOperator<T>>,
    labels: Vec<String>,
    partition: Option<Partition>,
}

impl<T: Real> LieAlgebraRep<T> {
    pub fn new(generators: Vec<HermitianOperator<T>>, labels: Vec<String>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("representation without generators".into()));
        }
        if labels.len() != generators.len() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} generators",
                labels.len(),
                generators.len()
            )));
        }
        let n = generators[0].dim();
        if generators.iter().any(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch("generators of different dimensions".into()));
        }
        Ok(Self {
            generators,
            labels,
            partition: None,
        })
    }

    /// Attaches a bipartition, checking that the first `a_count` generators have
    /// the form `h ⊗ 1` and the rest `1 ⊗ h`.
    pub fn with_partition(mut self, dims: BipartiteDims, a_count: usize) -> Result<Self> {
        dims.check(self.dim())?;
        if a_count > self.len() {
            return Err(Error::InvalidArgument("partition larger than the generator list".into()));
        }
        let tol = T::tol(1e-10);
        for (k, g) in self.generators.iter().enumerate() {
            let m = g.matrix();
            let rebuilt = if k < a_count {
                let h = partial_trace(m, dims.pair(), Subsystem::A)?.scale_real(T::one() / T::lit(dims.n_b() as f64));
                h.kron(&ComplexMatrix::identity(dims.n_b()))
            } else {
                let h = partial_trace(m, dims.pair(), Subsystem::B)?.scale_real(T::one() / T::lit(dims.n_a() as f64));
                ComplexMatrix::identity(dims.n_a()).kron(&h)
            };
            if rebuilt.max_abs_diff(m) > tol * (T::one() + m.max_abs()) {
                return Err(Error::InvalidArgument(format!(
                    "generator {} ({}) is not local to subsystem {}",
                    k,
                    self.labels[k],
                    if k < a_count { "A" } else { "B" }
                )));
            }
        }
        self.partition = Some(Partition {
            dims,
            a_count,
            b_count: self.len() - a_count,
        });
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Dimension of the carrier space.
    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn generators(&self) -> &[HermitianOperator<T>] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn partition(&self) -> Option<Partition> {
        self.partition
    }
}

/// Generalized Gell-Mann generators of `su(N)`, `Tr(λ_j λ_k) = 2δ_jk`.
pub fn su_basis<T: Real>(n: usize) -> Result<LieAlgebraRep<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("su(N) needs N >= 2, got {n}")));
    }
    let mut gens = Vec::with_capacity(n * n - 1);
    let mut labels = Vec::with_capacity(n * n - 1);
    let one = T::one();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(j, k)] = re(one);
        m[(k, j)] = re(one);
        gens.push(HermitianOperator::from_trusted(m));
        labels.push(format!("sym({j},{k})"));
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(j, k)] = c(T::zero(), -one);
        m[(k, j)] = c(T::zero(), one);
        gens.push(HermitianOperator::from_trusted(m));
        labels.push(format!("asym({j},{k})"));
    }
    for l in 1..n {
        let lf = T::lit(l as f64);
        let norm = (T::two() / (lf * (lf + one))).sqrt();
        let diag: Vec<T> = (0..n)
            .map(|i| match i.cmp(&l) {
                std::cmp::Ordering::Less => norm,
                std::cmp::Ordering::Equal => -lf * norm,
                std::cmp::Ordering::Greater => T::zero(),
            })
            .collect();
        gens.push(HermitianOperator::from_trusted(ComplexMatrix::from_real_diagonal(&diag)));
        labels.push(format!("diag({l})"));
    }
    if n == 2 {
        labels = vec!["sigma_x".into(), "sigma_y".into(), "sigma_z".into()];
    }
    LieAlgebraRep::new(gens, labels)
}

/// `{λ_j ⊗ 1} ∪ {1 ⊗ λ_k}` on `C^{n_a} ⊗ C^{n_b}`, A-local generators first.
pub fn local_product_rep_for<T: Real>(dims: BipartiteDims) -> Result<LieAlgebraRep<T>> {
    let su_a = su_basis::<T>(dims.n_a())?;
    let su_b = su_basis::<T>(dims.n_b())?;
    let id_a = HermitianOperator::identity(dims.n_a());
    let id_b = HermitianOperator::identity(dims.n_b());
    let mut gens = Vec::with_capacity(su_a.len() + su_b.len());
    let mut labels = Vec::with_capacity(su_a.len() + su_b.len());
    for (g, l) in su_a.generators().iter().zip(su_a.labels()) {
        gens.push(g.kron(&id_b));
        labels.push(format!("A:{l}"));
    }
    for (g, l) in su_b.generators().iter().zip(su_b.labels()) {
        gens.push(id_a.kron(g));
        labels.push(format!("B:{l}"));
    }
    let a_count = su_a.len();
    LieAlgebraRep::new(gens, labels)?.with_partition(dims, a_count)
}

/// Local product representation on `C^N ⊗ C^N`.
pub fn local_product_rep<T: Real>(n: usize) -> Result<LieAlgebraRep<T>> {
    local_product_rep_for(BipartiteDims::square(n)?)
}

/// Symmetric and antisymmetric tensor coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix<T: Real> {
    pub sym: RealMatrix<T>,
    pub antisym: RealMatrix<T>,
    pub partition: Option<Partition>,
}

/// Sub-blocks of a partitioned coefficient matrix. `ab` is the upper-right block.
#[derive(Debug, Clone, PartialEq)]
pub struct Blocks<T: Real> {
    pub a: RealMatrix<T>,
    pub b: RealMatrix<T>,
    pub ab: RealMatrix<T>,
}

impl<T: Real> Blocks<T> {
    /// Reassembles `[[A, AB], [ABᵀ, B]]`.
    pub fn assemble_symmetric(&self) -> RealMatrix<T> {
        let na = self.a.rows();
        let n = na + self.b.rows();
        RealMatrix::from_fn(n, n, |i, j| match (i < na, j < na) {
            (true, true) => self.a.get(i, j),
            (true, false) => self.ab.get(i, j - na),
            (false, true) => self.ab.get(j, i - na),
            (false, false) => self.b.get(i - na, j - na),
        })
    }

    pub fn norms(&self) -> BlockNorms<T> {
        BlockNorms {
            a: self.a.frobenius_norm(),
            b: self.b.frobenius_norm(),
            ab: self.ab.frobenius_norm(),
        }
    }
}

/// Frobenius norms of the blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockNorms<T: Real> {
    pub a: T,
    pub b: T,
    pub ab: T,
}

fn split<T: Real>(m: &RealMatrix<T>, partition: Option<Partition>) -> Result<Blocks<T>> {
    let p = partition.ok_or(Error::MissingPartition)?;
    let (na, nb) = (p.a_count, p.b_count);
    Ok(Blocks {
        a: m.block(0, 0, na, na),
        b: m.block(na, na, nb, nb),
        ab: m.block(0, na, na, nb),
    })
}

impl<T: Real> CoefficientMatrix<T> {
    pub fn sym_blocks(&self) -> Result<Blocks<T>> {
        split(&self.sym, self.partition)
    }

    pub fn antisym_blocks(&self) -> Result<Blocks<T>> {
        split(&self.antisym, self.partition)
    }
}

/// Blocks of the symmetric part.
pub fn block_decompose<T: Real>(c: &CoefficientMatrix<T>) -> Result<Blocks<T>> {
    c.sym_blocks()
}

fn check_rep_dim<T: Real>(rep: &LieAlgebraRep<T>, n: usize) -> Result<()> {
    if rep.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "representation on dimension {} applied to a state of dimension {n}",
            rep.dim()
        )));
    }
    Ok(())
}

/// Pull-back coefficients for a pure fiducial state.
pub fn pure_pullback<T: Real>(psi: &PureState<T>, rep: &LieAlgebraRep<T>) -> Result<CoefficientMatrix<T>> {
    check_rep_dim(rep, psi.dim())?;
    let psi = psi.normalized();
    // v_j = R_j ψ, so that <R_j R_k> = <v_j|v_k>
    let vs: Vec<Vec<Complex<T>>> = rep
        .generators()
        .iter()
        .map(|g| g.matrix().apply(psi.amplitudes()))
        .collect::<Result<_>>()?;
    let means: Vec<T> = vs
        .iter()
        .map(|v| psi.amplitudes().iter().zip(v).map(|(a, b)| (a.conj() * *b).re).sum())
        .collect();
    let n = rep.len();
    let moments: Vec<Complex<T>> = (0..n * n)
        .map(|idx| {
            let (j, k) = (idx / n, idx % n);
            vs[j].iter().zip(&vs[k]).map(|(a, b)| a.conj() * *b).sum()
        })
        .collect();
    let sym = RealMatrix::from_fn(n, n, |j, k| {
        let s = (moments[j * n + k].re + moments[k * n + j].re) * T::half();
        s - means[j] * means[k]
    });
    let antisym = RealMatrix::from_fn(n, n, |j, k| {
        (moments[j * n + k].im - moments[k * n + j].im) * T::half() * T::two()
    });
    Ok(CoefficientMatrix {
        sym,
        antisym,
        partition: rep.partition(),
    })
}

/// Tensor coefficients for a density state, `Tr(ρ·½[R_j,R_k]_+)` and `Tr(ρ·(−i)[R_j,R_k]_−)`.
pub fn mixed_tensor<T: Real>(rho: &DensityState<T>, rep: &LieAlgebraRep<T>) -> Result<CoefficientMatrix<T>> {
    check_rep_dim(rep, rho.dim())?;
    let rho_r: Vec<ComplexMatrix<T>> = rep.generators().iter().map(|g| rho.matrix() * g.matrix()).collect();
    let n = rep.len();
    let mut moments = vec![Complex::zero(); n * n];
    for j in 0..n {
        for k in 0..n {
            moments[j * n + k] = rho_r[j].trace_of_product(rep.generators()[k].matrix())?;
        }
    }
    let sym = RealMatrix::from_fn(n, n, |j, k| (moments[j * n + k].re + moments[k * n + j].re) * T::half());
    // Tr(ρ (−i)(R_j R_k − R_k R_j)) = Im m_jk − Im m_kj for Hermitian ρ, R
    let antisym = RealMatrix::from_fn(n, n, |j, k| moments[j * n + k].im - moments[k * n + j].im);
    Ok(CoefficientMatrix {
        sym,
        antisym,
        partition: rep.partition(),
    })
}

/// Outcome of a criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Separable,
    Entangled,
    Inconclusive,
    MaximallyEntangled,
    NotMaximallyEntangled,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Separable => "separable",
            Verdict::Entangled => "entangled",
            Verdict::Inconclusive => "inconclusive",
            Verdict::MaximallyEntangled => "maximally-entangled",
            Verdict::NotMaximallyEntangled => "not-maximally-entangled",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport<T: Real> {
    pub verdict: Verdict,
    pub criterion: String,
    pub statistic: T,
    pub bound: T,
    /// Norms of the blocks of the tensor the criterion inspects.
    pub blocks: BlockNorms<T>,
    /// Schmidt data for pure-state criteria.
    pub schmidt: Option<SchmidtData<T>>,
    /// Whether the Schmidt cross-check agrees with the verdict.
    pub schmidt_agrees: Option<bool>,
}

/// `ψ` is separable iff the `AB` block of the pure pull-back metric vanishes.
pub fn separability_pure<T: Real>(psi: &PureState<T>, dims: BipartiteDims) -> Result<SeparabilityReport<T>> {
    separability_pure_with(psi, dims, CriterionTolerances::default())
}

pub fn separability_pure_with<T: Real>(
    psi: &PureState<T>,
    dims: BipartiteDims,
    tols: CriterionTolerances<T>,
) -> Result<SeparabilityReport<T>> {
    dims.check(psi.dim())?;
    let rep = local_product_rep_for::<T>(dims)?;
    let coeffs = pure_pullback(psi, &rep)?;
    let blocks = coeffs.sym_blocks()?;
    let statistic = blocks.ab.frobenius_norm();
    let bound = tols.zero_block * (T::one() + coeffs.sym.frobenius_norm());
    let verdict = if statistic <= bound { Verdict::Separable } else { Verdict::Entangled };
    let sd = schmidt_with_tol(psi, dims, tols.schmidt_rank)?;
    let agrees = (sd.rank == 1) == (verdict == Verdict::Separable);
    Ok(SeparabilityReport {
        verdict,
        criterion: "pure-metric-ab-block".into(),
        statistic,
        bound,
        blocks: blocks.norms(),
        schmidt: Some(sd),
        schmidt_agrees: Some(agrees),
    })
}

/// `ψ` is maximally entangled iff the antisymmetric pull-back tensor vanishes.
pub fn max_entanglement_pure<T: Real>(psi: &PureState<T>, dims: BipartiteDims) -> Result<SeparabilityReport<T>> {
    max_entanglement_pure_with(psi, dims, CriterionTolerances::default())
}

pub fn max_entanglement_pure_with<T: Real>(
    psi: &PureState<T>,
    dims: BipartiteDims,
    tols: CriterionTolerances<T>,
) -> Result<SeparabilityReport<T>> {
    dims.check(psi.dim())?;
    if !dims.is_square() {
        return Err(Error::Inapplicable(format!(
            "maximal entanglement needs equal factors, got {} x {}",
            dims.n_a(),
            dims.n_b()
        )));
    }
    let rep = local_product_rep_for::<T>(dims)?;
    let coeffs = pure_pullback(psi, &rep)?;
    let statistic = coeffs.antisym.frobenius_norm();
    let bound = tols.zero_block * (T::one() + coeffs.sym.frobenius_norm());
    let verdict = if statistic <= bound {
        Verdict::MaximallyEntangled
    } else {
        Verdict::NotMaximallyEntangled
    };
    let sd = schmidt_with_tol(psi, dims, tols.schmidt_rank)?;
    let flat = T::one() / T::lit(dims.n_a() as f64).sqrt();
    let uniform = sd.coefficients.iter().all(|&s| (s - flat).abs() <= T::tol(SCHMIDT_FLATNESS_TOL));
    Ok(SeparabilityReport {
        verdict,
        criterion: "pure-antisymmetric-tensor".into(),
        statistic,
        bound,
        blocks: coeffs.antisym_blocks()?.norms(),
        schmidt: Some(sd),
        schmidt_agrees: Some(uniform == (verdict == Verdict::MaximallyEntangled)),
    })
}

/// `Tr((G^AB)ᵀ G^AB)` next to the Hilbert-Schmidt distance `Tr(R†R)` of
/// `R = ρ − ρ_A ⊗ ρ_B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableDistance<T: Real> {
    pub g_ab_sq: T,
    pub r_sq: T,
    /// `g_ab_sq / r_sq`, undefined when `r_sq` vanishes.
    pub ratio: Option<T>,
}

/// With `Tr(λ_j λ_k) = 2δ_jk` the ratio is 4 for every entangled pure state.
pub const DISTANCE_RATIO: f64 = 4.0;

pub fn distance_to_separable<T: Real>(psi: &PureState<T>, dims: BipartiteDims) -> Result<SeparableDistance<T>> {
    dims.check(psi.dim())?;
    let rep = local_product_rep_for::<T>(dims)?;
    let coeffs = pure_pullback(psi, &rep)?;
    let g_ab = coeffs.sym_blocks()?.ab;
    let g_ab_sq = g_ab.frobenius_norm().powi(2);
    let rho = crate::states::projector(psi);
    let ra = reduced(&rho, dims, Subsystem::A)?;
    let rb = reduced(&rho, dims, Subsystem::B)?;
    let r = rho.matrix() - &ra.matrix().kron(rb.matrix());
    let r_sq = r.hs_inner(&r).re;
    let ratio = (r_sq > T::lit(DISTANCE_RATIO_FLOOR)).then(|| g_ab_sq / r_sq);
    Ok(SeparableDistance { g_ab_sq, r_sq, ratio })
}

/// Ky Fan test on the correlation block of the mixed-state tensor:
/// separable ⇒ `(2/N)·‖L^AB‖_KF ≤ ½(N² − N)`, with the converse for `N = 2`.
pub fn devicente_check<T: Real>(rho: &DensityState<T>, dims: BipartiteDims) -> Result<SeparabilityReport<T>> {
    devicente_check_with(rho, dims, CriterionTolerances::default())
}

pub fn devicente_check_with<T: Real>(
    rho: &DensityState<T>,
    dims: BipartiteDims,
    tols: CriterionTolerances<T>,
) -> Result<SeparabilityReport<T>> {
    if !dims.is_square() {
        return Err(Error::Inapplicable(format!(
            "Ky Fan criterion needs equal factors, got {} x {}",
            dims.n_a(),
            dims.n_b()
        )));
    }
    dims.check(rho.dim())?;
    let n = dims.n_a();
    let nf = T::lit(n as f64);
    let rep = local_product_rep_for::<T>(dims)?;
    let coeffs = mixed_tensor(rho, &rep)?;
    let blocks = coeffs.sym_blocks()?;
    let statistic = T::two() / nf * ky_fan_norm(&blocks.ab.to_complex());
    let bound = T::half() * (nf * nf - nf);
    let verdict = if statistic > bound * (T::one() + tols.boundary) {
        Verdict::Entangled
    } else if n == 2 {
        Verdict::Separable
    } else {
        Verdict::Inconclusive
    };
    Ok(SeparabilityReport {
        verdict,
        criterion: "ky-fan-correlation-block".into(),
        statistic,
        bound,
        blocks: blocks.norms(),
        schmidt: None,
        schmidt_agrees: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerScanRow<T: Real> {
    pub x: T,
    pub statistic: T,
    pub bound: T,
    pub verdict: Verdict,
}

/// Ky Fan test along the Werner family, one row per grid value.
pub fn werner_scan<T: Real>(grid: &[T]) -> Result<Vec<WernerScanRow<T>>> {
    let dims = BipartiteDims::square(2)?;
    grid.iter()
        .map(|&x| {
            let report = devicente_check(&werner(x)?, dims)?;
            Ok(WernerScanRow {
                x,
                statistic: report.statistic,
                bound: report.bound,
                verdict: report.verdict,
            })
        })
        .collect()
}
