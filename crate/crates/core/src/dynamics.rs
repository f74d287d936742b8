//! Schrödinger evolution and the Riccati flow on the ray space of a qubit.
//!
//! For `ψ = (z1, z2)` and `iħ ż = H z`, the chart coordinates `ξ = z1/z2` and
//! `η = z2/z1` obey
//!
//! ```text
//! iħ ξ' = H12 + (H11 − H22) ξ − H21 ξ²
//! iħ η' = H21 + (H22 − H11) η − H12 η²
//! ```
//!
//! The second follows from the first by `η = 1/ξ`. Integration uses fixed-step
//! RK4 and moves to the other chart as soon as `|value| > 2`; right after a switch
//! `|value| < ½`, which gives the hysteresis band for free.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numkernel::{herm_eig, ComplexMatrix, HermitianOperator};
use crate::scalar::{c, i_unit, is_finite, Real};
use crate::states::PureState;

pub const DEFAULT_HBAR: f64 = 1.0;
pub const DEFAULT_SWITCH_THRESHOLD: f64 = 2.0;

/// Hamiltonian together with the value of `ħ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec<T: Real> {
    h: HermitianOperator<T>,
    hbar: T,
}

impl<T: Real> HamiltonianSpec<T> {
    pub fn new(h: HermitianOperator<T>) -> Self {
        Self {
            h,
            hbar: T::lit(DEFAULT_HBAR),
        }
    }

    pub fn with_hbar(h: HermitianOperator<T>, hbar: T) -> Result<Self> {
        if !(hbar > T::zero()) || !hbar.is_finite() {
            return Err(Error::InvalidArgument(format!("hbar must be positive, got {hbar:?}")));
        }
        Ok(Self { h, hbar })
    }

    pub fn h(&self) -> &HermitianOperator<T> {
        &self.h
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    fn qubit_entries(&self) -> Result<[Complex<T>; 4]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "Riccati flow needs a 2x2 Hamiltonian, got {}x{}",
                self.dim(),
                self.dim()
            )));
        }
        let m = self.h.matrix();
        Ok([m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `ξ = z1/z2`.
    Xi,
    /// `η = z2/z1`.
    Eta,
}

impl Chart {
    pub fn other(self) -> Self {
        match self {
            Chart::Xi => Chart::Eta,
            Chart::Eta => Chart::Xi,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Chart::Xi => "xi",
            Chart::Eta => "eta",
        }
    }
}

/// A point of the Riemann sphere in one of the two affine charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiChart<T: Real> {
    pub chart: Chart,
    pub value: Complex<T>,
}

impl<T: Real> RiccatiChart<T> {
    pub fn new(chart: Chart, value: Complex<T>) -> Result<Self> {
        if !is_finite(&value) {
            return Err(Error::NonFinite);
        }
        Ok(Self { chart, value })
    }

    pub fn xi(value: Complex<T>) -> Result<Self> {
        Self::new(Chart::Xi, value)
    }

    pub fn eta(value: Complex<T>) -> Result<Self> {
        Self::new(Chart::Eta, value)
    }

    /// Same point in the other chart. `None` at the chart's pole.
    pub fn flipped(&self) -> Option<Self> {
        if self.value.is_zero() {
            return None;
        }
        Some(Self {
            chart: self.chart.other(),
            value: Complex::<T>::one() / self.value,
        })
    }

    /// Coordinate in chart `xi`, `None` at `ξ = ∞`.
    pub fn xi_value(&self) -> Option<Complex<T>> {
        match self.chart {
            Chart::Xi => Some(self.value),
            Chart::Eta => self.flipped().map(|p| p.value),
        }
    }

    /// Normalized representative `(ξ, 1)` or `(1, η)`.
    pub fn to_state(&self) -> PureState<T> {
        let one = Complex::one();
        let z = match self.chart {
            Chart::Xi => vec![self.value, one],
            Chart::Eta => vec![one, self.value],
        };
        PureState::new(z).expect("nonzero representative").normalized()
    }

    /// Unit Bloch vector `2Y`.
    pub fn bloch(&self) -> [T; 3] {
        bloch_of(&self.to_state())
    }
}

/// Time-ordered samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<P> {
    times: Vec<f64>,
    points: Vec<P>,
}

impl<P> Trajectory<P> {
    pub fn new(times: Vec<f64>, points: Vec<P>) -> Result<Self> {
        if times.len() != points.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} times for {} points",
                times.len(),
                points.len()
            )));
        }
        check_times(&times)?;
        Ok(Self { times, points })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &P)> {
        self.times.iter().copied().zip(&self.points)
    }

    pub fn map<Q>(&self, f: impl FnMut(&P) -> Q) -> Trajectory<Q> {
        Trajectory {
            times: self.times.clone(),
            points: self.points.iter().map(f).collect(),
        }
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite);
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("times must be strictly increasing".into()));
    }
    Ok(())
}

/// `ψ(t) = exp(−iHt/ħ) ψ0` from one eigendecomposition of `H`.
pub fn schrodinger_evolve<T: Real>(
    spec: &HamiltonianSpec<T>,
    psi0: &PureState<T>,
    times: &[f64],
) -> Result<Trajectory<PureState<T>>> {
    if psi0.dim() != spec.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} with a {}x{} Hamiltonian",
            psi0.dim(),
            spec.dim(),
            spec.dim()
        )));
    }
    check_times(times)?;
    let eig = herm_eig(spec.h())?;
    let v = &eig.vectors;
    let coeffs = v.adjoint().apply(psi0.amplitudes())?;
    let points = times
        .iter()
        .map(|&t| {
            let t = T::lit(t);
            let rotated: Vec<Complex<T>> = coeffs
                .iter()
                .zip(&eig.values)
                .map(|(a, &l)| {
                    let phi = -l * t / spec.hbar();
                    *a * c(phi.cos(), phi.sin())
                })
                .collect();
            PureState::new(v.apply(&rotated)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(times.to_vec(), points)
}

/// Unitary propagator `exp(−iHt/ħ)`.
pub fn propagator<T: Real>(spec: &HamiltonianSpec<T>, t: T) -> Result<ComplexMatrix<T>> {
    let eig = herm_eig(spec.h())?;
    Ok(eig.reconstruct_with(|l| {
        let phi = -l * t / spec.hbar();
        c(phi.cos(), phi.sin())
    }))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiOptions<T: Real> {
    /// Chart switch when `|value|` exceeds this; must be greater than 1.
    pub switch_threshold: T,
    pub chart_switching: bool,
}

impl<T: Real> Default for RiccatiOptions<T> {
    fn default() -> Self {
        Self {
            switch_threshold: T::lit(DEFAULT_SWITCH_THRESHOLD),
            chart_switching: true,
        }
    }
}

fn riccati_rhs<T: Real>(entries: &[Complex<T>; 4], hbar: T, chart: Chart, w: Complex<T>) -> Complex<T> {
    let [h11, h12, h21, h22] = *entries;
    let f = match chart {
        Chart::Xi => h12 + (h11 - h22) * w - h21 * w * w,
        Chart::Eta => h21 + (h22 - h11) * w - h12 * w * w,
    };
    // w' = f / (iħ)
    -i_unit::<T>() * f / hbar
}

fn rk4_step<T: Real>(entries: &[Complex<T>; 4], hbar: T, chart: Chart, w: Complex<T>, h: T) -> Complex<T> {
    let f = |z| riccati_rhs(entries, hbar, chart, z);
    let half = T::half();
    let k1 = f(w);
    let k2 = f(w + k1 * (h * half));
    let k3 = f(w + k2 * (h * half));
    let k4 = f(w + k3 * h);
    w + (k1 + k2 * T::two() + k3 * T::two() + k4) * (h / T::lit(6.0))
}

/// RK4 integration of the Riccati flow from `t = 0`, sampled at `times`.
pub fn riccati_evolve<T: Real>(
    spec: &HamiltonianSpec<T>,
    x0: RiccatiChart<T>,
    times: &[f64],
    step: f64,
) -> Result<Trajectory<RiccatiChart<T>>> {
    riccati_evolve_with(spec, x0, times, step, RiccatiOptions::default())
}

pub fn riccati_evolve_with<T: Real>(
    spec: &HamiltonianSpec<T>,
    x0: RiccatiChart<T>,
    times: &[f64],
    step: f64,
    options: RiccatiOptions<T>,
) -> Result<Trajectory<RiccatiChart<T>>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    if options.chart_switching && !(options.switch_threshold > T::one()) {
        return Err(Error::InvalidArgument("switch threshold must exceed 1".into()));
    }
    check_times(times)?;
    if times.first().is_some_and(|&t| t < 0.0) {
        return Err(Error::InvalidArgument("times must be nonnegative".into()));
    }
    let entries = spec.qubit_entries()?;
    let hbar = spec.hbar();
    let mut point = x0;
    let mut now = 0.0f64;
    let mut points = Vec::with_capacity(times.len());
    for &target in times {
        let span = target - now;
        if span > 0.0 {
            let n = (span / step).ceil().max(1.0) as usize;
            let h = T::lit(span / n as f64);
            for _ in 0..n {
                let next = rk4_step(&entries, hbar, point.chart, point.value, h);
                if !is_finite(&next) {
                    return Err(Error::NonFinite);
                }
                point.value = next;
                if options.chart_switching && point.value.norm() > options.switch_threshold {
                    point = point.flipped().expect("nonzero value");
                }
            }
            now = target;
        }
        points.push(point);
    }
    Trajectory::new(times.to_vec(), points)
}

/// Chart `xi` when `|z2| ≥ |z1|`, otherwise `eta`; the value then has modulus ≤ 1.
pub fn project_to_chart<T: Real>(psi: &PureState<T>) -> Result<RiccatiChart<T>> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a qubit state, got dimension {}", psi.dim())));
    }
    let z = psi.amplitudes();
    if z[1].norm() >= z[0].norm() {
        RiccatiChart::xi(z[0] / z[1])
    } else {
        RiccatiChart::eta(z[1] / z[0])
    }
}

fn bloch_of<T: Real>(psi: &PureState<T>) -> [T; 3] {
    let z = psi.normalized();
    let z = z.amplitudes();
    let cross = z[0].conj() * z[1];
    [
        T::two() * cross.re,
        T::two() * cross.im,
        z[0].norm_sqr() - z[1].norm_sqr(),
    ]
}

/// `2Y` with `Y_k = ½Tr(ρσ_k)`.
pub fn bloch_point<T: Real>(psi: &PureState<T>) -> Result<[T; 3]> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a qubit state, got dimension {}", psi.dim())));
    }
    Ok(bloch_of(psi))
}

/// `|2Y − 2Y'|` between two rays.
pub fn chordal_distance<T: Real>(a: &[T; 3], b: &[T; 3]) -> T {
    a.iter().zip(b).map(|(x, y)| (*x - *y) * (*x - *y)).sum::<T>().sqrt()
}

/// Largest chordal distance between the Riccati trajectory and the projected
/// Schrödinger trajectory over `times`.
pub fn consistency_check<T: Real>(
    spec: &HamiltonianSpec<T>,
    psi0: &PureState<T>,
    times: &[f64],
    step: f64,
) -> Result<T> {
    let exact = schrodinger_evolve(spec, psi0, times)?;
    let flow = riccati_evolve(spec, project_to_chart(psi0)?, times, step)?;
    Ok(exact
        .points()
        .iter()
        .zip(flow.points())
        .map(|(psi, p)| chordal_distance(&bloch_of(psi), &p.bloch()))
        .fold(T::zero(), T::max))
}

/// `(a − c)(b − d) / ((a − d)(b − c))`.
pub fn cross_ratio<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    (a - c) * (b - d) / ((a - d) * (b - c))
}

/// Cross-ratio of four points, evaluated in whichever chart keeps all of them
/// bounded. The value is chart independent since `w → 1/w` is a Möbius map.
pub fn cross_ratio_of<T: Real>(points: &[RiccatiChart<T>; 4]) -> Complex<T> {
    let in_chart = |chart: Chart| -> Option<[Complex<T>; 4]> {
        let mut out = [Complex::zero(); 4];
        for (o, p) in out.iter_mut().zip(points) {
            *o = if p.chart == chart { p.value } else { p.flipped()?.value };
        }
        Some(out)
    };
    let largest = |w: &[Complex<T>; 4]| w.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    let w = match (in_chart(Chart::Xi), in_chart(Chart::Eta)) {
        (Some(x), Some(e)) => {
            if largest(&x) <= largest(&e) {
                x
            } else {
                e
            }
        }
        (Some(x), None) => x,
        (None, Some(e)) => e,
        (None, None) => unreachable!("a point is at the pole of at most one chart"),
    };
    cross_ratio(w[0], w[1], w[2], w[3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::pauli_op;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid(t_max: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|k| t_max * k as f64 / n as f64).collect()
    }

    #[test]
    fn zero_hamiltonian_is_static() {
        let spec = HamiltonianSpec::new(HermitianOperator::from_trusted(ComplexMatrix::<f64>::zeros(2, 2)));
        let psi = PureState::from_real(&[0.6, 0.8]).unwrap();
        let traj = schrodinger_evolve(&spec, &psi, &[0.0, 1.0, 5.0]).unwrap();
        for p in traj.points() {
            assert_eq!(p, &psi);
        }
        assert!(consistency_check(&spec, &psi, &[0.0, 3.0], 1e-2).unwrap() < 1e-15);
    }

    #[test]
    fn sigma_z_phase() {
        let spec = HamiltonianSpec::new(pauli_op::<f64>(3));
        let traj = schrodinger_evolve(&spec, &PureState::basis(2, 0), &[0.3, 1.7]).unwrap();
        for (t, p) in traj.iter() {
            let z = p.amplitudes();
            assert!((z[0] - c(t.cos(), -t.sin())).norm() < 1e-14);
            assert!(z[1].norm() < 1e-15);
        }
    }

    #[test]
    fn rabi_half_period() {
        let spec = HamiltonianSpec::new(pauli_op::<f64>(1));
        let psi0 = PureState::basis(2, 0);
        let pi = std::f64::consts::PI;
        let traj = schrodinger_evolve(&spec, &psi0, &[pi / 2.0, pi]).unwrap();
        let half = traj.points()[0].amplitudes();
        assert!(half[0].norm() < 1e-14 && (half[1] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((traj.points()[1].inner(&psi0).unwrap().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_hamiltonian_rotates_xi() {
        let omega = 1.3;
        let h = ComplexMatrix::from_real_diagonal(&[omega / 2.0, -omega / 2.0]);
        let spec = HamiltonianSpec::new(HermitianOperator::new(h).unwrap());
        let xi0 = c(0.5, 0.2);
        let times = grid(5.0, 10);
        let traj = riccati_evolve(&spec, RiccatiChart::xi(xi0).unwrap(), &times, 1e-3).unwrap();
        for (t, p) in traj.iter() {
            assert_eq!(p.chart, Chart::Xi);
            assert!((p.value - xi0 * c((omega * t).cos(), -(omega * t).sin())).norm() < 1e-10);
        }
    }

    #[test]
    fn sigma_x_fixed_point() {
        let spec = HamiltonianSpec::new(pauli_op::<f64>(1));
        let traj = riccati_evolve(&spec, RiccatiChart::xi(c(1.0, 0.0)).unwrap(), &grid(3.0, 3), 1e-2).unwrap();
        for p in traj.points() {
            assert!((p.value - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn chart_crossing_stays_finite_and_exact() {
        let spec = HamiltonianSpec::new(pauli_op::<f64>(1));
        let psi0 = RiccatiChart::xi(c(50.0, 0.0)).unwrap().to_state();
        let times = grid(10.0, 100);
        let flow = riccati_evolve(&spec, project_to_chart(&psi0).unwrap(), &times, 1e-3).unwrap();
        assert!(flow.points().iter().any(|p| p.chart == Chart::Xi));
        assert!(flow.points().iter().any(|p| p.chart == Chart::Eta));
        assert!(consistency_check(&spec, &psi0, &times, 1e-3).unwrap() < 1e-6);
    }

    #[test]
    fn switching_passes_the_pole() {
        // under σ_y, ξ(t) = tan(π/4 − t) from ξ = 1, with a pole at t = 3π/4
        let spec = HamiltonianSpec::new(pauli_op::<f64>(2));
        let x0 = RiccatiChart::xi(c(1.0, 0.0)).unwrap();
        let pole = 3.0 * std::f64::consts::FRAC_PI_4;
        let options = RiccatiOptions {
            chart_switching: false,
            ..RiccatiOptions::default()
        };
        let near = riccati_evolve_with(&spec, x0, &[pole - 1e-4], 1e-5, options).unwrap();
        assert!(near.points()[0].value.norm() > 1e3);
        let through = riccati_evolve(&spec, x0, &[pole, 3.0], 1e-3).unwrap();
        let at_pole = through.points()[0];
        assert_eq!(at_pole.chart, Chart::Eta);
        assert!(at_pole.value.norm() < 1e-10);
        assert!(through.points().iter().all(|p| is_finite(&p.value)));
    }

    #[test]
    fn projection_examples() {
        let h = 0.5f64.sqrt();
        let plus = PureState::<f64>::from_real(&[h, h]).unwrap();
        let p = project_to_chart(&plus).unwrap();
        assert_eq!(p.chart, Chart::Xi);
        assert!((p.value - c(1.0, 0.0)).norm() < 1e-15);
        let b = bloch_point(&plus).unwrap();
        assert!(chordal_distance(&b, &[1.0, 0.0, 0.0]) < 1e-15);

        let up = PureState::<f64>::basis(2, 0);
        let p = project_to_chart(&up).unwrap();
        assert_eq!((p.chart, p.value), (Chart::Eta, c(0.0, 0.0)));
        assert_eq!(bloch_point(&up).unwrap(), [0.0, 0.0, 1.0]);

        let y = PureState::new(vec![c(h, 0.0), c(0.0, h)]).unwrap();
        let p = project_to_chart(&y).unwrap();
        assert!((p.value - c(0.0, -1.0)).norm() < 1e-15);
        assert!(chordal_distance(&bloch_point(&y).unwrap(), &[0.0, 1.0, 0.0]) < 1e-15);
        assert!(project_to_chart(&PureState::<f64>::basis(3, 0)).is_err());
    }

    #[test]
    fn bad_arguments() {
        let spec = HamiltonianSpec::new(pauli_op::<f64>(1));
        let x0 = RiccatiChart::xi(c(0.1, 0.0)).unwrap();
        assert!(riccati_evolve(&spec, x0, &[1.0], 0.0).is_err());
        assert!(riccati_evolve(&spec, x0, &[1.0, 0.5], 0.1).is_err());
        assert!(HamiltonianSpec::with_hbar(pauli_op::<f64>(1), -1.0).is_err());
        let big = HamiltonianSpec::new(HermitianOperator::<f64>::identity(3));
        assert!(riccati_evolve(&big, x0, &[1.0], 0.1).is_err());
    }

    #[test]
    fn hbar_rescales_time() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let h = random::hermitian::<f64, _>(&mut rng, 2);
        let psi = PureState::new(random::gaussian_vector::<f64, _>(&mut rng, 2)).unwrap();
        let slow = schrodinger_evolve(&HamiltonianSpec::with_hbar(h.clone(), 2.0).unwrap(), &psi, &[2.0]).unwrap();
        let fast = schrodinger_evolve(&HamiltonianSpec::new(h), &psi, &[1.0]).unwrap();
        let (a, b) = (&slow.points()[0], &fast.points()[0]);
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn cross_ratio_chart_independent() {
        let pts = [c(0.3, 0.1), c(-1.5, 0.2), c(0.0, 0.9), c(4.0, -1.0)];
        let xs = pts.map(|z| RiccatiChart::xi(z).unwrap());
        let mixed = [xs[0], xs[1].flipped().unwrap(), xs[2], xs[3].flipped().unwrap()];
        let direct = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
        assert!((cross_ratio_of(&xs) - direct).norm() < 1e-13);
        assert!((cross_ratio_of(&mixed) - direct).norm() < 1e-13);
    }
}
