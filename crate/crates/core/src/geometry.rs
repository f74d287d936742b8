//! Kähler brackets on the realified Hilbert space and the ray tensors.
//!
//! A vector `z = x + iy ∈ C^N` is treated as a point of `R^{2N}`. The contravariant
//! metric and Poisson tensors act on differentials as
//!
//! ```text
//! (f, g) = ∂f/∂x·∂g/∂x + ∂f/∂y·∂g/∂y
//! {f, g} = ∂f/∂y·∂g/∂x − ∂f/∂x·∂g/∂y
//! ```
//!
//! For quadratic functions `f_A(z) = <z|A|z>` the gradients are
//! `∂f_A/∂x = 2 Re(Az)`, `∂f_A/∂y = 2 Im(Az)`, which yields the closed forms
//!
//! ```text
//! {f_A, f_B} = f_{s·i[A,B]}        with s = POISSON_SCALE = 2
//! (f_A, f_B) = f_{j·½(AB+BA)}      with j = JORDAN_SCALE = 4
//! ```
//!
//! Both constants are pinned by finite-difference tests.
//!
//! The ray tensors are exposed through their action on expectation functions
//! `e_A = f_A / <z|z>`:
//!
//! ```text
//! Λ̃(de_A, de_B) = e_{i[A,B]}
//! G̃(de_A, de_B) = ½ e_{AB+BA} − e_A e_B
//! ```
//!
//! The literal coordinate tensors `c·G − (Δ⊗Δ + Γ⊗Γ)` and `c·Λ − (Δ⊗Γ − Γ⊗Δ)`,
//! with `Δ` the dilation and `Γ` the phase generator, are available through
//! [`ray_metric_tensor`] and [`ray_poisson_tensor`]. On expectation functions they
//! equal `4·G̃` and `2·Λ̃` respectively.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numkernel::{i_commutator, sym_product, ComplexMatrix, HermitianOperator};
use crate::scalar::{c, Real};
use crate::states::PureState;

/// `s` in `{f_A, f_B} = f_{s·i[A,B]}`.
pub const POISSON_SCALE: f64 = 2.0;
/// `j` in `(f_A, f_B) = f_{j·½(AB+BA)}`.
pub const JORDAN_SCALE: f64 = 4.0;
/// Ratio of the coordinate ray metric tensor to `G̃` on expectation functions.
pub const COORDINATE_RAY_METRIC_SCALE: f64 = 4.0;
/// Ratio of the coordinate ray Poisson tensor to `Λ̃` on expectation functions.
pub const COORDINATE_RAY_POISSON_SCALE: f64 = 2.0;
/// Points with smaller norm are rejected by ray operations.
pub const MIN_RAY_NORM: f64 = 1e-12;

/// `z = x + iy` as a point of `R^{2N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealifiedPoint<T: Real> {
    pub x: Vec<T>,
    pub y: Vec<T>,
}

impl<T: Real> RealifiedPoint<T> {
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch(format!(
                "real part of length {}, imaginary part of length {}",
                x.len(),
                y.len()
            )));
        }
        Ok(Self { x, y })
    }

    pub fn from_state(psi: &PureState<T>) -> Self {
        let (x, y) = psi.amplitudes().iter().map(|z| (z.re, z.im)).unzip();
        Self { x, y }
    }

    pub fn to_state(&self) -> Result<PureState<T>> {
        PureState::new(self.z())
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn z(&self) -> Vec<Complex<T>> {
        self.x.iter().zip(&self.y).map(|(&a, &b)| c(a, b)).collect()
    }

    /// `c(z) = <z|z>`.
    pub fn norm_sqr(&self) -> T {
        self.x.iter().chain(&self.y).map(|&v| v * v).sum()
    }

    /// Flattened `(x, y)` coordinates.
    pub fn coords(&self) -> Vec<T> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    pub fn from_coords(coords: &[T]) -> Self {
        let n = coords.len() / 2;
        Self {
            x: coords[..n].to_vec(),
            y: coords[n..2 * n].to_vec(),
        }
    }
}

/// Partial derivatives with respect to `x` and `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient<T: Real> {
    pub dx: Vec<T>,
    pub dy: Vec<T>,
}

impl<T: Real> Gradient<T> {
    fn check(&self, other: &Self) {
        assert_eq!(self.dx.len(), other.dx.len(), "gradient length mismatch");
    }

    /// Dilation generator applied: `Σ x ∂/∂x + y ∂/∂y`.
    pub fn dilation(&self, p: &RealifiedPoint<T>) -> T {
        dot(&p.x, &self.dx) + dot(&p.y, &self.dy)
    }

    /// Phase generator applied: `Σ y ∂/∂x − x ∂/∂y`.
    pub fn phase(&self, p: &RealifiedPoint<T>) -> T {
        dot(&p.y, &self.dx) - dot(&p.x, &self.dy)
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&u, &v)| u * v).sum()
}

/// `{f, g}` from the gradients of `f` and `g`.
pub fn poisson_from_gradients<T: Real>(df: &Gradient<T>, dg: &Gradient<T>) -> T {
    df.check(dg);
    dot(&df.dy, &dg.dx) - dot(&df.dx, &dg.dy)
}

/// `(f, g)` from the gradients of `f` and `g`.
pub fn symmetric_from_gradients<T: Real>(df: &Gradient<T>, dg: &Gradient<T>) -> T {
    df.check(dg);
    dot(&df.dx, &dg.dx) + dot(&df.dy, &dg.dy)
}

/// `G̃(df, dg) = c·(f, g) − Δf·Δg − Γf·Γg`.
pub fn ray_metric_tensor<T: Real>(p: &RealifiedPoint<T>, df: &Gradient<T>, dg: &Gradient<T>) -> T {
    p.norm_sqr() * symmetric_from_gradients(df, dg)
        - df.dilation(p) * dg.dilation(p)
        - df.phase(p) * dg.phase(p)
}

/// `Λ̃(df, dg) = c·{f, g} − (Δf·Γg − Γf·Δg)`.
pub fn ray_poisson_tensor<T: Real>(p: &RealifiedPoint<T>, df: &Gradient<T>, dg: &Gradient<T>) -> T {
    p.norm_sqr() * poisson_from_gradients(df, dg) - (df.dilation(p) * dg.phase(p) - df.phase(p) * dg.dilation(p))
}

/// Central-difference gradient of an arbitrary function of the point.
pub fn numerical_gradient<T: Real>(f: impl Fn(&RealifiedPoint<T>) -> T, p: &RealifiedPoint<T>, h: T) -> Gradient<T> {
    let base = p.coords();
    let n = p.dim();
    let mut grad = vec![T::zero(); 2 * n];
    for (k, g) in grad.iter_mut().enumerate() {
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[k] = plus[k] + h;
        minus[k] = minus[k] - h;
        *g = (f(&RealifiedPoint::from_coords(&plus)) - f(&RealifiedPoint::from_coords(&minus))) / (T::two() * h);
    }
    Gradient {
        dx: grad[..n].to_vec(),
        dy: grad[n..].to_vec(),
    }
}

fn check_dim<T: Real>(op: &HermitianOperator<T>, p: &RealifiedPoint<T>) -> Result<()> {
    if op.dim() != p.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {} at a point of dimension {}",
            op.dim(),
            p.dim()
        )));
    }
    Ok(())
}

/// `f_A(z) = <z|A|z>`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticFunction<T: Real> {
    pub op: HermitianOperator<T>,
}

impl<T: Real> QuadraticFunction<T> {
    pub fn new(op: HermitianOperator<T>) -> Self {
        Self { op }
    }

    pub fn eval(&self, p: &RealifiedPoint<T>) -> Result<T> {
        check_dim(&self.op, p)?;
        self.op.quadratic_form(&p.z())
    }

    /// `(2 Re Az, 2 Im Az)`.
    pub fn gradient(&self, p: &RealifiedPoint<T>) -> Result<Gradient<T>> {
        check_dim(&self.op, p)?;
        let az = self.op.matrix().apply(&p.z())?;
        Ok(Gradient {
            dx: az.iter().map(|w| T::two() * w.re).collect(),
            dy: az.iter().map(|w| T::two() * w.im).collect(),
        })
    }
}

/// `e_A(z) = <z|A|z> / <z|z>`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationFunction<T: Real> {
    pub op: HermitianOperator<T>,
}

impl<T: Real> ExpectationFunction<T> {
    pub fn new(op: HermitianOperator<T>) -> Self {
        Self { op }
    }

    pub fn eval(&self, p: &RealifiedPoint<T>) -> Result<T> {
        check_dim(&self.op, p)?;
        let c = checked_norm_sqr(p)?;
        Ok(self.op.quadratic_form(&p.z())? / c)
    }

    /// `∇e_A = ∇f_A / c − f_A ∇c / c²` with `∇c = 2(x, y)`.
    pub fn gradient(&self, p: &RealifiedPoint<T>) -> Result<Gradient<T>> {
        let c = checked_norm_sqr(p)?;
        let quad = QuadraticFunction::new(self.op.clone());
        let f = quad.eval(p)?;
        let df = quad.gradient(p)?;
        let k = T::two() * f / (c * c);
        Ok(Gradient {
            dx: df.dx.iter().zip(&p.x).map(|(&g, &x)| g / c - k * x).collect(),
            dy: df.dy.iter().zip(&p.y).map(|(&g, &y)| g / c - k * y).collect(),
        })
    }
}

fn checked_norm_sqr<T: Real>(p: &RealifiedPoint<T>) -> Result<T> {
    let c = p.norm_sqr();
    let min = T::lit(MIN_RAY_NORM);
    if !(c.sqrt() >= min) {
        return Err(Error::ZeroVector);
    }
    Ok(c)
}

/// Coordinate Poisson bracket `{f_A, f_B}` at `p`.
pub fn poisson_bracket<T: Real>(f: &QuadraticFunction<T>, g: &QuadraticFunction<T>, p: &RealifiedPoint<T>) -> Result<T> {
    Ok(poisson_from_gradients(&f.gradient(p)?, &g.gradient(p)?))
}

/// Coordinate symmetric bracket `(f_A, f_B)` at `p`.
pub fn symmetric_bracket<T: Real>(f: &QuadraticFunction<T>, g: &QuadraticFunction<T>, p: &RealifiedPoint<T>) -> Result<T> {
    Ok(symmetric_from_gradients(&f.gradient(p)?, &g.gradient(p)?))
}

/// Complex quadratic function `F = f_A + i f_B`, stored as the operator pair `(A, B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPair<T: Real> {
    pub re: HermitianOperator<T>,
    pub im: HermitianOperator<T>,
}

impl<T: Real> OperatorPair<T> {
    pub fn new(re: HermitianOperator<T>, im: HermitianOperator<T>) -> Result<Self> {
        if re.dim() != im.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator pair of dimensions {} and {}",
                re.dim(),
                im.dim()
            )));
        }
        Ok(Self { re, im })
    }

    /// Splits `M = H + iK` with `H = ½(M + M†)` and `K = (M − M†)/2i`.
    pub fn from_matrix(m: &ComplexMatrix<T>) -> Result<Self> {
        let re = HermitianOperator::hermitian_part(m)?;
        let im = HermitianOperator::hermitian_part(&m.scale(c(T::zero(), -T::one())))?;
        Ok(Self { re, im })
    }

    pub fn unit(n: usize) -> Self {
        Self {
            re: HermitianOperator::identity(n),
            im: HermitianOperator::identity(n).scale(T::zero()),
        }
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    /// `A + iB`.
    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        self.re.matrix() + &self.im.matrix().scale(c(T::zero(), T::one()))
    }

    /// Complex conjugate function `f_A − i f_B`.
    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.scale(-T::one()),
        }
    }

    /// `F(z)`.
    pub fn eval(&self, p: &RealifiedPoint<T>) -> Result<Complex<T>> {
        let a = QuadraticFunction::new(self.re.clone()).eval(p)?;
        let b = QuadraticFunction::new(self.im.clone()).eval(p)?;
        Ok(c(a, b))
    }
}

/// `f_{A+iB} ∗ f_{M+iN} = f_{(A+iB)(M+iN)}`.
pub fn star_product<T: Real>(f: &OperatorPair<T>, g: &OperatorPair<T>) -> Result<OperatorPair<T>> {
    let prod = f.to_matrix().matmul(&g.to_matrix())?;
    OperatorPair::from_matrix(&prod)
}

fn ray_point<T: Real>(psi: &PureState<T>) -> Result<RealifiedPoint<T>> {
    let p = RealifiedPoint::from_state(psi);
    checked_norm_sqr(&p)?;
    Ok(p)
}

fn ray_check<T: Real>(a: &HermitianOperator<T>, b: &HermitianOperator<T>, psi: &PureState<T>) -> Result<()> {
    ray_point(psi)?;
    if a.dim() != psi.dim() || b.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operators of dimension {} and {} on a state of dimension {}",
            a.dim(),
            b.dim(),
            psi.dim()
        )));
    }
    Ok(())
}

/// `Λ̃(de_A, de_B)(ψ) = e_{i[A,B]}(ψ)`.
pub fn ray_poisson<T: Real>(a: &HermitianOperator<T>, b: &HermitianOperator<T>, psi: &PureState<T>) -> Result<T> {
    ray_check(a, b, psi)?;
    psi.expectation(&i_commutator(a, b)?)
}

/// `G̃(de_A, de_B)(ψ) = ½ e_{AB+BA}(ψ) − e_A(ψ) e_B(ψ)`.
pub fn ray_symmetric<T: Real>(a: &HermitianOperator<T>, b: &HermitianOperator<T>, psi: &PureState<T>) -> Result<T> {
    ray_check(a, b, psi)?;
    Ok(psi.expectation(&sym_product(a, b)?)? - psi.expectation(a)? * psi.expectation(b)?)
}

/// `((e_A, e_B)) = G̃ + e_A·e_B − (i/2)·Λ̃`, which closes to `e_{AB}`.
///
/// The `−i/2` weight on the Poisson part is what makes the product reproduce
/// `<AB>` with `Λ̃ = e_{i[A,B]}`.
pub fn ray_cstar_product<T: Real>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
    psi: &PureState<T>,
) -> Result<Complex<T>> {
    let sym = ray_symmetric(a, b, psi)?;
    let poisson = ray_poisson(a, b, psi)?;
    let pointwise = psi.expectation(a)? * psi.expectation(b)?;
    Ok(c(sym + pointwise, -T::half() * poisson))
}

/// The coordinate ray tensors evaluated on `(de_A, de_B)`: `(G̃, Λ̃)` in literal
/// coordinates, without using any operator identity.
pub fn coordinate_ray_brackets<T: Real>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
    psi: &PureState<T>,
) -> Result<(T, T)> {
    ray_check(a, b, psi)?;
    let p = RealifiedPoint::from_state(psi);
    let da = ExpectationFunction::new(a.clone()).gradient(&p)?;
    let db = ExpectationFunction::new(b.clone()).gradient(&p)?;
    Ok((ray_metric_tensor(&p, &da, &db), ray_poisson_tensor(&p, &da, &db)))
}
