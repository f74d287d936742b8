//! Geometric formulation of finite-dimensional quantum mechanics.
//!
//! The crate is organized bottom-up:
//!
//! - [`numkernel`]: dense complex linear algebra (products, partial traces,
//!   Hermitian eigendecomposition, singular values, Ky Fan norm).
//! - [`states`]: pure and density states, Bloch and Schmidt decompositions.
//! - [`geometry`]: Kähler brackets on the realified Hilbert space, the star
//!   product, and ray tensors on expectation functions.
//! - [`pullback`]: pull-back tensor coefficients on local unitary orbits and the
//!   separability criteria built from them.
//! - [`gns`]: the GNS construction for the full matrix algebra.
//! - [`dynamics`]: Schrödinger evolution and the projective Riccati flow.
//! - [`cli`]: the `geoqm` command-line front end.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the double-precision instances used by the command-line tool.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod gns;
pub mod numkernel;
pub mod pullback;
pub mod random;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ComplexMatrix64 = numkernel::ComplexMatrix<f64>;
pub type ComplexMatrix32 = numkernel::ComplexMatrix<f32>;
pub type HermitianOperator64 = numkernel::HermitianOperator<f64>;
pub type PureState64 = states::PureState<f64>;
pub type PureState32 = states::PureState<f32>;
pub type DensityState64 = states::DensityState<f64>;
pub type DensityState32 = states::DensityState<f32>;
pub type LieAlgebraRep64 = pullback::LieAlgebraRep<f64>;
pub type CoefficientMatrix64 = pullback::CoefficientMatrix<f64>;
pub type SeparabilityReport64 = pullback::SeparabilityReport<f64>;
