//! Quadratic checkerboard path sums for the 1+1 dimensional Dirac equation.
//!
//! The crate works on the rational spacetime `M` of points
//! `((n/m)(p² + q²), (n/m)(p² − q²))` and computes the four propagator
//! components as exact path sums over a lattice whose light-cone coordinates
//! are squares. The results are checked against brute-force path enumeration,
//! closed Bessel forms and a finite-difference Dirac residual.
//!
//! Exact quantities use [`Rational`]; real-valued code is generic over
//! [`Real`] (`f32`/`f64`), with `f64` aliases re-exported here.

pub mod bessel;
pub mod dirac;
pub mod error;
pub mod io;
pub mod linear;
pub mod paths;
pub mod polynomial;
pub mod propagator;
pub mod rational;
pub mod scalar;
pub mod spacetime;

pub use error::{Error, Result};
pub use paths::{Direction, LatticePath};
pub use polynomial::AmplitudePolynomial;
pub use propagator::{Component, LatticeSpec};
pub use scalar::{Real, Scalar};
pub use spacetime::{BoostMatrix, LightConePoint, MWitness, SpacetimePoint};

/// Arbitrary-precision rational in lowest terms.
pub type Rational = num_rational::BigRational;

pub type Complex64 = num_complex::Complex<f64>;
pub type PropagatorMatrix64 = propagator::PropagatorMatrix<f64>;
pub type ExactPropagatorMatrix = propagator::PropagatorMatrix<Rational>;
pub type Spinor64 = dirac::Spinor<f64>;
pub type SeriesResult64 = bessel::SeriesResult<f64>;
