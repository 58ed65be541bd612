//! Scalar abstractions.
//!
//! Two families are used across the crate. [`Real`] covers the IEEE types
//! (`f32`, `f64`) that the Bessel series, closed forms and the finite
//! difference checks run in. [`Scalar`] is the weaker bound needed to evaluate
//! an integer polynomial: it is satisfied by the floats and also by
//! [`BigRational`], which gives exact lattice propagators.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Floating point: f32 or f64.
pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Ring scalar a polynomial with big integer coefficients can be evaluated in.
pub trait Scalar: Num + Clone + Neg<Output = Self> + Debug {
    fn from_bigint(v: &BigInt) -> Self;
    fn from_rational(v: &BigRational) -> Self;
}

impl Scalar for f64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn from_rational(v: &BigRational) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f32().unwrap_or(f32::NAN)
    }

    fn from_rational(v: &BigRational) -> Self {
        v.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_rational(v: &BigRational) -> Self {
        v.clone()
    }
}
