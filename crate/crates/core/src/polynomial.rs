use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::scalar::Scalar;
use crate::Rational;

/// Exact path-sum value `Σ_k c_k (iε₀)^k` with integer coefficients.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AmplitudePolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl AmplitudePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(order: u32, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(order, coeff.into());
        p
    }

    pub fn add_term(&mut self, order: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(order).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&order);
        }
    }

    pub fn coefficient(&self, order: u32) -> BigInt {
        self.coeffs.get(&order).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Nonzero `(order, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// Value at `ε₀ = eps`, by Horner's rule in `z = i·eps` from the top order
    /// down. With `T = BigRational` the result is an exact Gaussian rational.
    pub fn evaluate<T: Scalar>(&self, eps: &T) -> Complex<T> {
        let Some(top) = self.degree() else {
            return Complex::new(T::zero(), T::zero());
        };
        let z = Complex::new(T::zero(), eps.clone());
        let mut acc = Complex::new(T::zero(), T::zero());
        for order in (0..=top).rev() {
            acc = acc * z.clone();
            if let Some(c) = self.coeffs.get(&order) {
                acc.re = acc.re + T::from_bigint(c);
            }
        }
        acc
    }
}

impl AmplitudePolynomial {
    /// Exact value at a rational `ε₀ = a/b`. Horner runs over integers on
    /// `Σ c_k (ia)^k b^{D−k}` and divides by `b^D` once at the end.
    pub fn evaluate_exact(&self, eps: &Rational) -> Complex<Rational> {
        let Some(top) = self.degree() else {
            return Complex::new(Rational::zero(), Rational::zero());
        };
        let ia = Complex::new(BigInt::zero(), eps.numer().clone());
        let b = eps.denom();
        let mut b_pow = BigInt::one();
        let mut acc = Complex::new(BigInt::zero(), BigInt::zero());
        for order in (0..=top).rev() {
            acc = acc * &ia;
            if let Some(c) = self.coeffs.get(&order) {
                acc.re += c * &b_pow;
            }
            b_pow *= b;
        }
        let scale = b_pow / b;
        Complex::new(Rational::new(acc.re, scale.clone()), Rational::new(acc.im, scale))
    }
}

impl AddAssign<&AmplitudePolynomial> for AmplitudePolynomial {
    fn add_assign(&mut self, rhs: &AmplitudePolynomial) {
        for (k, c) in rhs.terms() {
            self.add_term(k, c.clone());
        }
    }
}

impl Add for AmplitudePolynomial {
    type Output = AmplitudePolynomial;

    fn add(mut self, rhs: AmplitudePolynomial) -> AmplitudePolynomial {
        self += &rhs;
        self
    }
}

impl fmt::Display for AmplitudePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*(i*e0)")?,
                _ => write!(f, "{c}*(i*e0)^{k}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: `{"order": coefficient}` with string keys in ascending numeric
/// order and exact integer values.
impl Serialize for AmplitudePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use std::str::FromStr;
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (k, c) in self.terms() {
            let value = serde_json::Number::from_str(&c.to_string()).map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&k.to_string(), &value)?;
        }
        map.end()
    }
}
