//! Uniform-lattice checkerboard used as a baseline.
//!
//! Every segment has length `ε = t/N`, so a path with `R` bends contributes
//! `(iε)^{R−1}` and the sector polynomial is the bend-count histogram.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::paths::{count_paths, Direction};
use crate::polynomial::AmplitudePolynomial;
use crate::propagator::{closed_at, deviation_rows, matrix_from_components, Component, PropagatorMatrix, SweepRecord};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSpec {
    pub p: u32,
    pub q: u32,
    pub t: Rational,
}

impl LinearSpec {
    pub fn new(p: u32, q: u32, t: Rational) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::invalid("P and Q must both be at least 1"));
        }
        if !t.is_positive() {
            return Err(Error::invalid("t must be positive"));
        }
        Ok(Self { p, q, t })
    }

    /// Lattice with `N` segments ending at velocity `v`, if `N(1 ± v)/2` are
    /// positive integers.
    pub fn from_velocity(n: u32, v: &Rational, t: Rational) -> Result<Self> {
        let half_n = Rational::new(BigInt::from(n), BigInt::from(2));
        let one = Rational::from_integer(1.into());
        let p = &half_n * (&one + v);
        let q = &half_n * (&one - v);
        let whole = |r: &Rational| {
            if r.is_integer() && r.is_positive() {
                r.to_integer().to_u32()
            } else {
                None
            }
        };
        match (whole(&p), whole(&q)) {
            (Some(p), Some(q)) => Self::new(p, q, t),
            _ => Err(Error::domain(format!("N = {n} cannot reach v = {v} on the uniform lattice"))),
        }
    }

    pub fn segments(&self) -> u32 {
        self.p + self.q
    }

    /// `ε = t/N`.
    pub fn epsilon(&self) -> Rational {
        &self.t / Rational::from_integer(self.segments().into())
    }

    pub fn x(&self) -> Rational {
        self.epsilon() * Rational::from_integer(BigInt::from(self.p) - BigInt::from(self.q))
    }
}

/// `Σ_R count_paths(P, Q, start, end, R) · (iε)^{R−1}`.
pub fn linear_component(p: u32, q: u32, start: Direction, end: Direction) -> AmplitudePolynomial {
    let mut out = AmplitudePolynomial::zero();
    for bends in 1..=(p + q - 1) {
        let n = count_paths(p, q, start, end, bends);
        if !n.is_zero() {
            out.add_term(bends - 1, n.into());
        }
    }
    out
}

pub fn linear_matrix_rational(spec: &LinearSpec) -> PropagatorMatrix<Rational> {
    let components = Component::ALL.map(|c| {
        let (start, end) = c.sector();
        (c, linear_component(spec.p, spec.q, start, end))
    });
    let eps = spec.epsilon();
    matrix_from_components(&components, |poly| poly.evaluate_exact(&eps))
}

pub fn linear_matrix(spec: &LinearSpec) -> PropagatorMatrix<f64> {
    linear_matrix_rational(spec).map(|v| v.to_f64().unwrap_or(f64::NAN))
}

/// Deviation table of the uniform lattice against the closed forms. Sizes
/// that cannot reach `v` produce a `Skipped` record in place.
pub fn linear_converge(t: &Rational, v: &Rational, n_list: &[u32]) -> Result<Vec<SweepRecord>> {
    if !t.is_positive() {
        return Err(Error::invalid("t must be positive"));
    }
    let closed = closed_at(t, v)?;
    let chunks: Vec<Vec<SweepRecord>> = n_list
        .par_iter()
        .map(|&n| match LinearSpec::from_velocity(n, v, t.clone()) {
            Ok(spec) => deviation_rows(spec.p, spec.q, t, v, &linear_matrix(&spec), &closed),
            Err(e) => {
                log::warn!("skipping N = {n}: {e}");
                vec![SweepRecord::Skipped {
                    size: n,
                    reason: e.to_string(),
                }]
            }
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::Direction::{Left as L, Right as R};
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn component_examples() {
        assert_eq!(
            linear_component(2, 2, R, L),
            AmplitudePolynomial::one() + AmplitudePolynomial::monomial(2, 1)
        );
        assert_eq!(linear_component(5, 3, R, L).coefficient(4), BigInt::from(6));
        assert_eq!(linear_component(2, 1, R, R), AmplitudePolynomial::monomial(1, 1));
    }

    #[test]
    fn spec_from_velocity() {
        let s = LinearSpec::from_velocity(8, &q(1, 2), q(2, 1)).unwrap();
        assert_eq!((s.p, s.q), (6, 2));
        assert_eq!(s.epsilon(), q(1, 4));
        assert_eq!(s.x(), q(1, 1));
        assert!(LinearSpec::from_velocity(5, &q(0, 1), q(2, 1)).is_err());
        assert!(LinearSpec::from_velocity(4, &q(1, 1), q(2, 1)).is_err());
    }

    #[test]
    fn parity_at_rest() {
        let m = linear_matrix(&LinearSpec::new(5, 5, q(2, 1)).unwrap());
        assert_eq!(m.psi_pp, m.psi_mm);
        assert_eq!(m.psi_mp, m.psi_pm);
    }

    #[test]
    fn small_time_limit() {
        let m = linear_matrix(&LinearSpec::new(4, 4, q(1, 1_000_000)).unwrap());
        assert!((m.psi_mp.re - 1.0).abs() < 1e-12);
        assert!(m.psi_pp.norm() < 1e-6);
    }

    #[test]
    fn skipped_sizes() {
        let rows = linear_converge(&q(2, 1), &q(0, 1), &[8, 9, 16]).unwrap();
        assert_eq!(rows.len(), 9);
        assert!(matches!(rows[4], SweepRecord::Skipped { size: 9, .. }));
    }
}
