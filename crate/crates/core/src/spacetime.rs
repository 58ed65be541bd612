//! The rational spacetime `M`, its light-cone form, and the boost subgroup
//! that maps it onto itself.
//!
//! A point belongs to `M` when it can be written as
//! `t = (n/m)(p² + q²)`, `x = (n/m)(p² − q²)` with `n, m, p, q` nonzero
//! integers. In light-cone coordinates `r = (t + x)/2`, `l = (t − x)/2` this
//! is `r = (n/m)p²`, `l = (n/m)q²`, so membership reduces to asking whether
//! `r/l` is the square of a rational. Everything here is exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{rational_square_root, serde_bigint, serde_text};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpacetimePoint {
    #[serde(with = "serde_text")]
    pub t: Rational,
    #[serde(with = "serde_text")]
    pub x: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LightConePoint {
    #[serde(with = "serde_text")]
    pub r: Rational,
    #[serde(with = "serde_text")]
    pub l: Rational,
}

/// Canonical integers `(n, m, p, q)` exhibiting a point as a member of `M`.
///
/// `p, q > 0` and coprime, `m > 0` and coprime to `n`; the sign sits on `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MWitness {
    #[serde(with = "serde_bigint")]
    pub n: BigInt,
    #[serde(with = "serde_bigint")]
    pub m: BigInt,
    #[serde(with = "serde_bigint")]
    pub p: BigInt,
    #[serde(with = "serde_bigint")]
    pub q: BigInt,
}

impl SpacetimePoint {
    pub fn new(t: Rational, x: Rational) -> Self {
        Self { t, x }
    }

    pub fn from_integers(t: i64, x: i64) -> Self {
        Self::new(BigInt::from(t).into(), BigInt::from(x).into())
    }

    pub fn to_lightcone(&self) -> LightConePoint {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        LightConePoint {
            r: (&self.t + &self.x) * &half,
            l: (&self.t - &self.x) * &half,
        }
    }

    /// Ratio `x/t`.
    pub fn velocity(&self) -> Result<Rational> {
        if self.t.is_zero() {
            return Err(Error::UndefinedVelocity);
        }
        Ok(&self.x / &self.t)
    }
}

impl LightConePoint {
    pub fn new(r: Rational, l: Rational) -> Self {
        Self { r, l }
    }

    pub fn to_spacetime(&self) -> SpacetimePoint {
        SpacetimePoint {
            t: &self.r + &self.l,
            x: &self.r - &self.l,
        }
    }
}

impl MWitness {
    /// The point this witness describes.
    pub fn point(&self) -> SpacetimePoint {
        let scale = Rational::new(self.n.clone(), self.m.clone());
        let p2 = &self.p * &self.p;
        let q2 = &self.q * &self.q;
        SpacetimePoint {
            t: &scale * Rational::from_integer(&p2 + &q2),
            x: &scale * Rational::from_integer(&p2 - &q2),
        }
    }
}

fn nonzero(name: &str, v: &BigInt) -> Result<()> {
    if v.is_zero() {
        Err(Error::invalid(format!("{name} must be nonzero")))
    } else {
        Ok(())
    }
}

/// `t = (n/m)(p² + q²)`, `x = (n/m)(p² − q²)`.
pub fn make_point(
    n: impl Into<BigInt>,
    m: impl Into<BigInt>,
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<SpacetimePoint> {
    let (n, m, p, q) = (n.into(), m.into(), p.into(), q.into());
    for (name, v) in [("n", &n), ("m", &m), ("p", &p), ("q", &q)] {
        nonzero(name, v)?;
    }
    let scale = Rational::new(n, m);
    let p2 = &p * &p;
    let q2 = &q * &q;
    Ok(SpacetimePoint {
        t: &scale * Rational::from_integer(&p2 + &q2),
        x: scale * Rational::from_integer(p2 - q2),
    })
}

/// Returns a canonical witness iff the point lies in `M`.
pub fn is_member(pt: &SpacetimePoint) -> Option<MWitness> {
    let lc = pt.to_lightcone();
    if lc.r.is_zero() || lc.l.is_zero() || lc.r.is_negative() != lc.l.is_negative() {
        return None;
    }
    let ratio = &lc.r / &lc.l;
    let root = rational_square_root(&ratio)?;
    let p = root.numer().clone();
    let q = root.denom().clone();
    let scale = &lc.r / Rational::from_integer(&p * &p);
    Some(MWitness {
        n: scale.numer().clone(),
        m: scale.denom().clone(),
        p,
        q,
    })
}

/// If `v` is an admissible velocity `(p² − q²)/(p² + q²)`, the canonical
/// generator `(p, q)` with `p, q > 0` coprime.
pub fn velocity_generator(v: &Rational) -> Option<(BigInt, BigInt)> {
    let one = Rational::one();
    if v.abs() >= one {
        return None;
    }
    // (1 + v)/(1 − v) = p²/q²
    let ratio = (&one + v) / (&one - v);
    let root = rational_square_root(&ratio)?;
    Some((root.numer().clone(), root.denom().clone()))
}

/// `(p² − q²)/(p² + q²)`.
pub fn spectral_velocity(p: &BigInt, q: &BigInt) -> Rational {
    let p2 = p * p;
    let q2 = q * q;
    Rational::new(&p2 - &q2, p2 + q2)
}

/// All distinct velocities `(p² − q²)/(p² + q²)` for `1 ≤ p, q ≤ max_pq`,
/// ascending.
pub fn velocity_spectrum(max_pq: u64) -> Result<Vec<Rational>> {
    if max_pq == 0 {
        return Err(Error::invalid("max_pq must be at least 1"));
    }
    let mut seen = BTreeSet::new();
    for p in 1..=max_pq {
        for q in 1..=max_pq {
            seen.insert(spectral_velocity(&BigInt::from(p), &BigInt::from(q)));
        }
    }
    Ok(seen.into_iter().collect())
}

/// An element of the boost subgroup, generated by nonzero integers `(p, q)`:
///
/// ```text
///            1   ⎡ p² + q²     −(p² − q²) ⎤
///   φ  =  ────── ⎢                        ⎥
///          2pq   ⎣ −(p² − q²)    p² + q²  ⎦
/// ```
///
/// The generator is stored reduced (`gcd(p, q) = 1`, `p > 0`), which makes it
/// a function of the matrix, so derived equality is matrix equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoostMatrix {
    pub a11: Rational,
    pub a12: Rational,
    pub a21: Rational,
    pub a22: Rational,
    p: BigInt,
    q: BigInt,
}

impl BoostMatrix {
    pub fn generator(&self) -> (&BigInt, &BigInt) {
        (&self.p, &self.q)
    }

    pub fn velocity(&self) -> Rational {
        spectral_velocity(&self.p, &self.q)
    }

    pub fn determinant(&self) -> Rational {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn is_identity(&self) -> bool {
        self.a11.is_one() && self.a22.is_one() && self.a12.is_zero() && self.a21.is_zero()
    }

    pub fn entries(&self) -> [[&Rational; 2]; 2] {
        [[&self.a11, &self.a12], [&self.a21, &self.a22]]
    }

    pub fn apply(&self, pt: &SpacetimePoint) -> SpacetimePoint {
        SpacetimePoint {
            t: &self.a11 * &pt.t + &self.a12 * &pt.x,
            x: &self.a21 * &pt.t + &self.a22 * &pt.x,
        }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &BoostMatrix) -> BoostMatrix {
        let (p, q) = canonical_generator(&self.p * &other.p, &self.q * &other.q);
        BoostMatrix {
            a11: &self.a11 * &other.a11 + &self.a12 * &other.a21,
            a12: &self.a11 * &other.a12 + &self.a12 * &other.a22,
            a21: &self.a21 * &other.a11 + &self.a22 * &other.a21,
            a22: &self.a21 * &other.a12 + &self.a22 * &other.a22,
            p,
            q,
        }
    }
}

fn canonical_generator(p: BigInt, q: BigInt) -> (BigInt, BigInt) {
    let g = p.gcd(&q);
    let (mut p, mut q) = (p / &g, q / g);
    if p.is_negative() {
        p = -p;
        q = -q;
    }
    (p, q)
}

pub fn boost(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<BoostMatrix> {
    let (p, q) = (p.into(), q.into());
    nonzero("p", &p)?;
    nonzero("q", &q)?;
    let p2 = &p * &p;
    let q2 = &q * &q;
    let two_pq = BigInt::from(2) * &p * &q;
    let diag = Rational::new(&p2 + &q2, two_pq.clone());
    let off = Rational::new(q2 - p2, two_pq);
    let (p, q) = canonical_generator(p, q);
    Ok(BoostMatrix {
        a11: diag.clone(),
        a12: off.clone(),
        a21: off,
        a22: diag,
        p,
        q,
    })
}

pub fn apply_boost(b: &BoostMatrix, pt: &SpacetimePoint) -> SpacetimePoint {
    b.apply(pt)
}

pub fn compose(b1: &BoostMatrix, b2: &BoostMatrix) -> BoostMatrix {
    b1.compose(b2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(t: Rational, x: Rational) -> SpacetimePoint {
        SpacetimePoint::new(t, x)
    }

    #[test]
    fn make_point_examples() {
        assert_eq!(make_point(1, 1, 2, 1).unwrap(), SpacetimePoint::from_integers(5, 3));
        assert_eq!(make_point(1, 1, 1, 1).unwrap(), SpacetimePoint::from_integers(2, 0));
        assert_eq!(make_point(-1, 2, 3, 1).unwrap(), SpacetimePoint::from_integers(-5, -4));
        assert!(matches!(make_point(0, 1, 1, 1), Err(Error::InvalidParameter(_))));
        assert!(make_point(1, 0, 1, 1).is_err());
        assert!(make_point(1, 1, 0, 1).is_err());
        assert!(make_point(1, 1, 1, 0).is_err());
    }

    #[test]
    fn lightcone_examples() {
        let lc = SpacetimePoint::from_integers(5, 3).to_lightcone();
        assert_eq!(lc, LightConePoint::new(q(4, 1), q(1, 1)));
        let lc = SpacetimePoint::from_integers(2, 0).to_lightcone();
        assert_eq!(lc, LightConePoint::new(q(1, 1), q(1, 1)));
        let back = LightConePoint::new(q(9, 2), q(1, 2)).to_spacetime();
        assert_eq!(back, SpacetimePoint::from_integers(5, 4));
    }

    #[test]
    fn membership_examples() {
        let w = is_member(&SpacetimePoint::from_integers(5, 3)).unwrap();
        assert_eq!(
            (w.n, w.m, w.p, w.q),
            (1.into(), 1.into(), 2.into(), 1.into())
        );
        assert!(is_member(&SpacetimePoint::from_integers(3, 1)).is_none());
        assert!(is_member(&SpacetimePoint::from_integers(2, 2)).is_none());
        // outside the light cone: r and l of opposite sign
        assert!(is_member(&SpacetimePoint::from_integers(1, 3)).is_none());
        assert!(is_member(&SpacetimePoint::from_integers(0, 0)).is_none());
    }

    #[test]
    fn negative_scale_witness() {
        let p = make_point(-1, 2, 3, 1).unwrap();
        let w = is_member(&p).unwrap();
        assert_eq!(w.n, BigInt::from(-1));
        assert_eq!(w.m, BigInt::from(2));
        assert_eq!((w.p.clone(), w.q.clone()), (3.into(), 1.into()));
        assert_eq!(w.point(), p);
    }

    #[test]
    fn boost_examples() {
        let b = boost(2, 1).unwrap();
        assert_eq!(b.entries(), [[&q(5, 4), &q(-3, 4)], [&q(-3, 4), &q(5, 4)]]);
        assert_eq!(b.velocity(), q(3, 5));
        let id = boost(1, 1).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.velocity(), q(0, 1));
        let b3 = boost(3, 1).unwrap();
        assert_eq!(b3.a11, q(5, 3));
        assert_eq!(b3.a12, q(-4, 3));
        assert_eq!(b3.velocity(), q(4, 5));
        assert!(boost(0, 1).is_err());
        assert!(boost(1, 0).is_err());
    }

    #[test]
    fn apply_examples() {
        let id = boost(1, 1).unwrap();
        let p = SpacetimePoint::from_integers(5, 3);
        assert_eq!(apply_boost(&id, &p), p);
        let b = boost(2, 1).unwrap();
        assert_eq!(
            apply_boost(&b, &SpacetimePoint::from_integers(2, 0)),
            pt(q(5, 2), q(-3, 2))
        );
        assert!(is_member(&apply_boost(&b, &p)).is_some());
    }

    #[test]
    fn compose_examples() {
        let b21 = boost(2, 1).unwrap();
        assert_eq!(compose(&b21, &boost(1, 1).unwrap()), b21);
        let sq = compose(&b21, &b21);
        assert_eq!(sq, boost(4, 1).unwrap());
        assert_eq!(sq.velocity(), q(15, 17));
        assert!(compose(&b21, &boost(1, 2).unwrap()).is_identity());
        assert_eq!(compose(&b21, &boost(1, 2).unwrap()), boost(1, 1).unwrap());
    }

    #[test]
    fn sign_of_generator() {
        // (−p, −q) is the same matrix; (p, −q) is its negative
        assert_eq!(boost(-2, -1).unwrap(), boost(2, 1).unwrap());
        let neg = boost(2, -1).unwrap();
        assert_eq!(neg.a11, q(-5, 4));
        assert_eq!(neg.determinant(), q(1, 1));
        assert_eq!(neg.generator(), (&BigInt::from(2), &BigInt::from(-1)));
    }

    #[test]
    fn velocity_examples() {
        assert_eq!(SpacetimePoint::from_integers(5, 3).velocity().unwrap(), q(3, 5));
        assert_eq!(SpacetimePoint::from_integers(2, 0).velocity().unwrap(), q(0, 1));
        assert_eq!(SpacetimePoint::from_integers(-5, -4).velocity().unwrap(), q(4, 5));
        assert_eq!(
            SpacetimePoint::from_integers(0, 1).velocity(),
            Err(Error::UndefinedVelocity)
        );
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(velocity_spectrum(1).unwrap(), vec![q(0, 1)]);
        assert_eq!(velocity_spectrum(2).unwrap(), vec![q(-3, 5), q(0, 1), q(3, 5)]);
        assert!(velocity_spectrum(0).is_err());
    }

    #[test]
    fn velocity_generators() {
        assert_eq!(velocity_generator(&q(3, 5)), Some((2.into(), 1.into())));
        assert_eq!(velocity_generator(&q(0, 1)), Some((1.into(), 1.into())));
        assert_eq!(velocity_generator(&q(-8, 17)), Some((3.into(), 5.into())));
        assert_eq!(velocity_generator(&q(1, 2)), None);
        assert_eq!(velocity_generator(&q(1, 1)), None);
    }
}
