use checkerboard::spacetime::{apply_boost, boost, compose, is_member, make_point, spectral_velocity, velocity_generator};
use checkerboard::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn nonzero(bound: i64) -> impl Strategy<Value = i64> {
    (1..=bound, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

proptest! {
    #[test]
    fn closure_law(p1 in nonzero(1_000_000), q1 in nonzero(1_000_000), p2 in nonzero(1_000_000), q2 in nonzero(1_000_000)) {
        let lhs = compose(&boost(p1, q1).unwrap(), &boost(p2, q2).unwrap());
        let rhs = boost(BigInt::from(p1) * p2, BigInt::from(q1) * q2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_determinant(p in nonzero(1_000_000), q in nonzero(1_000_000)) {
        prop_assert!(boost(p, q).unwrap().determinant().is_one());
    }

    #[test]
    fn inverse_pair(p in nonzero(10_000), q in nonzero(10_000)) {
        prop_assert!(compose(&boost(p, q).unwrap(), &boost(q, p).unwrap()).is_identity());
    }

    #[test]
    fn associativity(a in nonzero(500), b in nonzero(500), c in nonzero(500), d in nonzero(500), e in nonzero(500), f in nonzero(500)) {
        let (x, y, z) = (boost(a, b).unwrap(), boost(c, d).unwrap(), boost(e, f).unwrap());
        prop_assert_eq!(compose(&compose(&x, &y), &z), compose(&x, &compose(&y, &z)));
    }

    #[test]
    fn make_point_inside_cone(n in nonzero(1000), m in nonzero(1000), p in nonzero(1000), q in nonzero(1000)) {
        let pt = make_point(n, m, p, q).unwrap();
        prop_assert!(pt.x.abs() < pt.t.abs());
    }

    #[test]
    fn witness_soundness(n in nonzero(1000), m in nonzero(1000), p in nonzero(1000), q in nonzero(1000)) {
        let pt = make_point(n, m, p, q).unwrap();
        let w = is_member(&pt).expect("constructed points are members");
        prop_assert!(w.p.is_positive() && w.q.is_positive() && w.m.is_positive());
        prop_assert!(num_integer::Integer::gcd(&w.p, &w.q).is_one());
        prop_assert!(num_integer::Integer::gcd(&w.n, &w.m).is_one());
        let again = make_point(w.n.clone(), w.m.clone(), w.p.clone(), w.q.clone()).unwrap();
        prop_assert_eq!(again, pt);
    }

    #[test]
    fn boosts_preserve_membership(n in nonzero(100), m in nonzero(100), p in nonzero(100), q in nonzero(100),
                                  bp in nonzero(1000), bq in nonzero(1000)) {
        let pt = make_point(n, m, p, q).unwrap();
        let image = apply_boost(&boost(bp, bq).unwrap(), &pt);
        prop_assert!(is_member(&image).is_some());
        // the velocity of the image is again spectral
        let v = image.velocity().unwrap();
        let (a, b) = velocity_generator(&v).expect("spectral velocity");
        prop_assert_eq!(spectral_velocity(&a, &b), v);
    }

    #[test]
    fn lightcone_round_trip(tn in -1000i64..1000, td in 1i64..50, xn in -1000i64..1000, xd in 1i64..50) {
        let pt = checkerboard::SpacetimePoint::new(Rational::new(tn.into(), td.into()), Rational::new(xn.into(), xd.into()));
        prop_assert_eq!(pt.to_lightcone().to_spacetime(), pt);
    }

    #[test]
    fn spectrum_is_symmetric(max in 1u64..12) {
        let s = checkerboard::spacetime::velocity_spectrum(max).unwrap();
        for v in &s {
            prop_assert!(s.binary_search(&-v.clone()).is_ok());
            prop_assert!(v.abs() < Rational::one());
        }
        prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn spectrum_matches_brute_force() {
    let max = 9u64;
    let mut expected: Vec<Rational> = Vec::new();
    for p in 1..=max {
        for q in 1..=max {
            let v = Rational::new(BigInt::from(p * p) - q * q, BigInt::from(p * p + q * q));
            if !expected.contains(&v) {
                expected.push(v);
            }
        }
    }
    expected.sort();
    assert_eq!(checkerboard::spacetime::velocity_spectrum(max).unwrap(), expected);
}
