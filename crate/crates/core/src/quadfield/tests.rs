use super::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn f5() -> FieldContext {
    FieldContext::new(5).unwrap()
}

#[test]
fn fundamental_units() {
    assert_eq!(f5().eps0(), OElem::new(-2, 1));
    assert_eq!(FieldContext::new(8).unwrap().eps0(), OElem::new(-3, 1));
    assert_eq!(FieldContext::new(13).unwrap().eps0(), OElem::new(-5, 1));
}

#[test]
fn rejects_bad_discriminants() {
    assert!(matches!(FieldContext::new(7), Err(Error::NotFundamentalDiscriminant(7))));
    assert!(matches!(FieldContext::new(20), Err(Error::NotFundamentalDiscriminant(20))));
    // Q(√3): fundamental unit has norm +1
    assert!(matches!(FieldContext::new(12), Err(Error::NarrowClassNumberNotOne { .. })));
    // Q(√10): class number two
    assert!(FieldContext::new(40).is_err());
}

#[test]
fn units_invert() {
    for d in [5, 8, 13, 17, 29] {
        let k = FieldContext::new(d).unwrap();
        assert_eq!(k.mul(k.eps0(), k.eps0_inv()), OElem::ONE);
        assert_eq!(k.mul(k.eps0_sq(), k.eps0_sq_inv()), OElem::ONE);
        assert!(k.is_totally_positive(k.eps0_sq()));
    }
}

#[test]
fn prime_splitting_d5() {
    let k = f5();
    assert_eq!(k.primes_above(2)[0].kind, PrimeKind::Inert);
    assert_eq!(k.primes_above(5)[0].kind, PrimeKind::Ramified);
    let p11 = k.primes_above(11);
    assert_eq!(p11.len(), 2);
    assert!(p11.iter().all(|p| p.norm == 11 && p.kind == PrimeKind::Split));
    assert_ne!(p11[0].ideal, p11[1].ideal);
    assert_eq!(k.ideal_mul(&p11[0].ideal, &p11[1].ideal), k.ideal_from_oelem(OElem::new(11, 0)).unwrap());
}

#[test]
fn sigma_values() {
    let k = f5();
    let two = k.ideal_from_oelem(OElem::new(2, 0)).unwrap();
    assert_eq!(k.sigma_ideal(&two, 1).unwrap(), BigInt::from(5));
    let eleven = k.ideal_from_oelem(OElem::new(11, 0)).unwrap();
    assert_eq!(k.sigma_ideal(&eleven, 1).unwrap(), BigInt::from(144));
    assert_eq!(k.sigma_ideal(&IdealHNF::UNIT, 3).unwrap(), BigInt::from(1));
}

#[test]
fn enumeration_counts() {
    let k = f5();
    let all = k.enumerate_tp_invdiff_xi(1, false);
    // trace one: ε0/√D and its conjugate
    assert_eq!(all.len(), 2);
    assert!(all.iter().all(|&x| k.xi_is_tp(x)));
    let orbits = k.enumerate_tp_invdiff_xi(1, true);
    assert_eq!(orbits.len(), 1);
    assert_eq!(orbits[0], k.xi_unit_ideal());
}

#[test]
fn generators_of_primes() {
    for d in [5, 8, 13] {
        let k = FieldContext::new(d).unwrap();
        for (pr, g) in k.primes_below(60).unwrap() {
            assert!(k.is_totally_positive(g));
            assert_eq!(k.norm(g) as u64, pr.norm);
            assert_eq!(k.ideal_from_oelem(g).unwrap(), pr.ideal);
        }
    }
}

#[test]
fn quadrat_inverse() {
    let k = f5();
    let x = QuadRat::from_ints(3, 7);
    let y = x.inv(&k).unwrap();
    assert!(x.mul(&y, &k).is_one());
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in -50i64..50, b in -50i64..50, c in -50i64..50, e in -50i64..50) {
        let k = f5();
        let x = OElem::new(a, b);
        let y = OElem::new(c, e);
        prop_assert_eq!(k.norm(k.mul(x, y)), k.norm(x) * k.norm(y));
        prop_assert_eq!(k.trace(k.conj(x)), k.trace(x));
    }

    #[test]
    fn reduction_is_orbit_invariant(q in 1i64..30, t in 0usize..100, n in -3i32..3) {
        let k = f5();
        let xs = k.enumerate_tp_invdiff_xi(q, false);
        let x = xs[t % xs.len()];
        let mut y = x;
        let u = if n >= 0 { k.eps0_sq() } else { k.eps0_sq_inv() };
        for _ in 0..n.abs() {
            y = k.xi_mul(y, u);
        }
        prop_assert_eq!(k.xi_reduce(x), k.xi_reduce(y));
        prop_assert_eq!(k.xi_min_trace(x), k.xi_min_trace(y));
        prop_assert_eq!(k.xi_norm(x), k.xi_norm(y));
    }

    #[test]
    fn ideal_of_product(a in 1i64..40, b in -20i64..20, c in 1i64..40, e in -20i64..20) {
        let k = f5();
        let x = OElem::new(a, b);
        let y = OElem::new(c, e);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let ix = k.ideal_from_oelem(x).unwrap();
        let iy = k.ideal_from_oelem(y).unwrap();
        prop_assert_eq!(k.ideal_mul(&ix, &iy), k.ideal_from_oelem(k.mul(x, y)).unwrap());
        prop_assert_eq!(ix.norm() as i128, k.norm(x).abs());
    }
}
