use super::*;
use crate::modforms::eisenstein;

fn f5() -> FieldContext {
    FieldContext::new(5).unwrap()
}

#[test]
fn zero_form_maps_to_zero() {
    let ctx = f5();
    let z = FourierExpansion::zero(&ctx, 6, 10);
    let (p, _) = ctx.primes_below(4).unwrap().remove(0);
    assert!(hecke_operator(&z, &p.ideal).unwrap().is_zero());
}

#[test]
fn eisenstein_is_eigen_with_divisor_sum() {
    let ctx = f5();
    for k in [2, 4] {
        let e = eisenstein(&ctx, k, 16).unwrap().expansion;
        for (p, _) in ctx.primes_below(11).unwrap() {
            let t = hecke_operator(&e, &p.ideal).unwrap();
            let lam = BigRational::one() + rat(p.norm as i64).pow((k - 1) as i32);
            assert!(t.trace_bound() >= 1);
            assert_eq!(t, e.truncate(t.trace_bound()).scale(&lam), "k = {k}, N(p) = {}", p.norm);
        }
    }
}

#[test]
fn weight_six_eigenform() {
    let ctx = f5();
    let fs = eigenforms(&ctx, 6, 24).unwrap();
    assert_eq!(fs.len(), 1);
    let f = &fs[0];
    assert_eq!(f.hecke_field.degree(), 1);
    assert!(f.verified_primes.len() >= 3);
    let two = ctx.primes_below(4).unwrap().remove(0).0;
    let a2 = f.eigenvalue(&two.ideal).unwrap();
    let four = ctx.ideal_mul(&two.ideal, &two.ideal);
    if let Some(a4) = f.coeff_ideal(&four).unwrap() {
        let k = &f.hecke_field;
        assert_eq!(a4, k.sub(&k.mul(a2, a2), &k.from_rational(rat(4).pow(5))));
    }
}

#[test]
fn lseries_matches_fourier_data() {
    let ctx = f5();
    let fs = eigenforms(&ctx, 8, 24).unwrap();
    for f in &fs {
        let l = lseries_coeffs(f, 60).unwrap();
        assert_eq!(l[&IdealHNF::UNIT], f.hecke_field.one());
        let mut checked = 0;
        for (m, v) in &l {
            if let Some(c) = f.coeff_ideal(m).unwrap() {
                assert_eq!(&c, v, "ideal of norm {}", m.norm());
                checked += 1;
            }
        }
        assert!(checked > 10);
    }
}

#[test]
fn missing_prime_reported() {
    let ctx = f5();
    let fs = eigenforms(&ctx, 6, 24).unwrap();
    assert!(matches!(lseries_coeffs(&fs[0], 1_000_000), Err(Error::MissingPrime(_))));
}

#[test]
fn matrices_commute_and_have_real_spectrum() {
    let ctx = f5();
    let s = cusp_space(&ctx, 8, 24).unwrap();
    let mats: Vec<QMat> = usable_primes(&s, 25).unwrap().into_iter().map(|(_, m)| m).collect();
    assert!(mats.len() >= 3);
    assert!(matrices_commute(&mats));
    for m in &mats {
        assert!(charpoly(m).all_roots_real());
    }
}

#[test]
fn conjugate_root_rebuild_matches_conjugation() {
    let ctx = f5();
    let fs = eigenforms(&ctx, 10, 24).unwrap();
    let f = fs.iter().find(|f| f.hecke_field.degree() == 2).expect("quadratic Hecke field at k = 10");
    let k = &f.hecke_field;
    let g = eigenform_at(f, k.conjugate(&f.theta).unwrap()).unwrap();
    let h = f.conjugate().unwrap();
    assert_eq!(g.coords, h.coords);
    for ((p, a), (_, b)) in g.eigenvalues.iter().zip(&h.eigenvalues).take(5) {
        assert_eq!(a, b, "N(p) = {}", p.norm);
    }
    assert_ne!(g.coords, f.coords);
}
