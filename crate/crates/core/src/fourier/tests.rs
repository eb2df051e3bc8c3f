use super::*;
use num_traits::One;
use proptest::prelude::*;

fn ctx5() -> FieldContext {
    FieldContext::new(5).unwrap()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `1 + c·Σ σ_r((ξ)𝔡)·q^ξ`.
fn divisor_series(ctx: &FieldContext, r: u32, c: i64, n: i64, weight: i64) -> FourierExpansion {
    let table = OrbitTable::get(ctx, n);
    let coeffs = table
        .reps()
        .iter()
        .map(|&x| {
            let m = ctx.ideal_from_oelem(x.as_oelem()).unwrap();
            BigRational::from_integer(ctx.sigma_ideal(&m, r).unwrap() * c)
        })
        .collect();
    FourierExpansion::from_parts(table, weight, BigRational::one(), coeffs)
}

#[test]
fn table_counts_and_prefix() {
    let ctx = ctx5();
    let t2 = OrbitTable::get(&ctx, 2);
    assert_eq!(t2.full().len(), 7);
    let t10 = OrbitTable::get(&ctx, 10);
    assert_eq!(&t10.reps()[..t2.len()], t2.reps());
    assert_eq!(t10.prefix_len(2), t2.len());
    // orbit expansion reproduces the full enumeration
    let total: usize = (0..t10.len()).map(|i| t10.members(i).len()).sum();
    assert_eq!(total, t10.full().len());
    for &(x, i) in t10.full() {
        assert_eq!(ctx.xi_reduce(x), t10.rep(i));
    }
}

#[test]
fn diagonal_of_weight_two_eisenstein() {
    let ctx = ctx5();
    let e2 = divisor_series(&ctx, 1, 120, 6, 2);
    let diag = e2.diagonal_restriction();
    let e4: Vec<BigRational> = (0..=6)
        .map(|n| if n == 0 { rat(1) } else { rat(240 * (1..=n).filter(|d| n % d == 0).map(|d| d * d * d).sum::<i64>()) })
        .collect();
    assert_eq!(diag, e4);
    assert!(e2.is_symmetric());
}

#[test]
fn ring_operations() {
    let ctx = ctx5();
    let f = divisor_series(&ctx, 1, 120, 12, 2);
    let g = divisor_series(&ctx, 3, 7, 12, 4);
    let one = FourierExpansion::constant_form(&ctx, rat(1), 12);
    assert_eq!(f.mul(&one).unwrap(), f);
    assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    let h = divisor_series(&ctx, 5, -3, 12, 6);
    assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
    assert!(f.scale(&rat(0)).is_zero());
    assert!(f.add(&g).is_err());
    // restriction is a ring map
    let prod = f.mul(&g).unwrap().diagonal_restriction();
    let (a, b) = (f.diagonal_restriction(), g.diagonal_restriction());
    for n in 0..=12usize {
        let cauchy: BigRational = (0..=n).map(|j| &a[j] * &b[n - j]).sum();
        assert_eq!(prod[n], cauchy);
    }
}

#[test]
fn truncation_and_equality() {
    let ctx = ctx5();
    let f = divisor_series(&ctx, 1, 120, 12, 2);
    let g = divisor_series(&ctx, 1, 120, 8, 2);
    assert!(f.equals_upto(&g, 8).unwrap());
    assert!(f.equals_upto(&g, 9).is_err());
    assert_eq!(f.truncate(8), g);
}

#[test]
fn json_roundtrip() {
    let ctx = ctx5();
    let f = divisor_series(&ctx, 3, 5, 6, 4);
    let j = f.to_json();
    assert_eq!(j["D"], 5);
    assert_eq!(j["ring"], "QQ");
    let g = FourierExpansion::from_json(&ctx, &j).unwrap();
    assert_eq!(f, g);
}

#[test]
fn raw_roundtrip_and_products() {
    let ctx = ctx5();
    let f = divisor_series(&ctx, 1, 120, 8, 2);
    let g = divisor_series(&ctx, 3, 2, 8, 4);
    let rf = RawExpansion::expand(&f);
    assert_eq!(rf.compress(2).unwrap(), f);
    let prod = rf.mul(&RawExpansion::expand(&g)).unwrap().compress(6).unwrap();
    assert_eq!(prod, f.mul(&g).unwrap());
    let (d, _) = RawExpansion::derivative(&f, 1, 0);
    assert!(d.compress(4).is_err());
}

/// Cauchy-contour derivative in the first variable.
fn contour_derivative<F: Fn(Complex64) -> Complex64>(f: F, z: Complex64, r: f64, m: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let e = Complex64::from_polar(1.0, t);
        acc += f(z + r * e) / e;
    }
    acc / (m as f64 * r)
}

#[test]
fn derivative_matches_numeric() {
    let ctx = ctx5();
    let f = divisor_series(&ctx, 1, 120, 20, 2);
    let z = (Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.1));
    let (d, mult) = RawExpansion::derivative(&f, 1, 0);
    let exact = d.evaluate_numeric(z) * mult.to_complex();
    let numeric = contour_derivative(|w| f.evaluate_numeric((w, z.1), None).unwrap().0, z.0, 0.05, 64);
    assert!((exact - numeric).norm() < 1e-6 * (1.0 + exact.norm()), "{exact} vs {numeric}");
    // coefficient at the index of 𝔡⁻¹ is a(ξ)·ξ
    let x = ctx.xi_unit_ideal();
    let pos = f.table().full().iter().position(|&(y, _)| y == x).unwrap();
    assert_eq!(d.coeffs()[pos], ctx.xi_to_quadrat(x).scale(&rat(120)));
}

#[test]
fn evaluation_tail_and_restriction() {
    let ctx = ctx5();
    let f = divisor_series(&ctx, 1, 120, 20, 2);
    let (v, tail) = f.evaluate_numeric((Complex64::new(0.0, 2.0), Complex64::new(0.0, 2.0)), None).unwrap();
    let q = (-4.0 * std::f64::consts::PI).exp();
    let diag: f64 = f.diagonal_restriction().iter().enumerate().map(|(n, c)| rat_f64(c) * q.powi(n as i32)).sum();
    assert!((v.re - diag).abs() <= tail.max(1e-12));
    let z = (Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.0));
    let (a, ta) = f.evaluate_numeric(z, None).unwrap();
    let (b, _) = divisor_series(&ctx, 1, 120, 10, 2).evaluate_numeric(z, None).unwrap();
    assert!((a - b).norm() > 0.0 || ta >= 0.0);
    assert!(f.evaluate_numeric(z, Some(0.0)).is_err());
    assert!(FourierExpansion::zero(&ctx, 2, 5).evaluate_numeric(z, None).unwrap().0.norm() == 0.0);
}

proptest! {
    #[test]
    fn convolution_distributes(c1 in -5i64..5, c2 in -5i64..5, c3 in -5i64..5) {
        let ctx = ctx5();
        let f = divisor_series(&ctx, 1, c1, 7, 2);
        let g = divisor_series(&ctx, 1, c2, 7, 2);
        let h = divisor_series(&ctx, 3, c3, 7, 4);
        let lhs = f.add(&g).unwrap().mul(&h).unwrap();
        let rhs = f.mul(&h).unwrap().add(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
