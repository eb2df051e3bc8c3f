use super::*;
use crate::modforms::eisenstein;

fn f5() -> FieldContext {
    FieldContext::new(5).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn small_cosets_present() {
    let ctx = f5();
    // (1, 1) has height √N(2) = 2
    let reps = coset_reps(&ctx, 2.0);
    let pairs: HashSet<(OElem, OElem)> = reps.iter().map(|r| (r.c, r.d)).collect();
    for (cc, dd) in [(OElem::ZERO, OElem::ONE), (OElem::ONE, OElem::ZERO), (OElem::ONE, OElem::ONE)] {
        let key = reduce_pair(&ctx, cc, dd);
        assert!(pairs.contains(&key), "{cc:?} {dd:?}");
    }
    // c = 0: d ∈ {±1, ±ε₀} modulo totally positive units
    let zs: Vec<_> = reps.iter().filter(|r| r.c.is_zero()).map(|r| r.d).collect();
    assert_eq!(zs.len(), 4, "{zs:?}");
}

#[test]
fn cosets_are_canonical_coprime_and_growing() {
    let ctx = f5();
    let r10 = coset_reps(&ctx, 10.0);
    let r20 = coset_reps(&ctx, 20.0);
    assert!(r10.len() < r20.len());
    for r in &r20 {
        assert_eq!(reduce_pair(&ctx, r.c, r.d), (r.c, r.d));
        assert_eq!(ctx.mul(r.a, r.d).sub(ctx.mul(r.b, r.c)), OElem::ONE);
        assert!(r.height(&ctx) <= 20.0 + 1e-9);
    }
    // unit multiples of a representative reduce back to it
    let u = ctx.eps0_sq();
    for r in r10.iter().take(50) {
        assert_eq!(reduce_pair(&ctx, ctx.mul(r.c, u), ctx.mul(r.d, u)), (r.c, r.d));
    }
}

#[test]
fn non_coprime_pairs_rejected() {
    let ctx = f5();
    assert!(complete_row(&ctx, OElem::new(2, 0), OElem::new(4, 0)).is_none());
    assert!(complete_row(&ctx, OElem::new(2, 0), OElem::new(0, 2)).is_none());
    assert!(complete_row(&ctx, OElem::new(2, 0), OElem::new(3, 0)).is_some());
}

#[test]
fn eisenstein_coset_sum_matches_fourier() {
    let ctx = f5();
    let z = (c(0.0, 1.0), c(0.0, 1.0));
    let num = eisenstein_numeric(&ctx, 6, z, 60.0).unwrap();
    let e = eisenstein(&ctx, 6, 20).unwrap().expansion;
    let (four, tail) = e.evaluate_numeric(z, None).unwrap();
    let four = four * 4.0;
    assert!((num.value - four).norm() < num.tail_estimate + 4.0 * tail + 1e-6, "{} vs {}", num.value, four);
}

#[test]
fn eisenstein_invariant_under_unit_scaling() {
    let ctx = f5();
    let z = (c(0.1, 0.8), c(-0.3, 1.3));
    let (e1, e2) = ctx.embed(ctx.eps0_sq());
    let zz = (z.0 * e1, z.1 * e2);
    let a = eisenstein_numeric(&ctx, 6, z, 40.0).unwrap();
    let b = eisenstein_numeric(&ctx, 6, zz, 40.0).unwrap();
    assert!((a.value - b.value).norm() < 10.0 * (a.tail_estimate + b.tail_estimate) + 1e-8);
    let a2 = eisenstein_numeric(&ctx, 6, z, 20.0).unwrap();
    assert!(a.tail_estimate < a2.tail_estimate);
}

#[test]
fn region_guards() {
    let ctx = f5();
    let z = (c(0.0, 1.0), c(0.0, 1.0));
    assert!(matches!(eisenstein_numeric(&ctx, 2, z, 5.0), Err(Error::RegionViolation(_))));
    assert!(matches!(cohen_kernel_numeric(&ctx, 8, c(7.0, 0.0), z, 5.0), Err(Error::RegionViolation(_))));
    assert!(matches!(
        double_eisenstein_numeric(&ctx, 12, c(6.0, 0.0), c(5.0, 0.0), z, 5.0),
        Err(Error::RegionViolation(_))
    ));
    assert!(in_double_region(12, c(6.0, 0.0), c(3.0, 0.0)));
}

#[test]
fn lipschitz_identity() {
    let ctx = f5();
    let z = (c(0.0, 1.0), c(0.0, 1.0));
    let (l, r, diff) = lipschitz_check(&ctx, c(3.0, 0.0), z, 200, 40).unwrap();
    assert!(diff < 1e-6, "{l} vs {r}");
    let (_, r41, _) = lipschitz_check(&ctx, c(3.0, 0.0), z, 8, 41).unwrap();
    assert!((r - r41).norm() < 1e-20_f64.max(r.norm() * 1e-15));
}

#[test]
fn lipschitz_over_several_fields() {
    for d in [5, 8, 13] {
        let ctx = FieldContext::new(d).unwrap();
        for (s, z) in [(c(3.0, 0.0), (c(0.2, 1.1), c(-0.4, 0.9))), (c(3.5, 0.7), (c(0.0, 1.3), c(0.1, 1.0)))] {
            let (l, r, diff) = lipschitz_check(&ctx, s, z, 120, 40).unwrap();
            assert!(diff < 1e-5 * l.norm().max(1.0), "D = {d}: {l} vs {r}");
        }
    }
}

#[test]
fn cohen_kernel_modular_under_inversion() {
    let ctx = f5();
    let z = (c(0.0, 1.1), c(0.0, 0.9));
    let inv = CosetRep { a: OElem::ZERO, b: OElem::new(-1, 0), c: OElem::ONE, d: OElem::ZERO };
    let gz = inv.act(&ctx, z);
    let s = c(4.0, 0.0);
    let a = cohen_kernel_numeric(&ctx, 8, s, z, 30.0).unwrap();
    let b = cohen_kernel_numeric(&ctx, 8, s, gz, 30.0).unwrap();
    let j = z.0 * z.1;
    let lhs = b.value * j.powi(-8);
    assert!((lhs - a.value).norm() < 1e-3 * a.value.norm().max(1e-30), "{lhs} vs {}", a.value);
}

#[test]
fn cohen_kernel_odd_weight_vanishes() {
    let ctx = f5();
    let z = (c(0.1, 1.0), c(0.0, 1.2));
    let r = cohen_kernel_numeric(&ctx, 5, c(3.0, 0.0), z, 10.0).unwrap();
    let scale = cohen_kernel_numeric(&ctx, 6, c(3.0, 0.0), z, 10.0).unwrap().value.norm();
    assert!(r.value.norm() < 1e-8 * scale.max(1.0));
}

#[test]
fn contour_derivative_of_exponential() {
    let f = |z: Point| (z.0 * 2.0 + z.1 * 3.0).exp();
    let z = (c(0.1, 0.2), c(-0.3, 0.5));
    let d = contour_derivative(f, z, 2, 1, 0.3, 32);
    let exact = f(z) * 12.0;
    assert!((d - exact).norm() < 1e-10 * exact.norm());
}

#[test]
fn point_adapted_truncation_is_equivariant() {
    let ctx = f5();
    let z = (c(0.1, 1.1), c(-0.2, 0.9));
    let (cc, dd) = (OElem::new(1, 1), OElem::new(2, 0));
    let (aa, bb) = complete_row(&ctx, cc, dd).unwrap();
    let g = CosetRep { a: aa, b: bb, c: cc, d: dd };
    let at_z: HashSet<(OElem, OElem)> = coset_reps_at(&ctx, 12.0, z).iter().map(|r| (r.c, r.d)).collect();
    // bottom row of δγ is (c_δ a + d_δ c, c_δ b + d_δ d)
    let moved: HashSet<(OElem, OElem)> = coset_reps_at(&ctx, 12.0, g.act(&ctx, z))
        .iter()
        .map(|r| {
            let c2 = ctx.mul(r.c, g.a).add(ctx.mul(r.d, g.c));
            let d2 = ctx.mul(r.c, g.b).add(ctx.mul(r.d, g.d));
            reduce_pair(&ctx, c2, d2)
        })
        .collect();
    assert!(!at_z.is_empty());
    assert_eq!(at_z, moved);
    let i = (c(0.0, 1.0), c(0.0, 1.0));
    assert_eq!(coset_reps_at(&ctx, 12.0, i), coset_reps(&ctx, 12.0));
}
