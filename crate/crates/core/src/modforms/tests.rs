use super::*;
use crate::fourier::FourierExpansion;

fn f5() -> FieldContext {
    FieldContext::new(5).unwrap()
}

#[test]
fn elliptic_basis_dimensions() {
    assert_eq!(elliptic_basis(4, 10).len(), 1);
    assert_eq!(elliptic_basis(12, 10).len(), 2);
    assert_eq!(elliptic_basis(24, 10).len(), 3);
    assert!(elliptic_basis(2, 10).is_empty());
    // Δ = q − 24q² + ... lies in M_12
    let b = elliptic_basis(12, 4);
    let delta = [0, 1, -24, 252].map(|n| BigRational::from_integer(n.into()));
    let rows: Vec<_> = b.iter().map(|s| s.coeffs.clone()).collect();
    assert!(crate::linalg::solve_in_span(&rows, &delta).is_some());
}

#[test]
fn eisenstein_normalizations_match_zeta() {
    let ctx = f5();
    // ζ_F(−1) = 1/30 ⇒ c₂ = 120
    let e2 = eisenstein(&ctx, 2, 8).unwrap();
    assert_eq!(e2.c_k, rat(120));
    for k in [4, 6, 8] {
        let e = eisenstein(&ctx, k, 6).unwrap();
        assert_eq!(e.c_k, rat(4) / zeta_f_neg(&ctx, k).unwrap());
    }
    let ctx8 = FieldContext::new(8).unwrap();
    assert_eq!(eisenstein(&ctx8, 2, 6).unwrap().c_k, rat(48));
}

#[test]
fn e2_squared_restricts_like_e4_elliptic() {
    // restriction of E₂² lies in M₈ = C·E₈
    let ctx = f5();
    let e2 = eisenstein(&ctx, 2, 8).unwrap().expansion;
    let sq = e2.mul(&e2).unwrap();
    let d = sq.diagonal_restriction();
    let b = elliptic_basis(8, d.len());
    let rows: Vec<_> = b.iter().map(|s| s.coeffs.clone()).collect();
    assert!(crate::linalg::solve_in_span(&rows, &d).is_some());
}

#[test]
fn bracket_symmetric_in_arguments() {
    let ctx = f5();
    let e2 = eisenstein(&ctx, 2, 8).unwrap().expansion;
    let e4 = eisenstein(&ctx, 4, 8).unwrap().expansion;
    let (a, m) = rc_bracket(&e2, &e4, 1).unwrap();
    let (b, _) = rc_bracket(&e4, &e2, 1).unwrap();
    assert_eq!(a.weight(), 8);
    assert!(a.is_cuspidal());
    assert_eq!(m.to_complex().re, -(2.0 * std::f64::consts::PI).powi(2));
    // [f,g]_ν = (−1)^ν·[g,f]_ν in one variable; the product over both variables is symmetric
    assert_eq!(a, b);
}

#[test]
fn bracket_agrees_with_derivative_route() {
    let ctx = f5();
    let e2 = eisenstein(&ctx, 2, 5).unwrap().expansion;
    let e4 = eisenstein(&ctx, 4, 5).unwrap().expansion;
    for (f, g, nu) in [(&e2, &e2, 1), (&e2, &e4, 1), (&e2, &e2, 2)] {
        let (a, _) = rc_bracket(f, g, nu).unwrap();
        let (b, _) = rc_bracket_via_derivatives(f, g, nu).unwrap();
        assert_eq!(a, b, "nu = {nu}");
    }
}

#[test]
fn bracket_order_zero_is_product() {
    let ctx = f5();
    let e2 = eisenstein(&ctx, 2, 6).unwrap().expansion;
    let (a, _) = rc_bracket(&e2, &e2, 0).unwrap();
    assert_eq!(a, e2.mul(&e2).unwrap());
}

#[test]
fn bracket_rejects_asymmetric_input() {
    let ctx = f5();
    let t = OrbitTable::get(&ctx, 4);
    let mut c = vec![BigRational::zero(); t.len()];
    // orbits of ξ and ξ' differ for some non-self-conjugate element
    let i = (0..t.len()).find(|&i| t.orbit_of(ctx.xi_conj(t.rep(i))) != Some(i)).unwrap();
    c[i] = rat(1);
    let f = FourierExpansion::from_parts(t, 2, BigRational::zero(), c);
    assert!(matches!(rc_bracket(&f, &f, 1), Err(Error::SymmetryViolated(_))));
}

#[test]
fn weight_six_space_is_one_dimensional() {
    let ctx = f5();
    let s = cusp_space(&ctx, 6, 16).unwrap();
    assert_eq!(s.dim(), 1);
    assert_eq!(s.independent[0].label, "[E_2,E_2]_1");
}

#[test]
fn odd_weight_rejected() {
    let ctx = f5();
    assert!(eisenstein(&ctx, 3, 4).is_err());
    assert!(cusp_space(&ctx, 7, 10).is_err());
}
