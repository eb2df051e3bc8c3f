use super::*;
use crate::hecke::eigenforms;

fn f5() -> FieldContext {
    FieldContext::new(5).unwrap()
}

const N: i64 = 24;

#[test]
fn grid_for_weight_eight() {
    let g = grid(8).unwrap();
    let got: Vec<_> = g.iter().map(|p| ((p.k1, p.k2, p.nu), (p.s, p.w))).collect();
    assert_eq!(got.len(), 3);
    for want in [((2, 4, 1), (3, 2)), ((4, 2, 1), (5, 2)), ((2, 2, 2), (4, 3))] {
        assert!(got.contains(&want));
    }
    assert!(grid(6).is_err());
    let g12 = grid(12).unwrap();
    assert!(g12.iter().any(|p| (p.k1, p.k2, p.nu) == (4, 4, 2) && p.interior && (p.s, p.w) == (6, 3)));
    assert!(g12.iter().all(|p| (p.s - p.w) % 2 != 0));
}

#[test]
fn multiplier_is_real_and_uses_even_zeta_arguments() {
    let ctx = f5();
    for p in grid(12).unwrap() {
        let m = grid_multiplier(&ctx, &p).unwrap();
        assert_eq!(m.i_exp(), 0, "{}", p.label());
    }
}

#[test]
fn weight_eight_functional_equation_and_rationality() {
    let ctx = f5();
    let entries = grid_entries(&ctx, 8, N).unwrap();
    let m = CoefficientMatrix::new(8, eigenforms(&ctx, 8, N).unwrap(), &entries).unwrap();
    assert_eq!(m.forms.len(), 1);
    let f = funceq_check(&m);
    assert!(f.pass, "{:?}", f.checks);
    assert!(f.checks.iter().any(|c| c.description.starts_with("c_f(3,2) from (2,4,1) = c_f(5,2) from (4,2,1)")));
    let r = rationality_check(&m, &entries).unwrap();
    assert!(r.pass, "{:?}", r.entries);
    for (_, v) in &m.entries {
        assert_eq!(v[0].formal, FormalScalar::one());
        assert_eq!(v[0].value.0.len(), 1);
        assert!(!v[0].value.is_zero());
    }
    // minors exist after closure but hold by symmetry alone
    assert!(rank1_check(&m).unwrap().pass);
}

#[test]
fn projection_is_overdetermined_consistently() {
    let ctx = f5();
    let forms = eigenforms(&ctx, 8, N).unwrap();
    let e = estar_entry(&ctx, 2, 4, 1, N).unwrap();
    assert_eq!(project_upto(&e, &forms, 10).unwrap(), project(&e, &forms).unwrap());
    let zero = GridEntry { expansion: e.expansion.scale(&BigRational::zero()), ..e.clone() };
    assert!(project(&zero, &forms).unwrap().iter().all(|c| c.value.is_zero()));
}

#[test]
fn weight_ten_functional_equation() {
    let ctx = f5();
    let m = CoefficientMatrix::compute(&ctx, 10, N).unwrap();
    let rep = funceq_check(&m);
    assert!(rep.pass);
    for j in 0..m.forms.len() {
        assert!(rep.checks.iter().any(|c| c.form == j && c.description.starts_with("c_f(4,3) from (2,4,2) = c_f(6,3) from (4,2,2)")));
    }
}

#[test]
fn corrupted_multiplier_breaks_functional_equation() {
    let ctx = f5();
    let entries = grid_entries(&ctx, 8, N).unwrap();
    let mut bad = entries.clone();
    let i = bad.iter().position(|e| (e.point.k1, e.point.k2) == (2, 4)).unwrap();
    bad[i].multiplier = bad[i].multiplier.scale(&BigRational::from_integer(3.into()));
    let m = CoefficientMatrix::new(8, eigenforms(&ctx, 8, N).unwrap(), &bad).unwrap();
    assert!(!funceq_check(&m).pass);
}

fn weight_twelve() -> (Vec<GridEntry>, Vec<EigenformData>) {
    let ctx = f5();
    (grid_entries(&ctx, 12, N).unwrap(), eigenforms(&ctx, 12, N).unwrap())
}

#[test]
fn weight_twelve_rank_one_and_galois() {
    let (entries, forms) = weight_twelve();
    let m = CoefficientMatrix::new(12, forms, &entries).unwrap();
    let r = rank1_check(&m).unwrap();
    assert!(r.pass, "{:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    assert!(r.checks.iter().any(|c| c.description == "c(4,3)c(6,5) = c(4,5)c(6,3)"));
    let q = rationality_check(&m, &entries).unwrap();
    assert!(q.pass);
    assert!(!q.galois.is_empty());
    assert!(funceq_check(&m).pass);
    // gauge: changing anchors rescales each class by one exact factor
    let a = factor_lambda(&m, None).unwrap();
    let b = factor_lambda(&m, Some((6, 5))).unwrap();
    for (x, y) in a.iter().zip(&b) {
        let kf = &m.forms[x.form].hecke_field;
        let ratios: Vec<CfValue> = x.odd.iter().map(|(s, v)| y.odd[s].div(kf, v).unwrap()).collect();
        assert!(ratios.windows(2).all(|w| w[0].same(&w[1])));
    }
}

#[test]
fn corrupted_zeta_breaks_rank_one_and_rationality() {
    let ctx = f5();
    let (entries, forms) = weight_twelve();
    // ζ_F(6) doubled: touches (4,6,1), (6,4,1), (2,6,2), (6,2,2) only
    let bad_zeta = |m: i64| {
        let z = zeta_f_pos_formal(&ctx, m)?;
        Ok(if m == 6 { z.scale(&BigRational::from_integer(2.into())) } else { z })
    };
    let bad: Vec<GridEntry> = entries
        .iter()
        .map(|e| GridEntry { multiplier: grid_multiplier_with(&ctx, &e.point, &bad_zeta).unwrap(), ..e.clone() })
        .collect();
    let m = CoefficientMatrix::new(12, forms.clone(), &bad).unwrap();
    assert!(!rank1_check(&m).unwrap().pass);
    // ζ_F(4) carrying a stray π breaks purity
    let stray = |m: i64| {
        let z = zeta_f_pos_formal(&ctx, m)?;
        Ok(if m == 4 { z.mul(&FormalScalar::pi()) } else { z })
    };
    let bad: Vec<GridEntry> = entries
        .iter()
        .map(|e| GridEntry { multiplier: grid_multiplier_with(&ctx, &e.point, &stray).unwrap(), ..e.clone() })
        .collect();
    let m = CoefficientMatrix::new(12, forms.clone(), &bad).unwrap();
    let r = rationality_check(&m, &bad).unwrap();
    assert!(!r.pass);
    assert!(r.uniform_constant.is_none());
    // a uniform stray constant is reported as such
    let uniform: Vec<GridEntry> =
        entries.iter().map(|e| GridEntry { multiplier: e.multiplier.mul(&FormalScalar::pi()), ..e.clone() }).collect();
    let m = CoefficientMatrix::new(12, forms, &uniform).unwrap();
    let r = rationality_check(&m, &uniform).unwrap();
    assert!(!r.pass);
    assert!(r.uniform_constant.is_some());
}
