//! Critical values through double Eisenstein series: exact grid entries
//! `E*_{s,k−s}(·; w)` from Rankin–Cohen brackets, their spectral coefficients
//! `c_f(s, w) = Λ(f,s)Λ(f,w)/⟨f,f⟩`, and the identities those must satisfy.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::hecke::{eigenform_at, EigenformData};
use crate::modforms::{eisenstein, rc_bracket};
use crate::numberfield::{NfElem, NumberField};
use crate::quadfield::FieldContext;
use crate::scalars::{alpha_constant_with, gamma_int, zeta_f_pos_formal, FormalScalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// A reachable point `(s, w) = (k₁+ν, ν+1)` with its construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GridPoint {
    pub k1: i64,
    pub k2: i64,
    pub nu: i64,
    pub s: i64,
    pub w: i64,
    /// Strictly inside the absolute-convergence region (`k₁, k₂ ≥ 4`).
    pub interior: bool,
}

impl GridPoint {
    pub fn label(&self) -> String {
        format!("({},{},{})", self.k1, self.k2, self.nu)
    }
}

/// All `(k₁, k₂, ν)` with `k₁, k₂ ≥ 2` even, `ν ≥ 1`, `k₁ + k₂ + 2ν = k`.
pub fn grid(k: i64) -> Result<Vec<GridPoint>> {
    if k < 8 || k % 2 != 0 {
        return Err(Error::Precondition(format!("grid needs even k >= 8, got {k}")));
    }
    let mut out = Vec::new();
    for nu in 1..=(k - 4) / 2 {
        for k1 in (2..=k - 2 * nu - 2).step_by(2) {
            let k2 = k - 2 * nu - k1;
            out.push(GridPoint { k1, k2, nu, s: k1 + nu, w: nu + 1, interior: k1 >= 4 && k2 >= 4 });
        }
    }
    Ok(out)
}

/// `E*_{s,k−s}(·; w)` as an exact expansion times a formal scalar.
#[derive(Clone, Debug)]
pub struct GridEntry {
    pub k: i64,
    pub point: GridPoint,
    pub expansion: FourierExpansion,
    pub multiplier: FormalScalar,
}

fn frac(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// `2α·(1/4)(Γ(k₁)Γ(ν+1)/Γ(k₁+ν))²(Γ(k₂)/Γ(k₂+ν))²·(2πi)^{2ν}·16`.
///
/// The factor 16 converts brackets of the normalized series (constant term
/// 1) to brackets of the coset sums (constant term 4).
pub fn grid_multiplier_with(
    ctx: &FieldContext,
    p: &GridPoint,
    zeta_pos: &dyn Fn(i64) -> Result<FormalScalar>,
) -> Result<FormalScalar> {
    let k = p.k1 + p.k2 + 2 * p.nu;
    let alpha = alpha_constant_with(ctx, k, p.s, p.w, zeta_pos)?;
    let g = |n: i64| gamma_int(n);
    let r1 = frac(g(p.k1)? * g(p.nu + 1)?, g(p.k1 + p.nu)?);
    let r2 = frac(g(p.k2)?, g(p.k2 + p.nu)?);
    let q = BigRational::from_integer(8.into()) * &r1 * &r1 * &r2 * &r2;
    let two_pi_i = FormalScalar::from_int(2).mul(&FormalScalar::pi()).mul(&FormalScalar::i());
    Ok(alpha.scale(&q).mul(&two_pi_i.pow(2 * p.nu)?))
}

pub fn grid_multiplier(ctx: &FieldContext, p: &GridPoint) -> Result<FormalScalar> {
    grid_multiplier_with(ctx, p, &|m| zeta_f_pos_formal(ctx, m))
}

/// The grid entry for `(k₁, k₂, ν)` at trace bound `n`.
pub fn estar_entry(ctx: &FieldContext, k1: i64, k2: i64, nu: i64, n: i64) -> Result<GridEntry> {
    estar_entry_with(ctx, k1, k2, nu, n, &|m| zeta_f_pos_formal(ctx, m))
}

/// [`estar_entry`] with a caller-supplied `ζ_F(m)`.
pub fn estar_entry_with(
    ctx: &FieldContext,
    k1: i64,
    k2: i64,
    nu: i64,
    n: i64,
    zeta_pos: &dyn Fn(i64) -> Result<FormalScalar>,
) -> Result<GridEntry> {
    if nu < 1 || k1 < 2 || k2 < 2 || k1 % 2 != 0 || k2 % 2 != 0 {
        return Err(Error::Precondition(format!("({k1},{k2},{nu}) is not a grid point")));
    }
    let k = k1 + k2 + 2 * nu;
    let point = GridPoint { k1, k2, nu, s: k1 + nu, w: nu + 1, interior: k1 >= 4 && k2 >= 4 };
    // ζ arguments are k₁ and k₂, both even
    assert_eq!((1 - point.w + point.s) % 2, 0);
    let e1 = eisenstein(ctx, k1, n)?.expansion;
    let e2 = eisenstein(ctx, k2, n)?.expansion;
    let (expansion, _) = rc_bracket(&e1, &e2, nu)?;
    if !expansion.is_cuspidal() {
        return Err(Error::Precondition(format!("bracket ({k1},{k2},{nu}) is not cuspidal")));
    }
    let multiplier = grid_multiplier_with(ctx, &point, zeta_pos)?;
    Ok(GridEntry { k, point, expansion, multiplier })
}

/// A Hecke-field number times a formal monomial `i^a π^b √D^c`; the rational
/// part of the scalar is folded into the number.
#[derive(Clone, Debug, PartialEq)]
pub struct CfValue {
    pub value: NfElem,
    pub formal: FormalScalar,
}

impl CfValue {
    pub fn new(k: &NumberField, x: &NfElem, s: &FormalScalar) -> Self {
        let q = s.q().clone();
        let formal = if q.is_zero() {
            FormalScalar::one()
        } else {
            s.scale(&q.recip())
        };
        let value = k.scale(x, &q);
        CfValue { value, formal }
    }

    /// Formal part exactly 1.
    pub fn is_pure(&self) -> bool {
        self.formal == FormalScalar::one() || self.value.is_zero()
    }

    pub fn mul(&self, k: &NumberField, o: &CfValue) -> CfValue {
        CfValue { value: k.mul(&self.value, &o.value), formal: self.formal.mul(&o.formal) }
    }

    pub fn div(&self, k: &NumberField, o: &CfValue) -> Result<CfValue> {
        Ok(CfValue { value: k.div(&self.value, &o.value)?, formal: self.formal.div(&o.formal)? })
    }

    /// Exact equality as numbers (zero equals zero whatever the formal part).
    pub fn same(&self, o: &CfValue) -> bool {
        if self.value.is_zero() || o.value.is_zero() {
            return self.value.is_zero() && o.value.is_zero();
        }
        self.formal == o.formal && self.value == o.value
    }

    pub fn display(&self, k: &NumberField) -> String {
        if self.formal == FormalScalar::one() {
            k.display(&self.value)
        } else {
            format!("{} * {}", k.display(&self.value), self.formal)
        }
    }

    pub fn to_json(&self, k: &NumberField) -> serde_json::Value {
        serde_json::json!({ "value": k.to_strings(&self.value), "formal": self.formal })
    }
}

/// `c_f` for every form: exact coordinates of the entry in the eigenbasis
/// times the multiplier.
pub fn project(entry: &GridEntry, forms: &[EigenformData]) -> Result<Vec<CfValue>> {
    project_upto(entry, forms, entry.expansion.trace_bound())
}

/// [`project`] solving only on coefficients up to trace `t`.
pub fn project_upto(entry: &GridEntry, forms: &[EigenformData], t: i64) -> Result<Vec<CfValue>> {
    let Some(f0) = forms.first() else {
        if entry.expansion.is_zero() {
            return Ok(Vec::new());
        }
        return Err(Error::NotInSpan(format!("{} is nonzero but the cusp space is empty", entry.point.label())));
    };
    let y = f0.space.coordinates(&entry.expansion.truncate(t)).ok_or_else(|| {
        Error::NotInSpan(format!("bracket {} is not in the computed cusp span", entry.point.label()))
    })?;
    forms
        .iter()
        .map(|f| {
            let c = f.project(&y)?;
            Ok(CfValue::new(&f.hecke_field, &c, &entry.multiplier))
        })
        .collect()
}

/// `c_f(s, w)` over the grid of one weight.
#[derive(Clone, Debug)]
pub struct CoefficientMatrix {
    pub k: i64,
    pub forms: Vec<EigenformData>,
    pub entries: Vec<(GridPoint, Vec<CfValue>)>,
}

impl CoefficientMatrix {
    /// Projects every entry onto every form.
    pub fn new(k: i64, forms: Vec<EigenformData>, entries: &[GridEntry]) -> Result<Self> {
        let rows = entries
            .iter()
            .map(|e| Ok((e.point, project(e, &forms)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoefficientMatrix { k, forms, entries: rows })
    }

    /// Grid entries and forms of weight `k` at trace bound `n`.
    pub fn compute(ctx: &FieldContext, k: i64, n: i64) -> Result<Self> {
        let forms = crate::hecke::eigenforms(ctx, k, n)?;
        let entries = grid_entries(ctx, k, n)?;
        Self::new(k, forms, &entries)
    }

    /// Orbit of every entry under `(s,w) ↦ (w,s)` and `(s,w) ↦ (k−s,w)`,
    /// for form `j`; each slot keeps its first value and provenance.
    pub fn closure(&self, j: usize) -> BTreeMap<(i64, i64), (CfValue, String)> {
        let mut out = BTreeMap::new();
        for (p, vals) in &self.entries {
            for q in symmetry_orbit(self.k, p.s, p.w) {
                out.entry(q).or_insert_with(|| (vals[j].clone(), p.label()));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .entries
            .iter()
            .map(|(p, vals)| {
                serde_json::json!({
                    "provenance": [p.k1, p.k2, p.nu],
                    "s": p.s,
                    "w": p.w,
                    "interior": p.interior,
                    "c_f": vals.iter().zip(&self.forms).map(|(v, f)| v.to_json(&f.hecke_field)).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "weight": self.k,
            "forms": self.forms.iter().map(|f| f.hecke_field.poly().to_strings()).collect::<Vec<_>>(),
            "entries": rows,
        })
    }
}

/// Every grid entry of weight `k`, computed in parallel.
pub fn grid_entries(ctx: &FieldContext, k: i64, n: i64) -> Result<Vec<GridEntry>> {
    grid(k)?.par_iter().map(|p| estar_entry(ctx, p.k1, p.k2, p.nu, n)).collect()
}

/// Images of `(s, w)` under the functional equations.
pub fn symmetry_orbit(k: i64, s: i64, w: i64) -> Vec<(i64, i64)> {
    let mut v = vec![(s, w), (k - s, w), (w, s), (w, k - s), (s, k - w), (k - s, k - w), (k - w, s), (k - w, k - s)];
    v.sort();
    v.dedup();
    v
}

/// One exact identity and whether it held.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub form: usize,
    pub description: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

impl Report {
    fn from_checks(checks: Vec<IdentityCheck>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report { checks, pass }
    }
}

/// Every pair of entries related by the functional equations must agree.
pub fn funceq_check(m: &CoefficientMatrix) -> Report {
    let mut checks = Vec::new();
    for (j, f) in m.forms.iter().enumerate() {
        let kf = &f.hecke_field;
        for (a, (pa, va)) in m.entries.iter().enumerate() {
            for (pb, vb) in &m.entries[a + 1..] {
                let orbit = symmetry_orbit(m.k, pa.s, pa.w);
                if !orbit.contains(&(pb.s, pb.w)) {
                    continue;
                }
                let rel = if (pb.s, pb.w) == (pa.s, pa.w) {
                    "same point".to_string()
                } else if (pb.s, pb.w) == (m.k - pa.s, pa.w) {
                    "s <-> k-s".to_string()
                } else {
                    "functional-equation orbit".to_string()
                };
                checks.push(IdentityCheck {
                    form: j,
                    description: format!(
                        "c_f({},{}) from {} = c_f({},{}) from {} [{rel}]",
                        pa.s,
                        pa.w,
                        pa.label(),
                        pb.s,
                        pb.w,
                        pb.label()
                    ),
                    lhs: va[j].display(kf),
                    rhs: vb[j].display(kf),
                    pass: va[j].same(&vb[j]),
                });
            }
        }
    }
    Report::from_checks(checks)
}

/// Every available 2×2 minor of the closed matrix vanishes, per form.
pub fn rank1_check(m: &CoefficientMatrix) -> Result<Report> {
    let mut checks = Vec::new();
    for (j, f) in m.forms.iter().enumerate() {
        let kf = &f.hecke_field;
        let c = m.closure(j);
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = c.keys().map(|k| k.0).collect();
            r.dedup();
            r
        };
        for (i1, &s1) in rows.iter().enumerate() {
            for &s2 in &rows[i1 + 1..] {
                let cols: Vec<i64> = c.keys().filter(|k| k.0 == s1 && c.contains_key(&(s2, k.1))).map(|k| k.1).collect();
                for (a, &w1) in cols.iter().enumerate() {
                    for &w2 in &cols[a + 1..] {
                        let (x11, _) = &c[&(s1, w1)];
                        let (x22, _) = &c[&(s2, w2)];
                        let (x12, _) = &c[&(s1, w2)];
                        let (x21, _) = &c[&(s2, w1)];
                        let l = x11.mul(kf, x22);
                        let r = x12.mul(kf, x21);
                        checks.push(IdentityCheck {
                            form: j,
                            description: format!("c({s1},{w1})c({s2},{w2}) = c({s1},{w2})c({s2},{w1})"),
                            lhs: l.display(kf),
                            rhs: r.display(kf),
                            pass: l.same(&r),
                        });
                    }
                }
            }
        }
    }
    if checks.is_empty() {
        return Err(Error::GridTooSparse(format!("no 2x2 minor is available at k = {}", m.k)));
    }
    Ok(Report::from_checks(checks))
}

/// `λ̂(s) = Λ(f,s)/Λ(f,s₀)` within each parity class, for one form.
#[derive(Clone, Debug)]
pub struct LambdaRatios {
    pub form: usize,
    /// Anchors `s₀` for the even and odd classes.
    pub anchors: (Option<i64>, Option<i64>),
    pub even: BTreeMap<i64, CfValue>,
    pub odd: BTreeMap<i64, CfValue>,
}

/// Row ratios of the closed matrix against an anchor row in each parity
/// class. The anchor is the smallest available `s` unless given.
pub fn factor_lambda(m: &CoefficientMatrix, anchors: Option<(i64, i64)>) -> Result<Vec<LambdaRatios>> {
    let mut out = Vec::new();
    for (j, f) in m.forms.iter().enumerate() {
        let kf = &f.hecke_field;
        let c = m.closure(j);
        let mut classes: [BTreeMap<i64, CfValue>; 2] = [BTreeMap::new(), BTreeMap::new()];
        let mut chosen = [None, None];
        for parity in 0..2 {
            let rows: Vec<i64> = {
                let mut r: Vec<i64> = c.keys().map(|k| k.0).filter(|s| s.rem_euclid(2) == parity).collect();
                r.dedup();
                r
            };
            let wanted = anchors.map(|a| if parity == 0 { a.0 } else { a.1 });
            let anchor = match wanted {
                Some(a) => rows.iter().copied().find(|&s| s == a),
                None => rows
                    .iter()
                    .copied()
                    .find(|&s| c.iter().any(|(k, v)| k.0 == s && !v.0.value.is_zero())),
            };
            let Some(s0) = anchor else { continue };
            chosen[parity as usize] = Some(s0);
            for &s in &rows {
                let col = c
                    .keys()
                    .filter(|k| k.0 == s0 && !c[*k].0.value.is_zero() && c.contains_key(&(s, k.1)))
                    .map(|k| k.1)
                    .next();
                if let Some(w) = col {
                    let r = c[&(s, w)].0.div(kf, &c[&(s0, w)].0)?;
                    classes[parity as usize].insert(s, r);
                }
            }
        }
        let [even, odd] = classes;
        if even.len() + odd.len() < 3 {
            return Err(Error::GridTooSparse(format!("too few rows to factor at k = {}", m.k)));
        }
        out.push(LambdaRatios { form: j, anchors: (chosen[0], chosen[1]), even, odd });
    }
    Ok(out)
}

/// Per-entry outcome of the rationality test.
#[derive(Clone, Debug, Serialize)]
pub struct EntryRationality {
    pub form: usize,
    pub point: GridPoint,
    pub i_exp: u8,
    pub pi_exp: i64,
    pub sqrt_d_exp: u8,
    pub pure: bool,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalityReport {
    pub entries: Vec<EntryRationality>,
    pub galois: Vec<IdentityCheck>,
    /// Set when every entry carries the same non-trivial formal part.
    pub uniform_constant: Option<String>,
    pub pass: bool,
}

/// Formal parts must be exactly 1, values lie in the Hecke field, and
/// conjugating a form conjugates its values.
pub fn rationality_check(m: &CoefficientMatrix, entries: &[GridEntry]) -> Result<RationalityReport> {
    let mut rows = Vec::new();
    let mut formals = Vec::new();
    for (j, f) in m.forms.iter().enumerate() {
        for (p, vals) in &m.entries {
            let v = &vals[j];
            if !v.value.is_zero() {
                formals.push(v.formal.clone());
            }
            rows.push(EntryRationality {
                form: j,
                point: *p,
                i_exp: v.formal.i_exp(),
                pi_exp: v.formal.pi_exp(),
                sqrt_d_exp: v.formal.sqrt_d_exp(),
                pure: v.is_pure(),
                value: v.display(&f.hecke_field),
            });
        }
    }
    let all_pure = rows.iter().all(|r| r.pure);
    let uniform_constant = if !all_pure && !formals.is_empty() && formals.iter().all(|x| *x == formals[0]) {
        Some(formals[0].to_string())
    } else {
        None
    };
    let mut galois = Vec::new();
    for (j, f) in m.forms.iter().enumerate() {
        if f.hecke_field.degree() != 2 {
            continue;
        }
        let kf = &f.hecke_field;
        let g = eigenform_at(f, kf.conjugate(&f.theta)?)?;
        for (e, (p, vals)) in entries.iter().zip(&m.entries) {
            let other = project(e, std::slice::from_ref(&g))?.remove(0);
            let conj = CfValue { value: kf.conjugate(&vals[j].value)?, formal: vals[j].formal.clone() };
            galois.push(IdentityCheck {
                form: j,
                description: format!("c_f({},{})^sigma = c_(f^sigma)({},{}) from {}", p.s, p.w, p.s, p.w, p.label()),
                lhs: conj.display(kf),
                rhs: other.display(kf),
                pass: conj.same(&other),
            });
        }
    }
    let pass = all_pure && galois.iter().all(|c| c.pass);
    Ok(RationalityReport { entries: rows, galois, uniform_constant, pass })
}

/// The exact `c_f(s,w)` at a point, if the grid reaches it after closure.
pub fn lookup(m: &CoefficientMatrix, form: usize, s: i64, w: i64) -> Option<CfValue> {
    m.closure(form).get(&(s, w)).map(|x| x.0.clone())
}

#[cfg(test)]
mod tests;
