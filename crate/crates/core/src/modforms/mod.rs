//! Concrete Hilbert modular forms: Eisenstein series with fitted
//! normalization, Rankin–Cohen brackets, and cusp spaces spanned by them.

pub mod elliptic;

pub use elliptic::{elliptic_basis, EllipticQSeries};

use crate::error::{Error, Result};
use crate::fourier::{convolve, FourierExpansion, OrbitTable, RawExpansion};
use crate::linalg::rref;
use crate::quadfield::{FieldContext, Xi};
use crate::scalars::{zeta_f_neg, FormalScalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Normalized Eisenstein series `1 + c_k·Σ σ_{k−1}((ξ)𝔡)·q^ξ`.
#[derive(Clone, Debug)]
pub struct EisensteinSeries {
    pub k: i64,
    pub c_k: BigRational,
    pub expansion: FourierExpansion,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `σ_{k−1}((ξ)𝔡)` for every orbit of the table.
fn divisor_sums(table: &OrbitTable, k: i64) -> Result<Vec<BigInt>> {
    let ctx = table.ctx();
    table
        .reps()
        .par_iter()
        .map(|&x| {
            let m = ctx.ideal_from_oelem(x.as_oelem())?;
            ctx.sigma_ideal(&m, (k - 1) as u32)
        })
        .collect()
}

/// Residual of `v` against an echelon basis with the given pivots.
fn residual(v: &[BigRational], rows: &[Vec<BigRational>], pivots: &[usize]) -> Vec<BigRational> {
    let mut r = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        let c = v[p].clone();
        if c.is_zero() {
            continue;
        }
        for (x, y) in r.iter_mut().zip(row) {
            *x -= &c * y;
        }
    }
    r
}

/// The weight-`k` Eisenstein series to trace bound `n`, normalization fitted
/// against the elliptic space of weight `2k` and checked against `ζ_F(1−k)`.
pub fn eisenstein(ctx: &FieldContext, k: i64, n: i64) -> Result<EisensteinSeries> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64, i64), EisensteinSeries>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (ctx.discriminant(), k, n);
    if let Some(e) = cache.lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let e = eisenstein_uncached(ctx, k, n)?;
    cache.lock().unwrap().insert(key, e.clone());
    Ok(e)
}

fn eisenstein_uncached(ctx: &FieldContext, k: i64, n: i64) -> Result<EisensteinSeries> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::Precondition(format!("Eisenstein weight must be even and >= 2, got {k}")));
    }
    if n < 1 {
        return Err(Error::Precondition("trace bound must be positive".into()));
    }
    let table = OrbitTable::get(ctx, n);
    let sig: Vec<BigRational> = divisor_sums(&table, k)?.into_iter().map(BigRational::from_integer).collect();
    let raw = FourierExpansion::from_parts(table.clone(), k, BigRational::zero(), sig.clone());
    let d = raw.diagonal_restriction();
    let c_k = fit_normalization(&d, 2 * k)?;
    // independent check: c_k = 4/ζ_F(1−k)
    if k <= 30 {
        let z = zeta_f_neg(ctx, k)?;
        if c_k != rat(4) / &z {
            return Err(Error::CrossCheckFailed(format!(
                "fitted c_{k} = {} but 4/zeta_F(1-{k}) = {}",
                crate::rat_to_string(&c_k),
                crate::rat_to_string(&(rat(4) / z))
            )));
        }
    }
    let coeffs = sig.iter().map(|s| s * &c_k).collect();
    Ok(EisensteinSeries { k, c_k: c_k.clone(), expansion: FourierExpansion::from_parts(table, k, BigRational::one(), coeffs) })
}

/// Solves `1 + c·d(q) ∈ M_w` for `c` and verifies every coefficient.
fn fit_normalization(d: &[BigRational], w: i64) -> Result<BigRational> {
    let basis = elliptic_basis(w, d.len());
    let rows: Vec<Vec<BigRational>> = basis.iter().map(|b| b.coeffs.clone()).collect();
    let (rows, pivots) = rref(&rows);
    let mut e0 = vec![BigRational::zero(); d.len()];
    e0[0] = rat(1);
    let r0 = residual(&e0, &rows, &pivots);
    let rd = residual(d, &rows, &pivots);
    let Some(idx) = rd.iter().position(|x| !x.is_zero()) else {
        return Err(Error::FitInconsistent(format!("diagonal divisor sums already lie in M_{w}")));
    };
    let c = -&r0[idx] / &rd[idx];
    for (a, b) in r0.iter().zip(&rd) {
        if !(a + &c * b).is_zero() {
            return Err(Error::FitInconsistent(format!("normalization fit for M_{w} fails beyond the pivot")));
        }
    }
    Ok(c)
}

/// Binomial coefficient as `i128`.
pub(crate) fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `a + b·ω` with `i128` coordinates.
#[derive(Clone, Copy)]
struct Big2 {
    a: i128,
    b: i128,
}

fn mul2(x: Big2, y: Big2, d: i128, n0: i128) -> Big2 {
    let bd = x.b * y.b;
    Big2 { a: x.a * y.a - bd * n0, b: x.a * y.b + x.b * y.a + bd * d }
}

/// Rankin–Cohen bracket `[f, g]_(ν,ν)` with the `(2πi)^{2ν}` factor split off.
///
/// The bracket coefficient at `ξ` factorizes as
/// `Σ_{ξ₁+ξ₂=ξ} a(ξ₁)·b(ξ₂)·N(Q(ξ₁, ξ₂))` with
/// `Q(x, y) = Σ_l (−1)^l·C(k₁+ν−1, ν−l)·C(k₂+ν−1, l)·x^l·y^{ν−l}`.
pub fn rc_bracket(f: &FourierExpansion, g: &FourierExpansion, nu: i64) -> Result<(FourierExpansion, FormalScalar)> {
    if f.ctx() != g.ctx() {
        return Err(Error::FieldMismatch);
    }
    if nu < 0 {
        return Err(Error::Precondition("bracket order must be nonnegative".into()));
    }
    if !f.is_symmetric() || !g.is_symmetric() {
        return Err(Error::SymmetryViolated("bracket inputs must be symmetric".into()));
    }
    let ctx = f.ctx().clone();
    let (k1, k2) = (f.weight(), g.weight());
    let n = f.trace_bound().min(g.trace_bound());
    let (f, g) = (f.truncate(n), g.truncate(n));
    let coef: Vec<i128> = (0..=nu)
        .map(|l| {
            let s = if l % 2 == 0 { 1 } else { -1 };
            s * binom(k1 + nu - 1, nu - l) * binom(k2 + nu - 1, l)
        })
        .collect();
    let (dd, n0) = (ctx.discriminant() as i128, ctx.omega_norm() as i128);
    let weight = |x1: Xi, x2: Xi| -> BigInt {
        let (u, v) = (Big2 { a: x1.p as i128, b: x1.q as i128 }, Big2 { a: x2.p as i128, b: x2.q as i128 });
        let mut upow = vec![Big2 { a: 1, b: 0 }];
        let mut vpow = vec![Big2 { a: 1, b: 0 }];
        for _ in 0..nu {
            upow.push(mul2(*upow.last().unwrap(), u, dd, n0));
            vpow.push(mul2(*vpow.last().unwrap(), v, dd, n0));
        }
        let mut acc = Big2 { a: 0, b: 0 };
        for l in 0..=nu as usize {
            let t = mul2(upow[l], vpow[nu as usize - l], dd, n0);
            acc.a += coef[l] * t.a;
            acc.b += coef[l] * t.b;
        }
        let (a, b) = (BigInt::from(acc.a), BigInt::from(acc.b));
        &a * &a + &a * &b * BigInt::from(dd) + &b * &b * BigInt::from(n0)
    };
    let raw = convolve(&f, &g, weight);
    // N(Q(ξ)) = N(Q(X))/(−D)^ν
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(-ctx.discriminant()), nu as usize)).recip();
    let coeffs = raw.into_iter().map(|c| c * &scale).collect();
    let constant = if nu == 0 { f.constant_term() * g.constant_term() } else { BigRational::zero() };
    let out = FourierExpansion::from_parts(f.table().clone(), k1 + k2 + 2 * nu, constant, coeffs);
    if !out.is_symmetric() {
        return Err(Error::SymmetryViolated("bracket output is not symmetric".into()));
    }
    let two_pi_i = FormalScalar::from_int(2).mul(&FormalScalar::pi()).mul(&FormalScalar::i());
    Ok((out, two_pi_i.pow(2 * nu)?))
}

/// The same bracket through explicit partial derivatives in `Q(√D)`; slow,
/// kept as an independent check of [`rc_bracket`].
pub fn rc_bracket_via_derivatives(
    f: &FourierExpansion,
    g: &FourierExpansion,
    nu: i64,
) -> Result<(FourierExpansion, FormalScalar)> {
    let (k1, k2) = (f.weight(), g.weight());
    let n = f.trace_bound().min(g.trace_bound());
    let (f, g) = (f.truncate(n), g.truncate(n));
    let mut total: Option<RawExpansion> = None;
    for l1 in 0..=nu {
        for l2 in 0..=nu {
            let sign = if (l1 + l2) % 2 == 0 { 1 } else { -1 };
            let c = sign
                * binom(k1 + nu - 1, nu - l1)
                * binom(k1 + nu - 1, nu - l2)
                * binom(k2 + nu - 1, l1)
                * binom(k2 + nu - 1, l2);
            let (df, _) = RawExpansion::derivative(&f, l1 as u32, l2 as u32);
            let (dg, _) = RawExpansion::derivative(&g, (nu - l1) as u32, (nu - l2) as u32);
            let term = df.mul(&dg)?.scale(&BigRational::from_integer(c.into()));
            total = Some(match total {
                None => term,
                Some(t) => t.add(&term)?,
            });
        }
    }
    let out = total.expect("at least one term").compress(k1 + k2 + 2 * nu)?;
    let two_pi_i = FormalScalar::from_int(2).mul(&FormalScalar::pi()).mul(&FormalScalar::i());
    Ok((out, two_pi_i.pow(2 * nu)?))
}

/// A generator of the cusp space with its construction.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub label: String,
    pub k1: i64,
    pub k2: i64,
    pub nu: i64,
}

/// Exact basis of the span of bracket and product constructions in weight `k`.
#[derive(Clone, Debug)]
pub struct CuspSpace {
    pub k: i64,
    pub trace_bound: i64,
    /// Echelon basis (pivots in orbit order).
    pub basis: Vec<FourierExpansion>,
    /// Constructions whose span this is, in the order tried.
    pub generators: Vec<(Provenance, FourierExpansion)>,
    /// Provenance of the generator that raised the rank at each step.
    pub independent: Vec<Provenance>,
    /// The span may be a proper subspace of the full cusp space.
    pub span_only: bool,
}

impl CuspSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `f` in the echelon basis, if `f` lies in the span.
    pub fn coordinates(&self, f: &FourierExpansion) -> Option<Vec<BigRational>> {
        let n = f.trace_bound().min(self.trace_bound);
        let f = f.truncate(n);
        let vecs: Vec<Vec<BigRational>> = self.basis.iter().map(|b| b.truncate(n).coeffs().to_vec()).collect();
        if !f.is_cuspidal() {
            return None;
        }
        crate::linalg::solve_in_span(&vecs, f.coeffs())
    }

    /// `Σ x_j·basis_j`.
    pub fn combine(&self, x: &[BigRational]) -> FourierExpansion {
        let mut acc = FourierExpansion::zero(self.basis[0].ctx(), self.k, self.trace_bound);
        for (b, c) in self.basis.iter().zip(x) {
            acc = acc.add(&b.scale(c)).expect("same weight");
        }
        acc
    }
}

/// Cusp-space generators of weight `k`: brackets `[E_a, E_b]_ν` (ν ≥ 1, a ≤ b)
/// and products `E_a·E_b − E_k`.
pub fn cusp_generators(ctx: &FieldContext, k: i64, n: i64) -> Result<Vec<(Provenance, FourierExpansion)>> {
    let mut specs = Vec::new();
    for nu in 1..=(k - 4) / 2 {
        for a in (2..=k - 2 * nu - 2).step_by(2) {
            let b = k - 2 * nu - a;
            if b >= a {
                specs.push((a, b, nu));
            }
        }
    }
    for a in (2..=k / 2).step_by(2) {
        let b = k - a;
        if b >= 2 {
            specs.push((a, b, 0));
        }
    }
    specs
        .par_iter()
        .map(|&(a, b, nu)| {
            let ea = eisenstein(ctx, a, n)?.expansion;
            let eb = eisenstein(ctx, b, n)?.expansion;
            if nu >= 1 {
                let (br, _) = rc_bracket(&ea, &eb, nu)?;
                Ok((Provenance { label: format!("[E_{a},E_{b}]_{nu}"), k1: a, k2: b, nu }, br))
            } else {
                let ek = eisenstein(ctx, k, n)?.expansion;
                let p = ea.mul(&eb)?.sub(&ek)?;
                Ok((Provenance { label: format!("E_{a}*E_{b}-E_{k}"), k1: a, k2: b, nu: 0 }, p))
            }
        })
        .collect()
}

/// Span of [`cusp_generators`], with rank stabilization and Hecke stability checked.
pub fn cusp_space(ctx: &FieldContext, k: i64, n: i64) -> Result<CuspSpace> {
    if k < 6 || k % 2 != 0 {
        return Err(Error::Precondition(format!("cusp spaces need even k >= 6, got {k}")));
    }
    let generators = cusp_generators(ctx, k, n)?;
    for (p, g) in &generators {
        if !g.is_cuspidal() {
            return Err(Error::Precondition(format!("generator {} is not cuspidal", p.label)));
        }
    }
    let mut independent = Vec::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (p, g) in &generators {
        let mut trial = rows.clone();
        trial.push(g.coeffs().to_vec());
        if crate::linalg::rank(&trial) > rows.len() {
            rows = trial;
            independent.push(p.clone());
        }
    }
    let small = (n - 5).max(1);
    let rows_small: Vec<Vec<BigRational>> =
        generators.iter().map(|(_, g)| g.truncate(small).coeffs().to_vec()).collect();
    let rank_small = crate::linalg::rank(&rows_small);
    if rank_small != rows.len() {
        return Err(Error::InsufficientTruncation(format!(
            "rank {rank_small} at trace {small} differs from rank {} at trace {n}",
            rows.len()
        )));
    }
    let (ech, _) = rref(&rows);
    let table = OrbitTable::get(ctx, n);
    let basis = ech
        .into_iter()
        .map(|r| FourierExpansion::from_parts(table.clone(), k, BigRational::zero(), r))
        .collect();
    let space = CuspSpace { k, trace_bound: n, basis, generators, independent, span_only: true };
    if space.dim() > 0 {
        let (p, _) = ctx.primes_below(64)?.into_iter().next().expect("a prime below 64");
        crate::hecke::hecke_matrix(&space, &p.ideal)?;
    }
    Ok(space)
}

#[cfg(test)]
mod tests;
