//! Hecke operators on truncated expansions and primitive forms over exact
//! totally real number fields.

use crate::error::{Error, Result};
use crate::fourier::{FourierExpansion, OrbitTable};
use crate::linalg::{charpoly, mat_add_scaled, mat_mul, solve_in_span, transpose, QMat};
use crate::modforms::{cusp_space, CuspSpace};
use crate::numberfield::{NfElem, NumberField};
use crate::quadfield::{FieldContext, IdealHNF, PrimeIdeal, Xi};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `T_𝔭 f` with the largest trace bound on which it is fully determined.
///
/// Works on ideal-indexed coefficients: `A'(𝔪) = A(𝔭𝔪) + N(𝔭)^{k−1}·A(𝔪/𝔭)`.
pub fn hecke_operator(f: &FourierExpansion, p: &IdealHNF) -> Result<FourierExpansion> {
    let ctx = f.ctx().clone();
    let g = ctx.principal_generator_tp(p)?;
    let np = p.norm() as i128;
    let table = f.table().clone();
    let k = f.weight();
    let npk = BigRational::from_integer(num_traits::pow(BigInt::from(np), (k - 1) as usize));
    let gc = ctx.conj(g);
    let lookups: Vec<Option<BigRational>> = (0..table.len())
        .into_par_iter()
        .map(|i| {
            let x = table.min_elem(i);
            let up = ctx.xi_mul(x, g);
            let mut v = f.coeffs()[table.orbit_of(up)?].clone();
            // 𝔭 | 𝔪 ⇔ X·ḡ ≡ 0 mod N(𝔭)
            let y = ctx.mul(x.as_oelem(), gc);
            if (y.a as i128) % np == 0 && (y.b as i128) % np == 0 {
                let down = Xi::new((y.a as i128 / np) as i64, (y.b as i128 / np) as i64);
                let j = table.orbit_of(down).expect("a divisor of an in-range ideal is in range");
                v += &npk * &f.coeffs()[j];
            }
            Some(v)
        })
        .collect();
    let first_miss = lookups.iter().position(|v| v.is_none());
    let n_out = match first_miss {
        None => table.trace_bound(),
        Some(i) => table.min_elem(i).q - 1,
    };
    if n_out < 1 {
        return Err(Error::InsufficientTruncation(format!(
            "T_p for N(p) = {np} needs coefficients beyond trace {}",
            table.trace_bound()
        )));
    }
    let small = OrbitTable::get(&ctx, n_out);
    let coeffs: Vec<BigRational> = lookups[..small.len()].iter().map(|v| v.clone().unwrap()).collect();
    let one_plus = BigRational::one() + &npk;
    Ok(FourierExpansion::from_parts(small, k, f.constant_term() * one_plus, coeffs))
}

/// Matrix of `T_𝔭` on the span: column `j` holds the coordinates of `T_𝔭 b_j`.
pub fn hecke_matrix(space: &CuspSpace, p: &IdealHNF) -> Result<QMat> {
    let images: Vec<FourierExpansion> =
        space.basis.par_iter().map(|b| hecke_operator(b, p)).collect::<Result<_>>()?;
    let n = images.iter().map(|t| t.trace_bound()).min().unwrap_or(space.trace_bound);
    let vecs: Vec<Vec<BigRational>> = space.basis.iter().map(|b| b.truncate(n).coeffs().to_vec()).collect();
    if crate::linalg::rank(&vecs) < vecs.len() {
        return Err(Error::InsufficientTruncation(format!(
            "basis is not independent at trace {n}, where T_p (N(p) = {}) is known",
            p.norm()
        )));
    }
    let mut cols = Vec::with_capacity(images.len());
    for (j, t) in images.iter().enumerate() {
        let t = t.truncate(n);
        let c = solve_in_span(&vecs, t.coeffs()).ok_or_else(|| {
            Error::NotStable(format!("T_p (N(p) = {}) of basis vector {j} leaves the span at trace {n}", p.norm()))
        })?;
        cols.push(c);
    }
    Ok(transpose(&cols))
}

/// A normalized Hecke eigenform in the span, defined over its Hecke field.
#[derive(Clone, Debug)]
pub struct EigenformData {
    pub ctx: FieldContext,
    pub k: i64,
    pub hecke_field: NumberField,
    /// Coordinates over the echelon cusp basis, normalized so `a_f(𝒪) = 1`.
    pub coords: Vec<NfElem>,
    /// Left eigenvector of the Hecke algebra, used for projections.
    pub dual: Vec<NfElem>,
    /// Eigenvalues `a_f(𝔭)` read from the normalized expansion.
    pub eigenvalues: Vec<(PrimeIdeal, NfElem)>,
    /// Primes for which `T_𝔭 f = a_f(𝔭)·f` was verified on every stored coefficient.
    pub verified_primes: Vec<PrimeIdeal>,
    pub space: Arc<CuspSpace>,
    /// Generic combination of Hecke matrices used for extraction, and the
    /// eigenvalue of it this form belongs to.
    pub generic: Arc<QMat>,
    pub theta: NfElem,
}

impl EigenformData {
    /// Coefficient of the eigenform at orbit `i` of the cusp-space table.
    pub fn coeff(&self, i: usize) -> NfElem {
        let k = &self.hecke_field;
        let mut acc = k.zero();
        for (x, b) in self.coords.iter().zip(&self.space.basis) {
            acc = k.add(&acc, &k.scale(x, &b.coeffs()[i]));
        }
        acc
    }

    /// Coefficient at an integral ideal, if its orbit is stored.
    pub fn coeff_ideal(&self, m: &IdealHNF) -> Result<Option<NfElem>> {
        let g = self.ctx.principal_generator_tp(m)?;
        let x = self.ctx.xi_from_generator(g);
        Ok(self.space.basis[0].table().orbit_of(x).map(|i| self.coeff(i)))
    }

    pub fn eigenvalue(&self, p: &IdealHNF) -> Option<&NfElem> {
        self.eigenvalues.iter().find(|(q, _)| q.ideal == *p).map(|(_, v)| v)
    }

    /// The Galois conjugate form (quadratic Hecke fields only).
    pub fn conjugate(&self) -> Result<EigenformData> {
        let k = &self.hecke_field;
        let conj = |v: &[NfElem]| v.iter().map(|x| k.conjugate(x)).collect::<Result<Vec<_>>>();
        let mut out = self.clone();
        out.coords = conj(&self.coords)?;
        out.dual = conj(&self.dual)?;
        out.theta = k.conjugate(&self.theta)?;
        out.eigenvalues = self
            .eigenvalues
            .iter()
            .map(|(p, v)| Ok((p.clone(), k.conjugate(v)?)))
            .collect::<Result<_>>()?;
        Ok(out)
    }

    /// Projection coefficient of a rational vector `y` (cusp-basis coordinates)
    /// onto this eigenform: `(u·y)/(u·x)`.
    pub fn project(&self, y: &[BigRational]) -> Result<NfElem> {
        let k = &self.hecke_field;
        let mut num = k.zero();
        let mut den = k.zero();
        for ((u, x), yi) in self.dual.iter().zip(&self.coords).zip(y) {
            num = k.add(&num, &k.scale(u, yi));
            den = k.add(&den, &k.mul(u, x));
        }
        k.div(&num, &den)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let k = &self.hecke_field;
        serde_json::json!({
            "weight": self.k,
            "D": self.ctx.discriminant(),
            "hecke_field": k.poly().to_strings(),
            "coords": self.coords.iter().map(|x| k.to_strings(x)).collect::<Vec<_>>(),
            "eigenvalues": self.eigenvalues.iter().map(|(p, v)| serde_json::json!({
                "prime": [p.ideal.a, p.ideal.b, p.ideal.c],
                "norm": p.norm,
                "value": k.to_strings(v),
                "display": k.display(v),
            })).collect::<Vec<_>>(),
            "verified_primes": self.verified_primes.iter().map(|p| [p.ideal.a, p.ideal.b, p.ideal.c]).collect::<Vec<_>>(),
        })
    }
}

/// Reduced row echelon form over a number field; returns the pivot columns.
fn nf_rref(k: &NumberField, m: &mut [Vec<NfElem>]) -> Result<Vec<usize>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = k.inv(&m[r][c])?;
        for j in 0..cols {
            m[r][j] = k.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = k.mul(&f, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// A kernel vector of `a − θ·I` over `K`.
fn eigenvector(k: &NumberField, a: &QMat, theta: &NfElem) -> Result<Vec<NfElem>> {
    let n = a.len();
    let mut m: Vec<Vec<NfElem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = k.from_rational(a[i][j].clone());
                    if i == j {
                        k.sub(&v, theta)
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let pivots = nf_rref(k, &mut m)?;
    let Some(free) = (0..n).find(|c| !pivots.contains(c)) else {
        return Err(Error::EigenvalueCheckFailed("eigenvalue has trivial eigenspace".into()));
    };
    let mut x = vec![k.zero(); n];
    x[free] = k.one();
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = k.neg(&m[r][free]);
    }
    Ok(x)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Primes used for eigenform extraction: all of norm at most `bound` whose
/// Hecke matrix can be formed at the given truncation.
pub fn usable_primes(space: &CuspSpace, bound: u64) -> Result<Vec<(PrimeIdeal, QMat)>> {
    let ctx = space.basis.first().map(|b| b.ctx().clone());
    let Some(ctx) = ctx else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    for (p, _) in ctx.primes_below(bound)? {
        match hecke_matrix(space, &p.ideal) {
            Ok(m) => out.push((p, m)),
            Err(Error::InsufficientTruncation(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Primitive forms of weight `k` in the computed cusp span, one per
/// irreducible factor of the Hecke algebra's characteristic polynomial.
pub fn eigenforms(ctx: &FieldContext, k: i64, n: i64) -> Result<Vec<EigenformData>> {
    let space = Arc::new(cusp_space(ctx, k, n)?);
    eigenforms_in(space, 25)
}

/// [`eigenforms`] on a precomputed span, using primes of norm at most `prime_bound`.
pub fn eigenforms_in(space: Arc<CuspSpace>, prime_bound: u64) -> Result<Vec<EigenformData>> {
    let d = space.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let ctx = space.basis[0].ctx().clone();
    let mats = usable_primes(&space, prime_bound)?;
    if mats.len() < 3 {
        return Err(Error::InsufficientTruncation(format!(
            "only {} primes have determinable Hecke matrices; raise the trace bound",
            mats.len()
        )));
    }
    // generic combination with fixed small weights; retried until squarefree
    const WEIGHTS: [[i64; 4]; 6] = [[1, 0, 0, 0], [1, 2, 0, 0], [1, 3, 5, 0], [2, 1, 3, 7], [1, -2, 5, 3], [3, 7, -1, 2]];
    let mut chosen = None;
    for w in WEIGHTS {
        let mut a = vec![vec![BigRational::zero(); d]; d];
        for (wi, (_, m)) in w.iter().zip(&mats) {
            a = mat_add_scaled(&a, m, &rat(*wi));
        }
        let cp = charpoly(&a);
        if cp.is_squarefree() {
            chosen = Some((a, cp));
            break;
        }
    }
    let Some((a, cp)) = chosen else {
        return Err(Error::FactorizationFailed("no squarefree generic combination found".into()));
    };
    let factors = cp.factor(4)?;
    let a = Arc::new(a);
    let mut out = Vec::with_capacity(factors.len());
    for h in factors {
        let kf = NumberField::new(h)?;
        let theta = kf.gen();
        out.push(build_eigenform(&ctx, &space, &mats, &a, kf, theta)?);
    }
    Ok(out)
}

/// Rebuilds the form attached to another root `theta ∈ K` of the same
/// factor, from scratch. Used to test Galois equivariance independently of
/// [`EigenformData::conjugate`].
pub fn eigenform_at(f: &EigenformData, theta: NfElem) -> Result<EigenformData> {
    build_eigenform(&f.ctx, &f.space, &[], &f.generic, f.hecke_field.clone(), theta)
}

fn build_eigenform(
    ctx: &FieldContext,
    space: &Arc<CuspSpace>,
    mats: &[(PrimeIdeal, QMat)],
    a: &Arc<QMat>,
    kf: NumberField,
    theta: NfElem,
) -> Result<EigenformData> {
    let mut x = eigenvector(&kf, a, &theta)?;
    let u = eigenvector(&kf, &transpose(a), &theta)?;
    let table = space.basis[0].table().clone();
    let unit = table
        .orbit_of(ctx.xi_unit_ideal())
        .ok_or_else(|| Error::InsufficientTruncation("unit ideal out of range".into()))?;
    let mut proto = EigenformData {
        ctx: ctx.clone(),
        k: space.k,
        hecke_field: kf.clone(),
        coords: x.clone(),
        dual: u,
        eigenvalues: Vec::new(),
        verified_primes: Vec::new(),
        space: space.clone(),
        generic: a.clone(),
        theta,
    };
    let a1 = proto.coeff(unit);
    if a1.is_zero() {
        return Err(Error::EigenvalueCheckFailed("eigenform has vanishing first coefficient".into()));
    }
    let s = kf.inv(&a1)?;
    x = x.iter().map(|c| kf.mul(c, &s)).collect();
    proto.coords = x;
    // eigenvalues from Fourier coefficients at every prime in range
    // N((ξ)𝔡) = D·N(ξ) ≤ D·(Tr ξ / 2)²
    let t = table.trace_bound() as u64;
    let max_norm = ctx.discriminant() as u64 * t * t / 4;
    for (p, _) in ctx.primes_below(max_norm)? {
        if let Some(v) = proto.coeff_ideal(&p.ideal)? {
            proto.eigenvalues.push((p, v));
        }
    }
    // T_𝔭 f = a_f(𝔭)·f on every coefficient where T_𝔭 f is known
    for (p, _) in mats {
        let lam = proto
            .eigenvalue(&p.ideal)
            .cloned()
            .ok_or_else(|| Error::EigenvalueCheckFailed(format!("no coefficient at prime of norm {}", p.norm)))?;
        let images: Vec<FourierExpansion> =
            space.basis.iter().map(|b| hecke_operator(b, &p.ideal)).collect::<Result<_>>()?;
        let n = images[0].trace_bound();
        for i in 0..images[0].coeffs().len() {
            let mut lhs = kf.zero();
            for (c, t) in proto.coords.iter().zip(&images) {
                lhs = kf.add(&lhs, &kf.scale(c, &t.coeffs()[i]));
            }
            let rhs = kf.mul(&lam, &proto.coeff(i));
            if lhs != rhs {
                return Err(Error::EigenvalueCheckFailed(format!(
                    "T_p f != a_f(p) f at orbit {i} (N(p) = {}, trace bound {n})",
                    p.norm
                )));
            }
        }
        proto.verified_primes.push(p.clone());
    }
    // a_f(𝔭²) = a_f(𝔭)² − N(𝔭)^{k−1}
    for (p, lam) in &proto.eigenvalues {
        let sq = ctx.ideal_mul(&p.ideal, &p.ideal);
        if let Some(v) = proto.coeff_ideal(&sq)? {
            let npk = rat(p.norm as i64).pow((space.k - 1) as i32);
            let expect = kf.sub(&kf.mul(lam, lam), &kf.from_rational(npk));
            if v != expect {
                return Err(Error::EigenvalueCheckFailed(format!("Hecke relation fails at N(p) = {}", p.norm)));
            }
        }
        if !kf.minpoly(lam).all_roots_real() {
            return Err(Error::EigenvalueCheckFailed(format!("eigenvalue at N(p) = {} is not totally real", p.norm)));
        }
    }
    Ok(proto)
}

/// Dirichlet coefficients `a_f(𝔪)` for all integral ideals of norm at most
/// `norm_bound`, from prime eigenvalues by multiplicativity.
pub fn lseries_coeffs(f: &EigenformData, norm_bound: u64) -> Result<BTreeMap<IdealHNF, NfElem>> {
    let ctx = &f.ctx;
    let kf = &f.hecke_field;
    let mut out: BTreeMap<IdealHNF, NfElem> = BTreeMap::new();
    out.insert(IdealHNF::UNIT, kf.one());
    for (p, _) in ctx.primes_below(norm_bound)? {
        let lam = f.eigenvalue(&p.ideal).cloned().ok_or(Error::MissingPrime(p.norm))?;
        let npk = kf.from_rational(rat(p.norm as i64).pow((f.k - 1) as i32));
        // prime powers 𝔭^e with N ≤ bound
        let mut powers = vec![(IdealHNF::UNIT, kf.one(), 1u64)];
        let mut prev = kf.zero();
        let mut cur = kf.one();
        let mut ideal = IdealHNF::UNIT;
        let mut norm = 1u64;
        loop {
            norm = match norm.checked_mul(p.norm) {
                Some(v) if v <= norm_bound => v,
                _ => break,
            };
            ideal = ctx.ideal_mul(&ideal, &p.ideal);
            let next = kf.sub(&kf.mul(&lam, &cur), &kf.mul(&npk, &prev));
            prev = cur;
            cur = next;
            powers.push((ideal, cur.clone(), norm));
        }
        let existing: Vec<(IdealHNF, NfElem)> = out.iter().map(|(i, v)| (*i, v.clone())).collect();
        for (m, am) in existing {
            for (q, aq, nq) in powers.iter().skip(1) {
                if m.norm().saturating_mul(*nq) <= norm_bound {
                    out.insert(ctx.ideal_mul(&m, q), kf.mul(&am, aq));
                }
            }
        }
    }
    Ok(out)
}

/// Pairwise commutation of the given matrices.
pub fn matrices_commute(mats: &[QMat]) -> bool {
    mats.iter().enumerate().all(|(i, a)| mats[i + 1..].iter().all(|b| mat_mul(a, b) == mat_mul(b, a)))
}

#[cfg(test)]
mod tests;
