//! Exact arithmetic in a real quadratic field of narrow class number one.
//!
//! Elements are written in the integral basis `{1, ω}` with `ω = (D + √D)/2`,
//! so `ω² = D·ω − (D² − D)/4` for every fundamental discriminant `D`.
//! Integral elements use machine integers ([`OElem`]); general elements use
//! exact rationals ([`QuadRat`]). Totally positive elements of the inverse
//! different are indexed by [`Xi`], which stores `√D·ξ ∈ 𝒪`.

mod elem;
mod ideal;
mod lattice;

pub use elem::{OElem, QuadRat, Xi};
pub use ideal::{IdealHNF, PrimeIdeal, PrimeKind};

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::Serialize;

/// Trial-division bound used when factoring ideal norms.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Record of the narrow-class-number-one verification done at construction.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct NarrowCheck {
    pub eps0_norm: i64,
    pub minkowski_bound: f64,
    /// Rational primes whose prime ideals below the Minkowski bound were shown principal.
    pub primes_checked: Vec<u64>,
}

/// A real quadratic field `Q(√D)` with verified narrow class number one.
#[derive(Clone, Debug)]
pub struct FieldContext {
    d: i64,
    n0: i64,
    sqrt_d: f64,
    eps0: OElem,
    eps0_inv: OElem,
    eps0_sq: OElem,
    eps0_sq_inv: OElem,
    factor_bound: u64,
    narrow: NarrowCheck,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl Eq for FieldContext {}

/// True when `d` is the discriminant of a real quadratic field.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d as u64),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m as u64)
        }
        _ => false,
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Integer square root (floor).
pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl FieldContext {
    /// Builds the field context, computing the fundamental unit by continued
    /// fractions and verifying narrow class number one.
    pub fn new(d: i64) -> Result<Self> {
        Self::with_factor_bound(d, DEFAULT_FACTOR_BOUND)
    }

    pub fn with_factor_bound(d: i64, factor_bound: u64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::NotFundamentalDiscriminant(d));
        }
        let n0 = (d * d - d) / 4;
        let mut ctx = FieldContext {
            d,
            n0,
            sqrt_d: (d as f64).sqrt(),
            eps0: OElem::ONE,
            eps0_inv: OElem::ONE,
            eps0_sq: OElem::ONE,
            eps0_sq_inv: OElem::ONE,
            factor_bound,
            narrow: NarrowCheck {
                eps0_norm: 0,
                minkowski_bound: (d as f64).sqrt() / 2.0,
                primes_checked: Vec::new(),
            },
        };
        let eps0 = ctx.fundamental_unit_cf();
        let norm = ctx.norm(eps0) as i64;
        ctx.narrow.eps0_norm = norm;
        if norm != -1 {
            return Err(Error::NarrowClassNumberNotOne {
                d,
                reason: format!("fundamental unit {eps0:?} has norm {norm}"),
            });
        }
        ctx.eps0 = eps0;
        // ε0·ε0' = −1, so ε0⁻¹ = −ε0'.
        ctx.eps0_inv = ctx.neg(ctx.conj(eps0));
        ctx.eps0_sq = ctx.mul(eps0, eps0);
        ctx.eps0_sq_inv = ctx.mul(ctx.eps0_inv, ctx.eps0_inv);

        let bound = ctx.narrow.minkowski_bound;
        let mut checked = Vec::new();
        for p in 2..=(bound.floor() as u64) {
            if !is_prime_u64(p) {
                continue;
            }
            for prime in ctx.primes_above(p) {
                if (prime.norm as f64) <= bound {
                    ctx.principal_generator_tp(&prime.ideal).map_err(|_| {
                        Error::NarrowClassNumberNotOne {
                            d,
                            reason: format!("prime above {p} is not principal"),
                        }
                    })?;
                }
            }
            checked.push(p);
        }
        ctx.narrow.primes_checked = checked;
        Ok(ctx)
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    /// Constant `n0` in `ω² = D·ω − n0`.
    pub fn omega_norm(&self) -> i64 {
        self.n0
    }

    pub fn sqrt_d(&self) -> f64 {
        self.sqrt_d
    }

    pub fn eps0(&self) -> OElem {
        self.eps0
    }

    pub fn eps0_inv(&self) -> OElem {
        self.eps0_inv
    }

    /// Generator `ε0²` of the totally positive units.
    pub fn eps0_sq(&self) -> OElem {
        self.eps0_sq
    }

    pub fn eps0_sq_inv(&self) -> OElem {
        self.eps0_sq_inv
    }

    pub fn narrow_check(&self) -> &NarrowCheck {
        &self.narrow
    }

    pub fn factor_bound(&self) -> u64 {
        self.factor_bound
    }

    /// Real embeddings `(ω, ω')`.
    pub fn omega_embeddings(&self) -> (f64, f64) {
        let d = self.d as f64;
        ((d + self.sqrt_d) / 2.0, (d - self.sqrt_d) / 2.0)
    }

    // ---- integral elements -------------------------------------------------

    pub fn mul(&self, x: OElem, y: OElem) -> OElem {
        let (a, b, c, d) = (x.a as i128, x.b as i128, y.a as i128, y.b as i128);
        let bd = b * d;
        let re = a * c - bd * self.n0 as i128;
        let om = a * d + b * c + bd * self.d as i128;
        OElem::new(
            i64::try_from(re).expect("element coordinate overflow"),
            i64::try_from(om).expect("element coordinate overflow"),
        )
    }

    pub fn neg(&self, x: OElem) -> OElem {
        OElem::new(-x.a, -x.b)
    }

    pub fn conj(&self, x: OElem) -> OElem {
        OElem::new(x.a + x.b * self.d, -x.b)
    }

    pub fn norm(&self, x: OElem) -> i128 {
        let (a, b) = (x.a as i128, x.b as i128);
        a * a + a * b * self.d as i128 + b * b * self.n0 as i128
    }

    pub fn trace(&self, x: OElem) -> i64 {
        2 * x.a + x.b * self.d
    }

    pub fn embed(&self, x: OElem) -> (f64, f64) {
        let (w1, w2) = self.omega_embeddings();
        (x.a as f64 + x.b as f64 * w1, x.a as f64 + x.b as f64 * w2)
    }

    /// Exact sign of the two real embeddings of `x`.
    pub fn embedding_signs(&self, x: OElem) -> (i32, i32) {
        // x = (t ± b√D)/2 with t = 2a + bD
        let t = (2 * x.a + x.b * self.d) as i128;
        let b = x.b as i128;
        let cmp = (t * t).cmp(&(b * b * self.d as i128));
        let sign_of = |plus: bool| -> i32 {
            let bs = if plus { b.signum() } else { -b.signum() };
            if bs == 0 || t.signum() == bs {
                if t == 0 { bs as i32 } else { t.signum() as i32 }
            } else {
                match cmp {
                    std::cmp::Ordering::Greater => t.signum() as i32,
                    std::cmp::Ordering::Less => bs as i32,
                    std::cmp::Ordering::Equal => 0,
                }
            }
        };
        (sign_of(true), sign_of(false))
    }

    pub fn is_totally_positive(&self, x: OElem) -> bool {
        self.embedding_signs(x) == (1, 1)
    }

    /// `x^n` for `n ≥ 0`.
    pub fn pow(&self, x: OElem, n: u32) -> OElem {
        let mut acc = OElem::ONE;
        for _ in 0..n {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Fundamental unit `> 1` from the continued fraction of the generator of `𝒪`.
    fn fundamental_unit_cf(&self) -> OElem {
        // x0 = (P0 + √D)/Q0 generates 𝒪 over Z together with 1.
        let d = self.d;
        let (p0, q0) = if d % 4 == 1 { (1i128, 2i128) } else { (0i128, 2i128) };
        // x0 = ω − shift in the {1, ω} basis
        let shift = if d % 4 == 1 { (d - 1) / 2 } else { d / 2 };
        let sd = isqrt_u128(d as u128) as i128;
        let (mut p, mut q) = (p0, q0);
        // convergents h/k of x0
        let (mut h_prev, mut h) = (0i128, 1i128);
        let (mut k_prev, mut k) = (1i128, 0i128);
        for _ in 0..10_000 {
            let a = Integer::div_floor(&(p + sd), &q);
            let h_new = a * h + h_prev;
            let k_new = a * k + k_prev;
            h_prev = h;
            h = h_new;
            k_prev = k;
            k = k_new;
            // candidate unit h − k·x0' = conj(h − k·x0); x0 = ω − shift
            let cand = OElem::new((h + k * shift as i128) as i64, -(k as i64));
            let unit = self.conj(cand);
            let n = self.norm(unit);
            if n == 1 || n == -1 {
                let (e1, _) = self.embed(unit);
                return if e1 > 0.0 { unit } else { self.neg(unit) };
            }
            let p_next = a * q - p;
            let q_next = (d as i128 - p_next * p_next) / q;
            p = p_next;
            q = q_next;
        }
        panic!("continued fraction did not produce a unit for D = {d}");
    }

    // ---- totally positive units -------------------------------------------

    /// Representative of the `𝒪₊^×`-orbit of a totally positive element with
    /// embedding ratio `x/x'` in `[1, ε0⁴)`.
    pub fn unit_reduce(&self, x: &QuadRat) -> Result<QuadRat> {
        if !x.is_totally_positive(self) {
            return Err(Error::NotTotallyPositive);
        }
        let up = QuadRat::from_oelem(self.eps0_sq);
        let down = QuadRat::from_oelem(self.eps0_sq_inv);
        let mut y = x.clone();
        // ratio ≥ 1 ⇔ y − y' = b√D ≥ 0
        while y.b < num_rational::BigRational::from_integer(0.into()) {
            y = y.mul(&up, self);
        }
        loop {
            let z = y.mul(&down, self);
            if z.b >= num_rational::BigRational::from_integer(0.into()) {
                y = z;
            } else {
                break;
            }
        }
        Ok(y)
    }

    /// Integral version of [`FieldContext::unit_reduce`].
    pub fn unit_reduce_oelem(&self, x: OElem) -> OElem {
        debug_assert!(self.is_totally_positive(x));
        let mut y = x;
        while y.b < 0 {
            y = self.mul(y, self.eps0_sq);
        }
        loop {
            let z = self.mul(y, self.eps0_sq_inv);
            if z.b >= 0 {
                y = z;
            } else {
                break;
            }
        }
        y
    }

    // ---- inverse different ------------------------------------------------

    /// `ξ ≫ 0` for `ξ = X/√D`: `X > 0` and `X' < 0`.
    pub fn xi_is_tp(&self, x: Xi) -> bool {
        let t = (2 * x.p + x.q * self.d) as i128;
        let q = x.q as i128;
        q > 0 && t * t < q * q * self.d as i128
    }

    /// Unit-reduced orbit representative of `ξ`: embedding ratio `ξ/ξ'` in `[1, ε0⁴)`.
    pub fn xi_reduce(&self, x: Xi) -> Xi {
        // ξ ≥ ξ' ⇔ Tr(X) ≥ 0
        let mut y = x.as_oelem();
        while self.trace(y) < 0 {
            y = self.mul(y, self.eps0_sq);
        }
        loop {
            let z = self.mul(y, self.eps0_sq_inv);
            if self.trace(z) >= 0 {
                y = z;
            } else {
                break;
            }
        }
        Xi::from_oelem(y)
    }

    /// Element of minimal trace in the orbit of `ξ` (ties broken by the smaller first embedding).
    pub fn xi_min_trace(&self, x: Xi) -> Xi {
        let start = self.xi_reduce(x).as_oelem();
        let key = |y: OElem| (y.b, y.a);
        let mut best = start;
        for step in [self.eps0_sq, self.eps0_sq_inv] {
            let mut y = start;
            loop {
                let z = self.mul(y, step);
                if key(z) < key(best) {
                    best = z;
                    y = z;
                } else {
                    break;
                }
            }
        }
        Xi::from_oelem(best)
    }

    /// Conjugate `ξ'`; its √D-coordinates are `−X'`.
    pub fn xi_conj(&self, x: Xi) -> Xi {
        Xi::from_oelem(self.neg(self.conj(x.as_oelem())))
    }

    /// `u·ξ` for an integral `u`.
    pub fn xi_mul(&self, x: Xi, u: OElem) -> Xi {
        Xi::from_oelem(self.mul(x.as_oelem(), u))
    }

    /// `ξ` as an exact element of `F`.
    pub fn xi_to_quadrat(&self, x: Xi) -> QuadRat {
        // 1/√D = (2ω − D)/D
        let inv_sqrt = QuadRat::new(
            num_rational::BigRational::new((-self.d).into(), self.d.into()),
            num_rational::BigRational::new(2.into(), self.d.into()),
        );
        QuadRat::from_oelem(x.as_oelem()).mul(&inv_sqrt, self)
    }

    /// Norm `N(ξ) = −N(X)/D` as an exact rational.
    pub fn xi_norm(&self, x: Xi) -> num_rational::BigRational {
        num_rational::BigRational::new((-self.norm(x.as_oelem())).into(), self.d.into())
    }

    pub fn xi_embed(&self, x: Xi) -> (f64, f64) {
        let (x1, x2) = self.embed(x.as_oelem());
        (x1 / self.sqrt_d, -x2 / self.sqrt_d)
    }

    /// The index of the ideal `m` (with totally positive generator `g`): `ξ = g/(ε0√D)`.
    pub fn xi_from_generator(&self, g: OElem) -> Xi {
        Xi::from_oelem(self.mul(g, self.eps0_inv))
    }

    /// Index of `𝔡⁻¹` itself (`a_f(𝒪)` lives here).
    pub fn xi_unit_ideal(&self) -> Xi {
        self.xi_reduce(self.xi_from_generator(OElem::ONE))
    }

    /// All totally positive `ξ ∈ 𝔡⁻¹` with `Tr ξ ≤ trace_bound`, sorted by
    /// `(Tr, first embedding)`. With `orbits`, one reduced representative per
    /// unit orbit meeting the trace box, ordered by its minimal-trace element.
    pub fn enumerate_tp_invdiff_xi(&self, trace_bound: i64, orbits: bool) -> Vec<Xi> {
        let mut full = Vec::new();
        for q in 1..=trace_bound {
            let (lo, hi) = self.p_range(q);
            for p in lo..=hi {
                full.push(Xi::new(p, q));
            }
        }
        if !orbits {
            return full;
        }
        let mut seen = std::collections::HashSet::new();
        let mut reps = Vec::new();
        for x in full {
            let m = self.xi_min_trace(x);
            if seen.insert(m) {
                reps.push(self.xi_reduce(m));
            }
        }
        reps
    }

    /// Variant returning exact elements.
    pub fn enumerate_tp_invdiff(&self, trace_bound: i64, orbits: bool) -> Vec<QuadRat> {
        self.enumerate_tp_invdiff_xi(trace_bound, orbits)
            .into_iter()
            .map(|x| self.xi_to_quadrat(x))
            .collect()
    }

    /// Range of `p` with `(p + qω)/√D ≫ 0`.
    fn p_range(&self, q: i64) -> (i64, i64) {
        // need |2p + qD| < q√D
        let d = self.d as i128;
        let qq = q as i128;
        let s = isqrt_u128((qq * qq * d) as u128) as i128; // floor(q√D), never exact
        // 2p + qD ∈ [−s, s]
        let lo = Integer::div_ceil(&(-s - qq * d), &2);
        let hi = Integer::div_floor(&(s - qq * d), &2);
        (lo as i64, hi as i64)
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests;
