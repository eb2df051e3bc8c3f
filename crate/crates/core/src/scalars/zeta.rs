//! Special values of the Dedekind zeta function of a real quadratic field.
//!
//! `ζ_F(m) = ζ(m)·L(m, χ_D)` is evaluated in fixed point by Euler–Maclaurin
//! summation of the Hurwitz-type series `Σ_j (a + jD)^{−m}`; the functional
//! equation turns it into the rational `ζ_F(1 − m)`, which is recovered by
//! continued fractions and confirmed at doubled precision.

use super::fixed;
use crate::error::{Error, Result};
use crate::quadfield::FieldContext;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock, RwLock};

/// Default working precision in bits.
pub const DEFAULT_PREC_BITS: u32 = 200;
const MAX_PREC_BITS: u32 = 1 << 15;

/// Tangent numbers `T_1..T_n` (Brent–Harvey).
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

fn bernoulli_even_table(r: usize) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap();
    if guard.len() <= r {
        let n = (r + 1).max(2 * guard.len()).max(16);
        let t = tangent_numbers(n);
        let mut out = vec![BigRational::one()];
        for k in 1..=n {
            // B_{2k} = (−1)^{k−1}·2k·T_k / (4^k·(4^k − 1))
            let four_k = BigInt::one() << (2 * k);
            let num = &t[k] * BigInt::from(2 * k);
            let den = &four_k * (&four_k - 1);
            let b = BigRational::new(num, den);
            out.push(if k % 2 == 1 { b } else { -b });
        }
        *guard = out;
    }
    guard[..=r].to_vec()
}

/// Bernoulli number `B_n` (with `B_1 = −1/2`).
pub fn bernoulli(n: usize) -> BigRational {
    match n {
        0 => BigRational::one(),
        1 => BigRational::new((-1).into(), 2.into()),
        _ if n % 2 == 1 => BigRational::zero(),
        _ => bernoulli_even_table(n / 2)[n / 2].clone(),
    }
}

/// Kronecker symbol `(a/n)` for `n ≥ 1`.
pub fn kronecker_symbol(a: i64, n: u64) -> i32 {
    let mut n = n;
    let mut res = 1;
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => res = -res,
            _ => return 0,
        }
    }
    // Jacobi symbol for odd n
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            res = -res;
        }
        a %= n;
    }
    if n == 1 { res } else { 0 }
}

/// `Σ_{j≥0} (a + j·step)^{−m}` in fixed point with `p` fractional bits.
fn hurwitz_sum(a: u64, step: u64, m: u32, p: u32) -> BigInt {
    let r = ((p / 10) as usize).clamp(20, 200);
    let bern = bernoulli_even_table(r);
    let lm = (m + 2 * r as u32) as f64;
    let mm = ((lm / (2.0 * std::f64::consts::PI)) * 2f64.powf(p as f64 / (2.0 * r as f64))).ceil() as u64 + 8;
    let guard = 48 + (64 - (mm * step).leading_zeros());
    let q = p + guard;
    let one = BigInt::one() << q as usize;
    let mut acc = BigInt::zero();
    for j in 0..mm {
        let u = BigInt::from(a + j * step);
        acc += &one / num_traits::pow(u, m as usize);
    }
    let u = BigInt::from(a + mm * step);
    let step_b = BigInt::from(step);
    // tail integral and half term
    acc += fixed::from_ratio(&BigInt::one(), &(num_traits::pow(u.clone(), m as usize - 1) * &step_b * BigInt::from(m - 1)), q);
    acc += fixed::from_ratio(&BigInt::one(), &(num_traits::pow(u.clone(), m as usize) * 2), q);
    // Σ_r B_{2r}/(2r)!·(m)_{2r−1}·step^{2r−1}·u^{−m−2r+1}
    let mut rising = BigInt::from(m); // (m)_{1}
    let mut fact = BigInt::from(2); // (2r)!
    let mut step_pow = step_b.clone();
    let mut u_pow = num_traits::pow(u.clone(), m as usize + 1);
    for k in 1..=r {
        let b = &bern[k];
        let num = b.numer() * &rising * &step_pow;
        let den = b.denom() * &fact * &u_pow;
        acc += fixed::from_ratio(&num, &den, q);
        let kk = 2 * k as u64;
        rising = rising * BigInt::from(m as u64 + kk - 1) * BigInt::from(m as u64 + kk);
        fact = fact * BigInt::from(kk + 1) * BigInt::from(kk + 2);
        step_pow = step_pow * &step_b * &step_b;
        u_pow = u_pow * &u * &u;
    }
    acc >> guard as usize
}

/// `ζ_F(m)` for the field of discriminant `d`, fixed point with `p` bits.
fn zeta_f_pos_fixed(d: i64, m: u32, p: u32) -> BigInt {
    let zeta = hurwitz_sum(1, 1, m, p);
    let mut l = BigInt::zero();
    for a in 1..d as u64 {
        match kronecker_symbol(d, a) {
            1 => l += hurwitz_sum(a, d as u64, m, p),
            -1 => l -= hurwitz_sum(a, d as u64, m, p),
            _ => {}
        }
    }
    fixed::mul(&zeta, &l, p)
}

/// The rational `G_m` with `ζ_F(m) = ζ_F(1−m)·G_m·π^{2m}·√D^{1−2m}` (m = 2n even).
pub fn functional_equation_ratio(m: u32) -> BigRational {
    let n = (m / 2) as usize;
    let fact = |k: usize| -> BigInt { (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i)) };
    let num = num_traits::pow(BigInt::from(16), n) * fact(n) * fact(n);
    let den = fact(2 * n) * fact(2 * n) * fact(n - 1) * fact(n - 1);
    BigRational::new(num, den)
}

fn log2_magnitude(d: i64, m: u32) -> f64 {
    let g = functional_equation_ratio(m);
    let lg = g.numer().bits() as f64 - g.denom().bits() as f64;
    // ζ_F(m) ≤ ζ(2)² so its log is O(1)
    (m as f64 - 0.5) * (d as f64).log2() - 2.0 * m as f64 * std::f64::consts::PI.log2() - lg + 2.0
}

fn zeta_neg_at_prec(d: i64, m: u32, p: u32) -> Option<BigRational> {
    let zf = zeta_f_pos_fixed(d, m, p);
    // ζ_F(1−m) = ζ_F(m)·D^{m−1}·√D / (G·π^{2m})
    let g = functional_equation_ratio(m);
    let sqrt_d = fixed::sqrt_int(d as u64, p);
    let pi = fixed::pi(p);
    let pi_pow = fixed::pow(&pi, 2 * m, p);
    let mut v = fixed::mul(&zf, &sqrt_d, p) * num_traits::pow(BigInt::from(d), m as usize - 1);
    v = fixed::div(&v, &pi_pow, p);
    v = Integer::div_floor(&(v * g.denom()), g.numer());
    let mag = log2_magnitude(d, m).max(0.0).ceil() as u32;
    let tol_bits = p.saturating_sub(mag + 48);
    fixed::reconstruct(&v, p, &(BigInt::one() << 64usize), tol_bits)
}

/// Exact `ζ_F(1 − m)` at working precision `prec_bits` (escalated as needed).
pub fn zeta_f_neg_with_prec(ctx: &FieldContext, m: i64, prec_bits: u32) -> Result<BigRational> {
    if m % 2 != 0 {
        return Err(Error::ZetaArgumentOdd(m));
    }
    if !(2..=30).contains(&m) {
        return Err(Error::Precondition(format!("zeta_F(1-m) supports even 2 <= m <= 30, got {m}")));
    }
    let d = ctx.discriminant();
    let m = m as u32;
    let mag = log2_magnitude(d, m).max(0.0).ceil() as u32;
    let mut p = prec_bits.max(mag + 192);
    let mut last_err = String::new();
    while p <= MAX_PREC_BITS {
        let lo = zeta_neg_at_prec(d, m, p);
        let hi = zeta_neg_at_prec(d, m, 2 * p);
        match (lo, hi) {
            (Some(a), Some(b)) if a == b => return Ok(a),
            (a, b) => last_err = format!("D={d}, m={m}, {p} bits: {a:?} vs {b:?}"),
        }
        p *= 2;
    }
    Err(Error::ReconstructionUnstable(last_err))
}

/// Exact `ζ_F(1 − m)` at the default precision, memoized per field.
pub fn zeta_f_neg(ctx: &FieldContext, m: i64) -> Result<BigRational> {
    static TABLES: OnceLock<Mutex<HashMap<i64, std::sync::Arc<ZetaTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let table = tables
        .lock()
        .unwrap()
        .entry(ctx.discriminant())
        .or_insert_with(|| std::sync::Arc::new(ZetaTable::new(ctx.discriminant())))
        .clone();
    table.get(ctx, m)
}

/// `ζ_F(m)` in floating point (for numeric cross-checks).
pub fn zeta_f_pos_numeric(ctx: &FieldContext, m: i64) -> f64 {
    let p = 96;
    fixed::to_f64(&zeta_f_pos_fixed(ctx.discriminant(), m as u32, p), p)
}

/// Append-only table of exact `ζ_F(1 − m)` values for one field.
#[derive(Debug)]
pub struct ZetaTable {
    d: i64,
    values: RwLock<BTreeMap<i64, BigRational>>,
}

impl ZetaTable {
    pub fn new(d: i64) -> Self {
        ZetaTable { d, values: RwLock::new(BTreeMap::new()) }
    }

    pub fn get(&self, ctx: &FieldContext, m: i64) -> Result<BigRational> {
        if ctx.discriminant() != self.d {
            return Err(Error::FieldMismatch);
        }
        if let Some(v) = self.values.read().unwrap().get(&m) {
            return Ok(v.clone());
        }
        let v = zeta_f_neg_with_prec(ctx, m, DEFAULT_PREC_BITS)?;
        self.values.write().unwrap().entry(m).or_insert_with(|| v.clone());
        Ok(v)
    }

    /// Snapshot of the stored values.
    pub fn entries(&self) -> BTreeMap<i64, BigRational> {
        self.values.read().unwrap().clone()
    }
}

/// Independent closed form `ζ_F(1−m) = B_m·B_{m,χ}/m²` via generalized
/// Bernoulli numbers. Only used to cross-check the numeric route.
pub fn zeta_f_neg_bernoulli(d: i64, m: usize) -> BigRational {
    // B_{m,χ} = D^{m−1}·Σ_{a=1}^{D} χ(a)·B_m(a/D)
    let binom = |n: usize, k: usize| -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
    };
    let mut s = BigRational::zero();
    for a in 1..=d as u64 {
        let chi = kronecker_symbol(d, a);
        if chi == 0 {
            continue;
        }
        let x = BigRational::new(BigInt::from(a), BigInt::from(d));
        let mut poly = BigRational::zero();
        for k in 0..=m {
            poly += BigRational::from_integer(binom(m, k)) * bernoulli(k) * num_traits::pow(x.clone(), m - k);
        }
        if chi == 1 {
            s += poly;
        } else {
            s -= poly;
        }
    }
    let bmchi = s * BigRational::from_integer(num_traits::pow(BigInt::from(d), m - 1));
    let m2 = BigRational::from_integer(BigInt::from((m * m) as u64));
    bernoulli(m) * bmchi / m2
}

#[allow(dead_code)]
pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        let p = 64;
        fixed::to_f64(&fixed::from_rational(r, p), p)
    }
}

