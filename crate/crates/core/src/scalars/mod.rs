//! Exact monomial scalars `q·i^a·π^b·√D^c` and the normalizing constants of
//! the Cohen kernel and the completed double Eisenstein series.

pub(crate) mod fixed;
mod zeta;

pub use zeta::{
    bernoulli, functional_equation_ratio, kronecker_symbol, zeta_f_neg, zeta_f_neg_bernoulli,
    zeta_f_neg_with_prec, zeta_f_pos_numeric, ZetaTable, DEFAULT_PREC_BITS,
};

use crate::error::{Error, Result};
use crate::quadfield::FieldContext;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exact scalar `q·i^a·π^b·√D^c`.
///
/// Canonical form folds `i² = −1` and `√D² = D` into `q`, so `a, c ∈ {0, 1}`.
/// `d` is kept only while a `√D` factor remains, and is `0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalScalar {
    q: BigRational,
    a: u8,
    b: i64,
    c: u8,
    d: i64,
}

impl FormalScalar {
    fn canonical(q: BigRational, a: i64, b: i64, c: i64, d: i64) -> Self {
        if q.is_zero() {
            return FormalScalar { q, a: 0, b: 0, c: 0, d: 0 };
        }
        let a4 = a.rem_euclid(4);
        let mut q = if a4 >= 2 { -q } else { q };
        let c_half = c.div_euclid(2);
        if c_half != 0 {
            assert!(d > 0, "√D exponent requires a field");
            let dd = BigRational::from_integer(BigInt::from(d));
            q = q * pow_rat(&dd, c_half);
        }
        let c = c.rem_euclid(2) as u8;
        // the field only matters while a √D factor remains
        FormalScalar { q, a: (a4 % 2) as u8, b, c, d: if c == 1 { d } else { 0 } }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::canonical(q, 0, 0, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    /// `q·i^a·π^b·√D^c` for the field of discriminant `d`.
    pub fn new(q: BigRational, a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::canonical(q, a, b, c, d)
    }

    pub fn i() -> Self {
        Self::canonical(BigRational::one(), 1, 0, 0, 0)
    }

    pub fn pi() -> Self {
        Self::canonical(BigRational::one(), 0, 1, 0, 0)
    }

    pub fn sqrt_d(d: i64) -> Self {
        Self::canonical(BigRational::one(), 0, 0, 1, d)
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn i_exp(&self) -> u8 {
        self.a
    }

    pub fn pi_exp(&self) -> i64 {
        self.b
    }

    pub fn sqrt_d_exp(&self) -> u8 {
        self.c
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    /// True when the transcendental part is trivial.
    pub fn is_rational(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    fn join_d(&self, o: &Self) -> i64 {
        match (self.d, o.d) {
            (0, d) | (d, 0) => d,
            (x, y) => {
                assert_eq!(x, y, "formal scalars from different fields");
                x
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.join_d(o);
        Self::canonical(
            &self.q * &o.q,
            (self.a + o.a) as i64,
            self.b + o.b,
            (self.c + o.c) as i64,
            d,
        )
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Precondition("inverse of zero scalar".into()));
        }
        // (i^a√D^c)^{-1} = i^{-a}√D^{-c}
        Ok(Self::canonical(self.q.recip(), -(self.a as i64), -self.b, -(self.c as i64), self.d))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    pub fn neg(&self) -> Self {
        FormalScalar { q: -self.q.clone(), ..self.clone() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::canonical(&self.q * r, self.a as i64, self.b, self.c as i64, self.d)
    }

    /// Sum of two scalars with the same monomial (zero is compatible with anything).
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if (self.a, self.b, self.c) != (o.a, o.b, o.c) {
            return Err(Error::Precondition(format!("cannot add {self} and {o}: different monomials")));
        }
        let d = self.join_d(o);
        Ok(Self::canonical(&self.q + &o.q, self.a as i64, self.b, self.c as i64, d))
    }

    pub fn to_complex(&self) -> Complex64 {
        let q = zeta::rational_to_f64(&self.q);
        let mut v = q * std::f64::consts::PI.powi(self.b as i32);
        if self.c == 1 {
            v *= (self.d as f64).sqrt();
        }
        if self.a == 1 { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) }
    }
}

impl fmt::Display for FormalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::rat_to_string(&self.q))?;
        if self.a == 1 {
            write!(f, "·i")?;
        }
        if self.b != 0 {
            write!(f, "·π^{}", self.b)?;
        }
        if self.c == 1 {
            write!(f, "·√{}", self.d)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FormalScalarJson {
    q: String,
    i: u8,
    pi: i64,
    #[serde(rename = "sqrtD")]
    sqrt_d: u8,
    #[serde(rename = "D")]
    d: i64,
}

impl Serialize for FormalScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormalScalarJson {
            q: crate::rat_to_string(&self.q),
            i: self.a,
            pi: self.b,
            sqrt_d: self.c,
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = FormalScalarJson::deserialize(de)?;
        let q = crate::parse_rat(&j.q).map_err(serde::de::Error::custom)?;
        if j.sqrt_d > 0 && j.d <= 0 {
            return Err(serde::de::Error::custom("sqrtD exponent without a discriminant"));
        }
        Ok(FormalScalar::canonical(q, j.i as i64, j.pi, j.sqrt_d as i64, j.d))
    }
}

fn pow_rat(x: &BigRational, n: i64) -> BigRational {
    let mut acc = BigRational::one();
    let base = if n < 0 { x.recip() } else { x.clone() };
    for _ in 0..n.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// `Γ(n) = (n − 1)!` for a positive integer.
pub fn gamma_int(n: i64) -> Result<BigInt> {
    if n <= 0 {
        return Err(Error::GammaPole(format!("Gamma({n})")));
    }
    Ok((1..n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

fn gamma_rat(n: i64) -> Result<BigRational> {
    Ok(BigRational::from_integer(gamma_int(n)?))
}

fn two_pow(e: i64) -> BigRational {
    pow_rat(&BigRational::from_integer(2.into()), e)
}

/// `ζ_F(m)` for even `m ≥ 2` as the exact monomial `ζ_F(1−m)·G_m·D^{−m}·π^{2m}·√D`.
pub fn zeta_f_pos_formal(ctx: &FieldContext, m: i64) -> Result<FormalScalar> {
    let neg = zeta_f_neg(ctx, m)?;
    let g = functional_equation_ratio(m as u32);
    let d = ctx.discriminant();
    Ok(FormalScalar::new(neg * g, 0, 2 * m, 1 - 2 * m, d))
}

/// The Cohen-kernel constant
/// `c = D^{(k−1)/2}·2^{2−k}·π·Γ(k−1) / (i^s·Γ(s)·Γ(k−s))`.
pub fn cohen_constant(ctx: &FieldContext, k: i64, s: i64) -> Result<FormalScalar> {
    if s <= 0 || s >= k {
        return Err(Error::GammaPole(format!("c_(k={k}, s={s}) needs 1 <= s <= k-1")));
    }
    let q = two_pow(2 - k) * gamma_rat(k - 1)? / (gamma_rat(s)? * gamma_rat(k - s)?);
    Ok(FormalScalar::new(q, -s, 1, k - 1, ctx.discriminant()))
}

/// The completion constant
/// `α = D^{k−w}·ζ_F(1−w+s)·ζ_F(1−w+k−s)·(i^s·(2π)^{w−k−1}·2^{k−2}·Γ(s)Γ(k−s)Γ(k−w)/Γ(k−1))²`.
///
/// The ζ-arguments must be even and at least 2.
pub fn alpha_constant(ctx: &FieldContext, k: i64, s: i64, w: i64) -> Result<FormalScalar> {
    alpha_constant_with(ctx, k, s, w, &|m| zeta_f_pos_formal(ctx, m))
}

/// [`alpha_constant`] with a caller-supplied `ζ_F(m)` (used to test sensitivity).
pub fn alpha_constant_with(
    ctx: &FieldContext,
    k: i64,
    s: i64,
    w: i64,
    zeta_pos: &dyn Fn(i64) -> Result<FormalScalar>,
) -> Result<FormalScalar> {
    if !(1..k).contains(&s) || !(1..k).contains(&w) {
        return Err(Error::GammaPole(format!("alpha(k={k}, s={s}, w={w}) out of range")));
    }
    let (m1, m2) = (1 - w + s, 1 - w + k - s);
    for m in [m1, m2] {
        if m % 2 != 0 {
            return Err(Error::ZetaArgumentOdd(m));
        }
        if m < 2 {
            return Err(Error::Precondition(format!("zeta_F argument {m} below 2")));
        }
    }
    let d = ctx.discriminant();
    let inner_q = two_pow(w - k - 1) * two_pow(k - 2) * gamma_rat(s)? * gamma_rat(k - s)? * gamma_rat(k - w)?
        / gamma_rat(k - 1)?;
    let inner = FormalScalar::new(inner_q, s, w - k - 1, 0, d);
    let dpow = FormalScalar::new(pow_rat(&BigRational::from_integer(d.into()), k - w), 0, 0, 0, d);
    Ok(dpow.mul(&zeta_pos(m1)?).mul(&zeta_pos(m2)?).mul(&inner.mul(&inner)))
}

/// Floating-point value of an exact rational, for reports and numeric checks.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    zeta::rational_to_f64(r)
}

#[cfg(test)]
mod tests;
