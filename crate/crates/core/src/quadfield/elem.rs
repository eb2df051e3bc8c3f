use super::FieldContext;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Integral element `a + b·ω` with machine-size coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OElem {
    pub a: i64,
    pub b: i64,
}

impl OElem {
    pub const ONE: OElem = OElem { a: 1, b: 0 };
    pub const ZERO: OElem = OElem { a: 0, b: 0 };
    pub const OMEGA: OElem = OElem { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        OElem { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn add(self, o: OElem) -> OElem {
        OElem::new(self.a + o.a, self.b + o.b)
    }

    pub fn sub(self, o: OElem) -> OElem {
        OElem::new(self.a - o.a, self.b - o.b)
    }

    pub fn scale(self, k: i64) -> OElem {
        OElem::new(self.a * k, self.b * k)
    }
}

/// Totally positive element of the inverse different, stored as
/// `√D·ξ = p + q·ω ∈ 𝒪`. The trace of `ξ` equals `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Xi {
    pub p: i64,
    pub q: i64,
}

impl Xi {
    pub const fn new(p: i64, q: i64) -> Self {
        Xi { p, q }
    }

    pub fn trace(&self) -> i64 {
        self.q
    }

    pub fn as_oelem(&self) -> OElem {
        OElem::new(self.p, self.q)
    }

    pub fn from_oelem(x: OElem) -> Self {
        Xi::new(x.a, x.b)
    }

    pub fn add(self, o: Xi) -> Xi {
        Xi::new(self.p + o.p, self.q + o.q)
    }

    pub fn sub(self, o: Xi) -> Xi {
        Xi::new(self.p - o.p, self.q - o.q)
    }
}

/// Element `a + b·ω` of `F` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub a: BigRational,
    pub b: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadRat {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadRat { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadRat::new(rat(a), rat(b))
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadRat::new(a, BigRational::zero())
    }

    pub fn from_oelem(x: OElem) -> Self {
        QuadRat::from_ints(x.a, x.b)
    }

    pub fn zero() -> Self {
        QuadRat::from_ints(0, 0)
    }

    pub fn one() -> Self {
        QuadRat::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the element lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &QuadRat) -> QuadRat {
        QuadRat::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &QuadRat) -> QuadRat {
        QuadRat::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> QuadRat {
        QuadRat::new(-&self.a, -&self.b)
    }

    pub fn scale(&self, r: &BigRational) -> QuadRat {
        QuadRat::new(&self.a * r, &self.b * r)
    }

    pub fn mul(&self, o: &QuadRat, ctx: &FieldContext) -> QuadRat {
        let bd = &self.b * &o.b;
        let re = &self.a * &o.a - &bd * rat(ctx.omega_norm());
        let om = &self.a * &o.b + &self.b * &o.a + &bd * rat(ctx.discriminant());
        QuadRat::new(re, om)
    }

    pub fn pow(&self, n: u32, ctx: &FieldContext) -> QuadRat {
        let mut acc = QuadRat::one();
        for _ in 0..n {
            acc = acc.mul(self, ctx);
        }
        acc
    }

    pub fn conj(&self, ctx: &FieldContext) -> QuadRat {
        QuadRat::new(&self.a + &self.b * rat(ctx.discriminant()), -&self.b)
    }

    pub fn norm(&self, ctx: &FieldContext) -> BigRational {
        &self.a * &self.a
            + &self.a * &self.b * rat(ctx.discriminant())
            + &self.b * &self.b * rat(ctx.omega_norm())
    }

    pub fn trace(&self, ctx: &FieldContext) -> BigRational {
        &self.a * rat(2) + &self.b * rat(ctx.discriminant())
    }

    pub fn inv(&self, ctx: &FieldContext) -> Option<QuadRat> {
        let n = self.norm(ctx);
        if n.is_zero() {
            return None;
        }
        let inv_n = n.recip();
        Some(self.conj(ctx).scale(&inv_n))
    }

    pub fn is_totally_positive(&self, ctx: &FieldContext) -> bool {
        self.trace(ctx).is_positive() && self.norm(ctx).is_positive()
    }

    pub fn embed(&self, ctx: &FieldContext) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let (w1, w2) = ctx.omega_embeddings();
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        (a + b * w1, a + b * w2)
    }

    /// Integral coordinates, if the element lies in `𝒪`.
    pub fn to_oelem(&self) -> Option<OElem> {
        use num_traits::ToPrimitive;
        if !self.a.is_integer() || !self.b.is_integer() {
            return None;
        }
        Some(OElem::new(self.a.to_integer().to_i64()?, self.b.to_integer().to_i64()?))
    }

    /// Coordinates as a pair of `"p/q"` strings.
    pub fn to_strings(&self) -> [String; 2] {
        [crate::rat_to_string(&self.a), crate::rat_to_string(&self.b)]
    }

    /// Multiplicative identity check used by tests.
    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl Serialize for QuadRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let pa = crate::parse_rat(&a).map_err(serde::de::Error::custom)?;
        let pb = crate::parse_rat(&b).map_err(serde::de::Error::custom)?;
        Ok(QuadRat::new(pa, pb))
    }
}
