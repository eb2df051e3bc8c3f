//! Totally real number fields `Q[x]/(g)` given by a monic irreducible `g`.

use crate::error::{Error, Result};
use crate::linalg::{charpoly, to_f64, Poly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct NumberField {
    poly: Poly,
    /// Real roots of the defining polynomial, ascending; embedding `j` sends `θ` to `roots[j]`.
    roots: Vec<f64>,
}

/// Element `Σ c_j θ^j` of a [`NumberField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NfElem(pub Vec<BigRational>);

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// The field defined by the monic polynomial `g`; requires all roots real.
    pub fn new(g: Poly) -> Result<Self> {
        let g = g.monic();
        if g.degree() < 1 {
            return Err(Error::Precondition("defining polynomial must have degree >= 1".into()));
        }
        if !g.all_roots_real() {
            return Err(Error::Precondition("defining polynomial has non-real roots".into()));
        }
        let mut roots: Vec<f64> = g.roots().into_iter().map(|z| z.re).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(NumberField { poly: g, roots })
    }

    pub fn rationals() -> Self {
        NumberField::new(Poly::from_ints(&[0, 1])).expect("x is fine")
    }

    pub fn degree(&self) -> usize {
        self.poly.degree() as usize
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    fn reduce(&self, p: Poly) -> NfElem {
        let r = p.rem(&self.poly);
        let mut c = r.0;
        c.resize(self.degree(), BigRational::zero());
        NfElem(c)
    }

    fn as_poly(&self, x: &NfElem) -> Poly {
        Poly::new(x.0.clone())
    }

    pub fn zero(&self) -> NfElem {
        NfElem(vec![BigRational::zero(); self.degree()])
    }

    pub fn one(&self) -> NfElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> NfElem {
        let mut c = vec![BigRational::zero(); self.degree()];
        c[0] = r;
        NfElem(c)
    }

    /// Root `θ` of the defining polynomial (`θ = −g(0)` in degree one).
    pub fn gen(&self) -> NfElem {
        self.reduce(Poly::from_ints(&[0, 1]))
    }

    pub fn add(&self, x: &NfElem, y: &NfElem) -> NfElem {
        NfElem(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, x: &NfElem, y: &NfElem) -> NfElem {
        NfElem(x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self, x: &NfElem) -> NfElem {
        NfElem(x.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, x: &NfElem, r: &BigRational) -> NfElem {
        NfElem(x.0.iter().map(|a| a * r).collect())
    }

    pub fn mul(&self, x: &NfElem, y: &NfElem) -> NfElem {
        self.reduce(self.as_poly(x).mul(&self.as_poly(y)))
    }

    pub fn inv(&self, x: &NfElem) -> Result<NfElem> {
        if x.is_zero() {
            return Err(Error::Precondition("inverse of zero in a number field".into()));
        }
        // extended Euclid: s·x + t·g = 1
        let (mut r0, mut r1) = (self.poly.clone(), self.as_poly(x));
        let (mut s0, mut s1) = (Poly::zero(), Poly::from_ints(&[1]));
        while !r1.is_zero() {
            let (qq, r) = r0.divrem(&r1);
            let s = s0.sub(&qq.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != 0 {
            return Err(Error::Precondition("defining polynomial is reducible".into()));
        }
        Ok(self.reduce(s0.scale(&r0.lead().recip())))
    }

    pub fn div(&self, x: &NfElem, y: &NfElem) -> Result<NfElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &NfElem, n: u32) -> NfElem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Real value under embedding `j`.
    pub fn embed(&self, x: &NfElem, j: usize) -> f64 {
        let t = self.roots[j];
        x.0.iter().rev().fold(0.0, |acc, c| acc * t + to_f64(c))
    }

    /// Matrix of multiplication by `x` in the power basis.
    fn mult_matrix(&self, x: &NfElem) -> Vec<Vec<BigRational>> {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut b = self.one();
        let g = self.gen();
        for _ in 0..d {
            cols.push(self.mul(x, &b).0);
            b = self.mul(&b, &g);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Minimal polynomial of `x` over `Q`.
    pub fn minpoly(&self, x: &NfElem) -> Poly {
        let cp = charpoly(&self.mult_matrix(x));
        // charpoly is a power of the minimal polynomial
        let sq = cp.gcd(&cp.derivative());
        if sq.degree() <= 0 { cp.monic() } else { cp.divrem(&sq).0.monic() }
    }

    pub fn is_rational(&self, x: &NfElem) -> bool {
        x.0.iter().skip(1).all(|c| c.is_zero())
    }

    /// The nontrivial automorphism of a quadratic field, `θ ↦ −a₁ − θ`.
    pub fn conjugate(&self, x: &NfElem) -> Result<NfElem> {
        if self.degree() != 2 {
            return Err(Error::Precondition("conjugation is implemented for quadratic fields".into()));
        }
        let theta_bar = self.sub(&self.from_rational(-self.poly.coeff(1)), &self.gen());
        // x = c₀ + c₁θ ↦ c₀ + c₁θ̄
        Ok(self.add(&self.from_rational(x.0[0].clone()), &self.scale(&theta_bar, &x.0[1])))
    }

    pub fn to_strings(&self, x: &NfElem) -> Vec<String> {
        x.0.iter().map(crate::rat_to_string).collect()
    }

    /// Human-readable rendering in terms of `θ`.
    pub fn display(&self, x: &NfElem) -> String {
        let mut parts = Vec::new();
        for (j, c) in x.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = crate::rat_to_string(c);
            parts.push(match j {
                0 => s,
                1 => format!("({s})θ"),
                _ => format!("({s})θ^{j}"),
            });
        }
        if parts.is_empty() { "0".into() } else { parts.join(" + ") }
    }
}

impl NfElem {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn quadratic_field_arithmetic() {
        let k = NumberField::new(Poly::from_ints(&[-5, 0, 1])).unwrap();
        let t = k.gen();
        assert_eq!(k.mul(&t, &t), k.from_rational(q(5)));
        let x = k.add(&k.one(), &t);
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
        assert_eq!(k.minpoly(&x), Poly::from_ints(&[-4, -2, 1]));
        assert_eq!(k.conjugate(&x).unwrap(), k.sub(&k.one(), &t));
        assert!(k.embed(&t, 0) < 0.0 && k.embed(&t, 1) > 0.0);
    }

    #[test]
    fn rejects_complex_fields() {
        assert!(NumberField::new(Poly::from_ints(&[1, 0, 1])).is_err());
    }

    #[test]
    fn rational_field() {
        let k = NumberField::rationals();
        assert_eq!(k.degree(), 1);
        assert_eq!(k.gen(), k.zero());
        assert_eq!(k.minpoly(&k.from_rational(q(3))), Poly::from_ints(&[-3, 1]));
    }
}
