//! Minimal fixed-point arithmetic: a value `x` is held as the integer `⌊x·2^P⌋`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `⌊num·2^p/den⌋` (rounded toward −∞).
pub(crate) fn from_ratio(num: &BigInt, den: &BigInt, p: u32) -> BigInt {
    Integer::div_floor(&(num << p as usize), den)
}

pub(crate) fn from_rational(r: &BigRational, p: u32) -> BigInt {
    from_ratio(r.numer(), r.denom(), p)
}

pub(crate) fn mul(x: &BigInt, y: &BigInt, p: u32) -> BigInt {
    (x * y) >> p as usize
}

pub(crate) fn div(x: &BigInt, y: &BigInt, p: u32) -> BigInt {
    Integer::div_floor(&(x << p as usize), y)
}

pub(crate) fn pow(x: &BigInt, n: u32, p: u32) -> BigInt {
    let mut acc = BigInt::one() << p as usize;
    for _ in 0..n {
        acc = mul(&acc, x, p);
    }
    acc
}

/// `√n` for a nonnegative integer `n`.
pub(crate) fn sqrt_int(n: u64, p: u32) -> BigInt {
    (BigInt::from(n) << (2 * p) as usize).sqrt()
}

fn atan_inv(x: u64, p: u32) -> BigInt {
    // Σ (−1)^k / ((2k+1)·x^{2k+1})
    let one = BigInt::one() << p as usize;
    let x2 = BigInt::from(x * x);
    let mut power = one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// π by Machin's formula.
pub(crate) fn pi(p: u32) -> BigInt {
    let guard = 32;
    let q = p + guard;
    let v = atan_inv(5, q) * 16 - atan_inv(239, q) * 4;
    v >> guard as usize
}

/// Continued-fraction reconstruction of a rational with denominator at most
/// `max_den`, requiring agreement with the fixed-point value to `tol_bits`.
pub(crate) fn reconstruct(x: &BigInt, p: u32, max_den: &BigInt, tol_bits: u32) -> Option<BigRational> {
    let scale = BigInt::one() << p as usize;
    let (mut num, mut den) = (x.clone(), scale.clone());
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let tol = BigInt::one() << (p.saturating_sub(tol_bits)) as usize;
    for _ in 0..10_000 {
        if den.is_zero() {
            break;
        }
        let (a, r) = num.div_mod_floor(&den);
        let h_new = &a * &h + &h_prev;
        let k_new = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_new);
        k_prev = std::mem::replace(&mut k, k_new);
        if &k > max_den {
            return None;
        }
        // |x·k − h·2^p| ≤ k·tol
        let err = (x * &k - &h * &scale).abs();
        if err <= &k * &tol {
            return Some(BigRational::new(h, k));
        }
        num = den;
        den = r;
    }
    None
}

pub(crate) fn to_f64(x: &BigInt, p: u32) -> f64 {
    let bits = x.bits() as i64;
    let shift = (bits - 60).max(0);
    let top = (x >> shift as usize).to_string().parse::<f64>().unwrap_or(0.0);
    let v = top * 2f64.powi((shift - p as i64) as i32);
    if x.sign() == Sign::Minus && v > 0.0 { -v } else { v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = 200;
        let v = pi(p);
        assert!((to_f64(&v, p) - std::f64::consts::PI).abs() < 1e-15);
        // agree with a higher-precision run
        let w = pi(400) >> 200usize;
        assert!((v - w).abs() <= BigInt::from(2));
    }

    #[test]
    fn reconstruct_simple() {
        let p = 256;
        let r = BigRational::new((-355).into(), 113.into());
        let x = from_rational(&r, p);
        let got = reconstruct(&x, p, &(BigInt::one() << 64usize), 200).unwrap();
        assert_eq!(got, r);
    }
}
