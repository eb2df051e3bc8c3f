use crate::linalg::rref;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Exact `q`-expansion of an elliptic modular form for `SL₂(Z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticQSeries {
    pub weight: i64,
    pub coeffs: Vec<BigRational>,
}

fn sigma(n: u64, r: u32) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| num_traits::pow(BigInt::from(d), r as usize)).sum()
}

fn eisenstein_elliptic(weight: i64, c: i64, n_terms: usize) -> Vec<BigRational> {
    (0..n_terms)
        .map(|n| {
            if n == 0 {
                BigRational::from_integer(1.into())
            } else {
                BigRational::from_integer(sigma(n as u64, (weight - 1) as u32) * c)
            }
        })
        .collect()
}

fn mul_series(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    (0..n).map(|i| (0..=i).fold(BigRational::zero(), |acc, j| acc + &a[j] * &b[i - j])).collect()
}

/// Echelonized basis of `M_weight(SL₂(Z))` to `n_terms` coefficients, built
/// from monomials `E₄^a·E₆^b`.
pub fn elliptic_basis(weight: i64, n_terms: usize) -> Vec<EllipticQSeries> {
    if weight < 0 || weight % 2 != 0 || weight == 2 {
        return Vec::new();
    }
    let e4 = eisenstein_elliptic(4, 240, n_terms);
    let e6 = eisenstein_elliptic(6, -504, n_terms);
    let mut monomials = Vec::new();
    for b in 0..=weight / 6 {
        let rest = weight - 6 * b;
        if rest % 4 != 0 {
            continue;
        }
        let a = rest / 4;
        let mut s = vec![BigRational::zero(); n_terms];
        if n_terms > 0 {
            s[0] = BigRational::from_integer(1.into());
        }
        for _ in 0..a {
            s = mul_series(&s, &e4);
        }
        for _ in 0..b {
            s = mul_series(&s, &e6);
        }
        monomials.push(s);
    }
    let (rows, _) = rref(&monomials);
    rows.into_iter().map(|coeffs| EllipticQSeries { weight, coeffs }).collect()
}
