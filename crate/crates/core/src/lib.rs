//! Exact and numeric tools for Hilbert modular forms over real quadratic
//! fields of narrow class number one: Fourier expansions, Eisenstein series,
//! Rankin–Cohen brackets, Hecke operators, holomorphic kernels and the
//! critical-value grid of Rankin–Selberg L-functions.

pub mod error;
pub mod quadfield;
pub mod fourier;
pub mod hecke;
pub mod kernels;
pub mod linalg;
pub mod lvalues;
pub mod modforms;
pub mod numberfield;
pub mod scalars;

pub use error::{Error, Result};
pub use quadfield::{FieldContext, IdealHNF, OElem, PrimeIdeal, PrimeKind, QuadRat, Xi};

use num_bigint::BigInt;
use num_rational::BigRational;

/// `"p/q"` (or `"p"` for integers).
pub fn rat_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> std::result::Result<BigRational, String> {
    let t = s.trim();
    let bad = |_| format!("invalid rational {s:?}");
    match t.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().map_err(bad)?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n.trim().parse().map_err(bad)?, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(bad)?)),
    }
}
