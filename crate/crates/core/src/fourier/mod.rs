//! Truncated Fourier expansions of parallel-weight Hilbert modular forms.
//!
//! Modular objects store one exact coefficient per unit orbit of totally
//! positive `ξ ∈ 𝔡⁻¹` ([`FourierExpansion`]). Derivatives are not unit
//! invariant and live in [`RawExpansion`], indexed by every `ξ` in the trace
//! box with coefficients in `Q(√D)`.

mod raw;
mod table;

pub use raw::RawExpansion;
pub use table::OrbitTable;

use crate::error::{Error, Result};
use crate::quadfield::{FieldContext, QuadRat, Xi};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Truncated expansion `a(0) + Σ a(ξ)·e^{2πi·Tr(ξz)}` with rational
/// coefficients, trusted up to `trace_bound`.
#[derive(Clone, Debug)]
pub struct FourierExpansion {
    table: Arc<OrbitTable>,
    weight: i64,
    constant: BigRational,
    coeffs: Vec<BigRational>,
}

impl PartialEq for FourierExpansion {
    fn eq(&self, o: &Self) -> bool {
        self.table.ctx() == o.table.ctx()
            && self.weight == o.weight
            && self.trace_bound() == o.trace_bound()
            && self.constant == o.constant
            && self.coeffs == o.coeffs
    }
}

impl FourierExpansion {
    pub fn zero(ctx: &FieldContext, weight: i64, n: i64) -> Self {
        let table = OrbitTable::get(ctx, n);
        let coeffs = vec![BigRational::zero(); table.len()];
        FourierExpansion { table, weight, constant: BigRational::zero(), coeffs }
    }

    /// The constant form `c` (weight 0).
    pub fn constant_form(ctx: &FieldContext, c: BigRational, n: i64) -> Self {
        let mut f = Self::zero(ctx, 0, n);
        f.constant = c;
        f
    }

    /// Expansion from per-orbit coefficients in table order.
    pub fn from_parts(table: Arc<OrbitTable>, weight: i64, constant: BigRational, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), table.len());
        FourierExpansion { table, weight, constant, coeffs }
    }

    pub fn ctx(&self) -> &FieldContext {
        self.table.ctx()
    }

    pub fn table(&self) -> &Arc<OrbitTable> {
        &self.table
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn trace_bound(&self) -> i64 {
        self.table.trace_bound()
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.constant
    }

    /// Coefficients in orbit order.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_cuspidal(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `a(ξ)` for any totally positive `ξ` whose orbit is in range.
    pub fn coeff(&self, x: Xi) -> Option<&BigRational> {
        self.table.orbit_of(x).map(|i| &self.coeffs[i])
    }

    /// `a(ξ)` at the orbit attached to the integral ideal `m = (ξ)𝔡`.
    pub fn coeff_ideal(&self, m: &crate::quadfield::IdealHNF) -> Result<Option<BigRational>> {
        let ctx = self.ctx();
        let g = ctx.principal_generator_tp(m)?;
        Ok(self.coeff(ctx.xi_from_generator(g)).cloned())
    }

    /// Same expansion re-indexed on a smaller trace bound.
    pub fn truncate(&self, n: i64) -> Self {
        let n = n.min(self.trace_bound());
        if n == self.trace_bound() {
            return self.clone();
        }
        let table = OrbitTable::get(self.ctx(), n);
        let coeffs = self.coeffs[..table.len()].to_vec();
        FourierExpansion { table, weight: self.weight, constant: self.constant.clone(), coeffs }
    }

    fn aligned(&self, o: &Self) -> Result<(Self, Self)> {
        if self.ctx() != o.ctx() {
            return Err(Error::FieldMismatch);
        }
        let n = self.trace_bound().min(o.trace_bound());
        Ok((self.truncate(n), o.truncate(n)))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.weight != o.weight {
            return Err(Error::WeightMismatch(self.weight, o.weight));
        }
        let (a, b) = self.aligned(o)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(FourierExpansion { coeffs, constant: &a.constant + &b.constant, ..a })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&BigRational::from_integer((-1).into())))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        FourierExpansion {
            table: self.table.clone(),
            weight: self.weight,
            constant: &self.constant * r,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Exact equality of both expansions up to trace `bound`.
    pub fn equals_upto(&self, o: &Self, bound: i64) -> Result<bool> {
        if self.ctx() != o.ctx() {
            return Err(Error::FieldMismatch);
        }
        if self.weight != o.weight {
            return Err(Error::WeightMismatch(self.weight, o.weight));
        }
        if bound > self.trace_bound().min(o.trace_bound()) {
            return Err(Error::InsufficientTruncation(format!(
                "comparison to trace {bound} exceeds stored bounds {} and {}",
                self.trace_bound(),
                o.trace_bound()
            )));
        }
        let len = self.table.prefix_len(bound);
        Ok(self.constant == o.constant && self.coeffs[..len] == o.coeffs[..len])
    }

    /// `a(ξ') = a(ξ)` on every stored orbit.
    pub fn is_symmetric(&self) -> bool {
        let ctx = self.ctx();
        (0..self.table.len()).all(|i| {
            let c = ctx.xi_conj(self.table.rep(i));
            self.coeff(c).map_or(true, |v| v == &self.coeffs[i])
        })
    }

    /// Product of two expansions, trusted to the smaller trace bound.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.aligned(o)?;
        let out = convolve(&a, &b, |_, _| BigInt::from(1));
        Ok(FourierExpansion {
            table: a.table.clone(),
            weight: a.weight + b.weight,
            constant: &a.constant * &b.constant,
            coeffs: out,
        })
    }

    /// `c(n) = Σ_{Tr ξ = n} a(ξ)` over all elements, with `c(0)` the constant term.
    pub fn diagonal_restriction(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.trace_bound() as usize + 1];
        out[0] = self.constant.clone();
        for &(x, i) in self.table.full() {
            out[x.q as usize] += &self.coeffs[i];
        }
        out
    }

    /// Numeric value at `z = (z₁, z₂)` with a heuristic tail bound; fails when
    /// the bound exceeds `tolerance`.
    pub fn evaluate_numeric(&self, z: (Complex64, Complex64), tolerance: Option<f64>) -> Result<(Complex64, f64)> {
        if z.0.im <= 0.0 || z.1.im <= 0.0 {
            return Err(Error::Precondition("evaluation point must lie in H²".into()));
        }
        let ctx = self.ctx();
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let mut v = Complex64::new(rat_f64(&self.constant), 0.0);
        for &(x, i) in self.table.full() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let (e1, e2) = ctx.xi_embed(x);
            v += rat_f64(c) * (two_pi_i * (z.0 * e1 + z.1 * e2)).exp();
        }
        let tail = self.tail_bound(z.0.im.min(z.1.im));
        if let Some(tol) = tolerance {
            if tail > tol {
                return Err(Error::TailBoundTooLarge(tail));
            }
        }
        Ok((v, tail))
    }

    /// Geometric tail model: coefficients grow like `Tr^w`, the number of
    /// terms of trace `t` like `√D·t`, each damped by `e^{−2π·t·y}`.
    fn tail_bound(&self, y: f64) -> f64 {
        let n = self.trace_bound();
        let mut amax: f64 = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.table.min_elem(i).q * 2 > n {
                amax = amax.max(rat_f64(&c.abs()));
            }
        }
        if amax == 0.0 {
            amax = self.coeffs.iter().map(|c| rat_f64(&c.abs())).fold(0.0, f64::max);
        }
        let sd = self.ctx().sqrt_d();
        let w = self.weight.max(1) as f64;
        let mut tail = 0.0;
        for t in (n + 1)..=(n + 400) {
            let t = t as f64;
            tail += amax * sd * t * (t / n.max(1) as f64).powf(w) * (-2.0 * std::f64::consts::PI * t * y).exp();
        }
        tail
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FourierJson::from(self)).expect("serializable")
    }

    pub fn from_json(ctx: &FieldContext, v: &serde_json::Value) -> Result<Self> {
        let j: FourierJson = serde_json::from_value(v.clone()).map_err(|e| Error::Precondition(e.to_string()))?;
        if j.d != ctx.discriminant() {
            return Err(Error::FieldMismatch);
        }
        let table = OrbitTable::get(ctx, j.trace_bound);
        let parse = |s: &str| crate::parse_rat(s).map_err(Error::Precondition);
        let mut coeffs = vec![BigRational::zero(); table.len()];
        let mut seen = vec![false; table.len()];
        for e in &j.coeffs {
            let xi = QuadRat::new(parse(&e.xi[0])?, parse(&e.xi[1])?);
            let x = quadrat_to_xi(ctx, &xi)?;
            let i = table
                .orbit_of(x)
                .ok_or_else(|| Error::Precondition(format!("index {:?} outside the trace box", e.xi)))?;
            coeffs[i] = parse(&e.val)?;
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Precondition("missing orbit coefficients".into()));
        }
        Ok(FourierExpansion { table, weight: j.weight, constant: parse(&j.constant)?, coeffs })
    }
}

/// `√D·ξ` as an [`Xi`].
pub(crate) fn quadrat_to_xi(ctx: &FieldContext, xi: &QuadRat) -> Result<Xi> {
    // √D = 2ω − D
    let sd = QuadRat::from_ints(-ctx.discriminant(), 2);
    let x = xi.mul(&sd, ctx).to_oelem().ok_or_else(|| Error::Precondition("not in the inverse different".into()))?;
    let x = Xi::from_oelem(x);
    if !ctx.xi_is_tp(x) {
        return Err(Error::NotTotallyPositive);
    }
    Ok(x)
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    xi: [String; 2],
    val: String,
}

#[derive(Serialize, Deserialize)]
struct FourierJson {
    #[serde(rename = "D")]
    d: i64,
    weight: i64,
    trace_bound: i64,
    ring: String,
    #[serde(rename = "const")]
    constant: String,
    coeffs: Vec<CoeffJson>,
}

impl From<&FourierExpansion> for FourierJson {
    fn from(f: &FourierExpansion) -> Self {
        let ctx = f.ctx();
        let coeffs = (0..f.table.len())
            .map(|i| CoeffJson {
                xi: ctx.xi_to_quadrat(f.table.rep(i)).to_strings(),
                val: crate::rat_to_string(&f.coeffs[i]),
            })
            .collect();
        FourierJson {
            d: ctx.discriminant(),
            weight: f.weight,
            trace_bound: f.trace_bound(),
            ring: "QQ".into(),
            constant: crate::rat_to_string(&f.constant),
            coeffs,
        }
    }
}

pub(crate) fn rat_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => crate::scalars::rat_to_f64(r),
    }
}

/// `c(ξ) = Σ_{ξ₁+ξ₂=ξ} a(ξ₁)·b(ξ₂)·w(X₁, X₂)` over decompositions into parts
/// that are zero or totally positive, evaluated at the minimal element of
/// each orbit. `w` receives the √D-coordinates of the parts (zero allowed)
/// and returns an integer weight.
pub(crate) fn convolve<W>(a: &FourierExpansion, b: &FourierExpansion, w: W) -> Vec<BigRational>
where
    W: Fn(Xi, Xi) -> BigInt + Sync,
{
    let table = a.table.clone();
    let ctx = table.ctx().clone();
    let zero = Xi::new(0, 0);
    (0..table.len())
        .into_par_iter()
        .map(|i| {
            let x = table.min_elem(i);
            let mut acc = BigRational::zero();
            if !b.coeffs[i].is_zero() && !a.constant.is_zero() {
                acc += &a.constant * &b.coeffs[i] * BigRational::from_integer(w(zero, x));
            }
            if !a.coeffs[i].is_zero() && !b.constant.is_zero() {
                acc += &a.coeffs[i] * &b.constant * BigRational::from_integer(w(x, zero));
            }
            for &(x1, j) in table.full() {
                if x1.q >= x.q {
                    break;
                }
                let x2 = x.sub(x1);
                if !ctx.xi_is_tp(x2) {
                    continue;
                }
                let aj = &a.coeffs[j];
                if aj.is_zero() {
                    continue;
                }
                let k = table.orbit_of_full(x2).expect("smaller trace lies in the box");
                let bk = &b.coeffs[k];
                if bk.is_zero() {
                    continue;
                }
                acc += aj * bk * BigRational::from_integer(w(x1, x2));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests;
