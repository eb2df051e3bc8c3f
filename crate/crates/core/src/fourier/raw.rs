use super::{FourierExpansion, OrbitTable};
use crate::error::{Error, Result};
use crate::quadfield::{FieldContext, QuadRat};
use crate::scalars::FormalScalar;
use num_complex::Complex64;
use num_rational::BigRational;
use std::sync::Arc;

/// Expansion indexed by every `ξ` in the trace box, coefficients in `Q(√D)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawExpansion {
    table: Arc<OrbitTable>,
    constant: QuadRat,
    /// Aligned with `table.full()`.
    coeffs: Vec<QuadRat>,
}

impl RawExpansion {
    pub fn ctx(&self) -> &FieldContext {
        self.table.ctx()
    }

    pub fn trace_bound(&self) -> i64 {
        self.table.trace_bound()
    }

    pub fn constant_term(&self) -> &QuadRat {
        &self.constant
    }

    pub fn coeffs(&self) -> &[QuadRat] {
        &self.coeffs
    }

    /// Orbit expansion of `f` (no derivative).
    pub fn expand(f: &FourierExpansion) -> Self {
        let table = f.table().clone();
        let coeffs = table.full().iter().map(|&(_, i)| QuadRat::from_rational(f.coeffs()[i].clone())).collect();
        RawExpansion { table, constant: QuadRat::from_rational(f.constant_term().clone()), coeffs }
    }

    /// `∂^{l₁}_{z₁}∂^{l₂}_{z₂} f` as coefficients `a(ξ)·ξ^{l₁}·ξ'^{l₂}`; the factor
    /// `(2πi)^{l₁+l₂}` is returned separately.
    pub fn derivative(f: &FourierExpansion, l1: u32, l2: u32) -> (Self, FormalScalar) {
        let ctx = f.ctx().clone();
        let table = f.table().clone();
        let coeffs = table
            .full()
            .iter()
            .map(|&(x, i)| {
                let xi = ctx.xi_to_quadrat(x);
                let xc = xi.conj(&ctx);
                QuadRat::from_rational(f.coeffs()[i].clone()).mul(&xi.pow(l1, &ctx).mul(&xc.pow(l2, &ctx), &ctx), &ctx)
            })
            .collect();
        let constant = if l1 + l2 == 0 { QuadRat::from_rational(f.constant_term().clone()) } else { QuadRat::zero() };
        let two_pi_i = FormalScalar::from_int(2).mul(&FormalScalar::pi()).mul(&FormalScalar::i());
        let mult = two_pi_i.pow((l1 + l2) as i64).expect("nonnegative power");
        (RawExpansion { table, constant, coeffs }, mult)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.ctx() != o.ctx() || self.trace_bound() != o.trace_bound() {
            return Err(Error::FieldMismatch);
        }
        Ok(RawExpansion {
            table: self.table.clone(),
            constant: self.constant.add(&o.constant),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        RawExpansion {
            table: self.table.clone(),
            constant: self.constant.scale(r),
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    /// Convolution product over the full index set.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.ctx() != o.ctx() || self.trace_bound() != o.trace_bound() {
            return Err(Error::FieldMismatch);
        }
        let ctx = self.ctx();
        let full = self.table.full();
        let pos: std::collections::HashMap<_, _> = full.iter().enumerate().map(|(n, &(x, _))| (x, n)).collect();
        let mut coeffs = Vec::with_capacity(full.len());
        for &(x, _) in full {
            let n = pos[&x];
            let mut acc = self.constant.mul(&o.coeffs[n], ctx).add(&self.coeffs[n].mul(&o.constant, ctx));
            for (m, &(x1, _)) in full.iter().enumerate() {
                if x1.q >= x.q {
                    break;
                }
                let x2 = x.sub(x1);
                if let Some(&m2) = pos.get(&x2) {
                    acc = acc.add(&self.coeffs[m].mul(&o.coeffs[m2], ctx));
                }
            }
            coeffs.push(acc);
        }
        Ok(RawExpansion { table: self.table.clone(), constant: self.constant.mul(&o.constant, ctx), coeffs })
    }

    /// Back to orbit storage; fails unless the coefficients are rational and
    /// constant on unit orbits.
    pub fn compress(&self, weight: i64) -> Result<FourierExpansion> {
        let n_orbits = self.table.len();
        let mut out: Vec<Option<BigRational>> = vec![None; n_orbits];
        for (n, &(_, i)) in self.table.full().iter().enumerate() {
            let c = &self.coeffs[n];
            if !c.is_rational() {
                return Err(Error::SymmetryViolated(format!("irrational coefficient {:?}", c.to_strings())));
            }
            match &out[i] {
                None => out[i] = Some(c.a.clone()),
                Some(v) if *v == c.a => {}
                Some(_) => return Err(Error::SymmetryViolated("coefficients not unit invariant".into())),
            }
        }
        if !self.constant.is_rational() {
            return Err(Error::SymmetryViolated("irrational constant term".into()));
        }
        Ok(FourierExpansion::from_parts(
            self.table.clone(),
            weight,
            self.constant.a.clone(),
            out.into_iter().map(|c| c.expect("every orbit has an element in the box")).collect(),
        ))
    }

    /// Numeric value at `z`, coefficients read through the first real embedding.
    pub fn evaluate_numeric(&self, z: (Complex64, Complex64)) -> Complex64 {
        let ctx = self.ctx();
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let mut v = Complex64::new(self.constant.embed(ctx).0, 0.0);
        for (n, &(x, _)) in self.table.full().iter().enumerate() {
            let c = self.coeffs[n].embed(ctx).0;
            if c == 0.0 {
                continue;
            }
            let (e1, e2) = ctx.xi_embed(x);
            v += c * (two_pi_i * (z.0 * e1 + z.1 * e2)).exp();
        }
        v
    }
}
