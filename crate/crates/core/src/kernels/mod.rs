//! Numeric evaluation of the defining sums: coset enumeration for
//! `Γ_∞⁺\Γ`, the Eisenstein coset sum, the Cohen kernel, the double
//! Eisenstein series and the Lipschitz summation identity.
//!
//! Everything here is `f64`; these evaluations are cross-checks of the exact
//! pipeline, never inputs to it.

mod gamma;

pub use gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};
use crate::quadfield::{FieldContext, OElem};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;
use std::f64::consts::PI;

/// A point of `H²`.
pub type Point = (Complex64, Complex64);

/// Bottom row `(c, d)` of a coset in `Γ_∞⁺\Γ`, completed to `[[a, b], [c, d]] ∈ SL₂(𝒪)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CosetRep {
    pub a: OElem,
    pub b: OElem,
    pub c: OElem,
    pub d: OElem,
}

impl CosetRep {
    /// `|N(c·i + d)| = √N(c² + d²)`, invariant under the unit action.
    pub fn height(&self, ctx: &FieldContext) -> f64 {
        (ctx.norm(sum_sq(ctx, self.c, self.d)) as f64).sqrt()
    }

    /// `|N(cz + d)| / √N(Im z)`; agrees with [`height`](Self::height) at
    /// `z = (i, i)` and satisfies `H_{γz}(δ) = H_z(δγ)`.
    pub fn height_at(&self, ctx: &FieldContext, z: Point) -> f64 {
        let j = self.j(ctx, z);
        (j.0 * j.1).norm() / (z.0.im * z.1.im).sqrt()
    }

    /// `j(γ, z)` in both embeddings.
    pub fn j(&self, ctx: &FieldContext, z: Point) -> Point {
        let (c1, c2) = ctx.embed(self.c);
        let (d1, d2) = ctx.embed(self.d);
        (z.0 * c1 + d1, z.1 * c2 + d2)
    }

    /// `γz` in both embeddings.
    pub fn act(&self, ctx: &FieldContext, z: Point) -> Point {
        let (a1, a2) = ctx.embed(self.a);
        let (b1, b2) = ctx.embed(self.b);
        let (j1, j2) = self.j(ctx, z);
        ((z.0 * a1 + b1) / j1, (z.1 * a2 + b2) / j2)
    }
}

/// Numeric value of a truncated sum with its empirical tail.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KernelEvalReport {
    pub value: Complex64,
    pub height_bound: f64,
    /// `|value(B) − value(B/2)|`.
    pub tail_estimate: f64,
    pub region_ok: bool,
}

fn sum_sq(ctx: &FieldContext, c: OElem, d: OElem) -> OElem {
    ctx.mul(c, c).add(ctx.mul(d, d))
}

/// Extended-gcd column reduction of a 2×n integer matrix (columns given as
/// pairs); returns the lower-triangular leading block and the transform.
fn column_hnf(cols: &[(i128, i128)]) -> ((i128, i128, i128), Vec<Vec<i128>>) {
    let n = cols.len();
    let mut m: Vec<(i128, i128)> = cols.to_vec();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    // u[j] is the combination of original columns giving m[j]
    let reduce = |m: &mut Vec<(i128, i128)>, u: &mut Vec<Vec<i128>>, row: usize, pivot: usize| {
        let get = |p: &(i128, i128)| if row == 0 { p.0 } else { p.1 };
        for j in pivot + 1..n {
            while get(&m[j]) != 0 {
                let q = get(&m[pivot]).div_euclid(get(&m[j]));
                m[pivot] = (m[pivot].0 - q * m[j].0, m[pivot].1 - q * m[j].1);
                let uj = u[j].clone();
                for (x, y) in u[pivot].iter_mut().zip(&uj) {
                    *x -= q * y;
                }
                m.swap(pivot, j);
                u.swap(pivot, j);
            }
        }
    };
    reduce(&mut m, &mut u, 0, 0);
    reduce(&mut m, &mut u, 1, 1);
    ((m[0].0, m[0].1, m[1].1), u)
}

/// `(a, b)` with `a·d − b·c = 1`, if `𝒪c + 𝒪d = 𝒪`.
pub fn complete_row(ctx: &FieldContext, c: OElem, d: OElem) -> Option<(OElem, OElem)> {
    let w = OElem::OMEGA;
    let v = |x: OElem| (x.a as i128, x.b as i128);
    let cols = [v(d), v(ctx.mul(d, w)), v(ctx.neg(c)), v(ctx.neg(ctx.mul(c, w)))];
    let ((g, e, h), u) = column_hnf(&cols);
    if g.abs() != 1 || h.abs() != 1 {
        return None;
    }
    // g·y₁ = 1, e·y₁ + h·y₂ = 0
    let y1 = g;
    let y2 = -e * y1 * h;
    let x: Vec<i128> = (0..4).map(|i| y1 * u[0][i] + y2 * u[1][i]).collect();
    let a = OElem::new(x[0] as i64, x[1] as i64);
    let b = OElem::new(x[2] as i64, x[3] as i64);
    debug_assert_eq!(ctx.mul(a, d).sub(ctx.mul(b, c)), OElem::ONE);
    Some((a, b))
}

/// Integral elements with `|x₁ − m₁| ≤ r1`, `|x₂ − m₂| ≤ r2`.
fn box_elements(ctx: &FieldContext, m: (f64, f64), r1: f64, r2: f64) -> Vec<OElem> {
    let (w1, w2) = ctx.omega_embeddings();
    let sd = ctx.sqrt_d();
    // x₁ − x₂ = b·√D
    let blo = ((m.0 - r1 - m.1 - r2) / sd).floor() as i64;
    let bhi = ((m.0 + r1 - m.1 + r2) / sd).ceil() as i64;
    let mut out = Vec::new();
    for b in blo..=bhi {
        let (b1, b2) = (b as f64 * w1, b as f64 * w2);
        let lo = (m.0 - r1 - b1).max(m.1 - r2 - b2).ceil() as i64;
        let hi = (m.0 + r1 - b1).min(m.1 + r2 - b2).floor() as i64;
        for a in lo..=hi {
            out.push(OElem::new(a, b));
        }
    }
    out
}

/// Generator of the totally positive units.
fn tp_unit(ctx: &FieldContext) -> OElem {
    if ctx.is_totally_positive(ctx.eps0()) {
        ctx.eps0()
    } else {
        ctx.eps0_sq()
    }
}

/// Canonical under `T ↦ u²T`: `T₁ ≥ T₂` and `(u⁻²T)₁ < (u⁻²T)₂`.
fn is_canonical(ctx: &FieldContext, t: OElem) -> bool {
    let u = tp_unit(ctx);
    let ui = ctx.conj(u); // N(u) = 1
    let ui2 = ctx.mul(ui, ui);
    t.b >= 0 && ctx.mul(t, ui2).b < 0
}

/// One representative per coset of `Γ_∞⁺\Γ` with height at most `bound`.
pub fn coset_reps(ctx: &FieldContext, bound: f64) -> Vec<CosetRep> {
    let i = Complex64::i();
    coset_reps_at(ctx, bound, (i, i))
}

/// One representative per coset with `H_z ≤ bound`, sorted by `H_z`.
///
/// Each coset has a unit multiple with `Q₁/Q₂ ∈ [u₁⁻², u₁²]`, where
/// `Q_i = |c_i z_i + d_i|²` and `u` generates the totally positive units, so
/// it suffices to scan `Q₁, Q₂ ≤ R = bound·√N(y)·u₁` and reduce.
pub fn coset_reps_at(ctx: &FieldContext, bound: f64, z: Point) -> Vec<CosetRep> {
    let (u1, _) = ctx.embed(tp_unit(ctx));
    let u1 = u1.max(1.0 / u1);
    let (x, y) = ((z.0.re, z.1.re), (z.0.im, z.1.im));
    let ny = y.0 * y.1;
    let r = bound * ny.sqrt() * u1 * (1.0 + 1e-9);
    let sr = r.sqrt();
    let cs = box_elements(ctx, (0.0, 0.0), sr / y.0, sr / y.1);
    let limit = bound * bound * ny * (1.0 + 1e-12);
    let found: HashSet<(OElem, OElem)> = cs
        .par_iter()
        .flat_map_iter(|&c| {
            let (c1, c2) = ctx.embed(c);
            let rad = |ci: f64, yi: f64| (r - ci * ci * yi * yi).max(0.0).sqrt();
            let ds = box_elements(ctx, (-c1 * x.0, -c2 * x.1), rad(c1, y.0), rad(c2, y.1));
            ds.into_iter().filter_map(move |d| {
                if c.is_zero() && d.is_zero() {
                    return None;
                }
                let (d1, d2) = ctx.embed(d);
                let q1 = (c1 * x.0 + d1).powi(2) + (c1 * y.0).powi(2);
                let q2 = (c2 * x.1 + d2).powi(2) + (c2 * y.1).powi(2);
                (q1 * q2 <= limit).then(|| reduce_pair(ctx, c, d))
            })
        })
        .collect();
    let mut out: Vec<(f64, CosetRep)> = found
        .into_par_iter()
        .filter_map(|(c, d)| complete_row(ctx, c, d).map(|(a, b)| CosetRep { a, b, c, d }))
        .map(|g| (g.height_at(ctx, z), g))
        .collect();
    out.sort_by(|p, q| p.0.total_cmp(&q.0).then((p.1.c, p.1.d).cmp(&(q.1.c, q.1.d))));
    out.into_iter().map(|p| p.1).collect()
}

/// Reduces `(c, d)` to its canonical representative under `𝒪_+^×`.
pub fn reduce_pair(ctx: &FieldContext, c: OElem, d: OElem) -> (OElem, OElem) {
    let u = tp_unit(ctx);
    let ui = ctx.conj(u);
    let (mut c, mut d) = (c, d);
    for _ in 0..10_000 {
        let t = sum_sq(ctx, c, d);
        if is_canonical(ctx, t) {
            break;
        }
        if t.b < 0 {
            c = ctx.mul(c, u);
            d = ctx.mul(d, u);
        } else {
            c = ctx.mul(c, ui);
            d = ctx.mul(d, ui);
        }
    }
    (c, d)
}

fn check_point(z: Point) -> Result<()> {
    if z.0.im <= 0.0 || z.1.im <= 0.0 {
        return Err(Error::Precondition("point must lie in H^2".into()));
    }
    Ok(())
}

fn powi_norm(j: Point, k: i64) -> Complex64 {
    (j.0 * j.1).powi(-(k as i32))
}

/// `Σ_{Γ_∞⁺\Γ} N(cz + d)^{−k}` (constant term 4 in the normalization of the cosets).
pub fn eisenstein_numeric(ctx: &FieldContext, k: i64, z: Point, bound: f64) -> Result<KernelEvalReport> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::RegionViolation(format!("Eisenstein coset sum needs even k >= 4, got {k}")));
    }
    check_point(z)?;
    let reps = coset_reps_at(ctx, bound, z);
    let sum = |b: f64| -> Complex64 {
        reps.par_iter().filter(|r| r.height_at(ctx, z) <= b).map(|r| powi_norm(r.j(ctx, z), k)).sum()
    };
    let v = sum(bound);
    let h = sum(bound / 2.0);
    Ok(KernelEvalReport { value: v, height_bound: bound, tail_estimate: (v - h).norm(), region_ok: true })
}

/// The Lipschitz constant `(2π)^{2s} / (e^{πis}·Γ(s)²·√D)`.
pub fn lipschitz_constant(ctx: &FieldContext, s: Complex64) -> Complex64 {
    let i = Complex64::i();
    (2.0 * s * (2.0 * PI).ln() - i * PI * s - 2.0 * ln_gamma(s)).exp() / ctx.sqrt_d()
}

/// Totally positive `ξ ∈ 𝔡⁻¹` with embeddings and `log N(ξ)`.
struct XiList {
    items: Vec<(f64, f64, f64, i64)>,
}

impl XiList {
    fn new(ctx: &FieldContext, trace_bound: i64) -> Self {
        let items = ctx
            .enumerate_tp_invdiff_xi(trace_bound, false)
            .into_iter()
            .map(|x| {
                let (e1, e2) = ctx.xi_embed(x);
                (e1, e2, (e1 * e2).ln(), x.q)
            })
            .collect();
        XiList { items }
    }

    /// `Σ_{Tr ξ ≤ t} N(ξ)^{s−1}·e^{2πi·Tr(ξw)}` (without the constant).
    fn sum(&self, s: Complex64, w: Point, t: i64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(e1, e2, ln_n, q) in &self.items {
            if q > t {
                break;
            }
            acc += ((s - 1.0) * ln_n + two_pi_i * (w.0 * e1 + w.1 * e2)).exp();
        }
        acc
    }
}

/// Smallest trace bound after which Lipschitz terms drop below `e^{−40}`
/// relative to the polynomial growth `Tr^{2(σ−1)}`.
fn lipschitz_trace_bound(sigma: f64, y: f64) -> i64 {
    let mut t = 1.0f64;
    while 2.0 * (sigma - 1.0).max(0.0) * t.ln() - 2.0 * PI * t * y > -40.0 {
        t += 1.0;
    }
    t as i64
}

/// `Σ_{x ∈ 𝒪} N(w + x)^{−s}` over the coordinate box of radius `l` around
/// the lattice point nearest to `−w`, damped by [`smooth_cutoff`] in both
/// coordinates.
fn lattice_sum(ctx: &FieldContext, s: Complex64, w: Point, l: i64) -> Complex64 {
    let (w1, w2) = ctx.omega_embeddings();
    let sd = ctx.sqrt_d();
    let b0 = -((w.0.re - w.1.re) / sd).round() as i64;
    let a0 = -(w.0.re + b0 as f64 * w1).round() as i64;
    let cut: Vec<f64> = (0..=l).map(|a| smooth_cutoff(a as f64 / l as f64)).collect();
    let row = |b: i64| {
        let wb = cut[(b - b0).unsigned_abs() as usize];
        let mut acc = Complex64::new(0.0, 0.0);
        if wb == 0.0 {
            return acc;
        }
        for a in (a0 - l)..=(a0 + l) {
            let wa = cut[(a - a0).unsigned_abs() as usize];
            if wa > 0.0 {
                let z1 = w.0 + (a as f64 + b as f64 * w1);
                let z2 = w.1 + (a as f64 + b as f64 * w2);
                acc += (-s * (z1.ln() + z2.ln())).exp() * wa;
            }
        }
        acc * wb
    };
    if l >= 64 {
        ((b0 - l)..=(b0 + l)).into_par_iter().map(row).sum()
    } else {
        ((b0 - l)..=(b0 + l)).map(row).sum()
    }
}

/// Moves `w` by `w ↦ ε²w` so that both imaginary parts are comparable.
fn balance(ctx: &FieldContext, w: Point) -> Point {
    let (e1, _) = ctx.embed(ctx.eps0());
    let step = 4.0 * e1.abs().ln();
    let n = (-(w.0.im / w.1.im).ln() / step).round();
    let f = (n * 2.0 * e1.abs().ln()).exp();
    (w.0 * f, w.1 / f)
}

/// Lipschitz summation check at `z`: direct lattice sum over the coordinate
/// box `|a|, |b| ≤ lattice_bound` against the exponential sum over
/// `Tr ξ ≤ xi_bound`. Returns `(lhs, rhs, |lhs − rhs|)`.
///
/// The lattice sum is damped by a smooth cutoff in both coordinates (weight
/// 1 up to `L/2`, zero from `L`). A sharp box converges only like `L^{1−σ}`
/// with jumps whenever a unit-orbit point near an embedding axis enters it.
pub fn lipschitz_check(
    ctx: &FieldContext,
    s: Complex64,
    z: Point,
    lattice_bound: i64,
    xi_bound: i64,
) -> Result<(Complex64, Complex64, f64)> {
    if s.re <= 2.0 {
        return Err(Error::RegionViolation(format!("Lipschitz summation needs Re(s) > 2, got {}", s.re)));
    }
    check_point(z)?;
    let lhs = lattice_sum(ctx, s, z, lattice_bound);
    let xs = XiList::new(ctx, xi_bound);
    let rhs = lipschitz_constant(ctx, s) * xs.sum(s, z, xi_bound);
    Ok((lhs, rhs, (lhs - rhs).norm()))
}

/// `c_{k,s,D} = D^{(k−1)/2}·2^{2−k}·π·Γ(k−1) / (e^{πis/2}·Γ(s)·Γ(k−s))`.
pub fn cohen_constant_numeric(ctx: &FieldContext, k: i64, s: Complex64) -> Complex64 {
    let kf = k as f64;
    let i = Complex64::i();
    let ln = Complex64::from(
        0.5 * (kf - 1.0) * (ctx.discriminant() as f64).ln() + (2.0 - kf) * 2f64.ln() + PI.ln(),
    ) + ln_gamma(Complex64::from(kf - 1.0))
        - i * PI * s / 2.0
        - ln_gamma(s)
        - ln_gamma(Complex64::from(kf) - s);
    ln.exp()
}

/// Cohen kernel `C_k(z; s)` by the coset sum with Lipschitz inner sums.
pub fn cohen_kernel_numeric(ctx: &FieldContext, k: i64, s: Complex64, z: Point, bound: f64) -> Result<KernelEvalReport> {
    let region_ok = s.re > 2.0 && s.re < k as f64 - 1.0;
    if !region_ok {
        return Err(Error::RegionViolation(format!("Cohen kernel needs 2 < Re(s) < k - 1 = {}, got {}", k - 1, s.re)));
    }
    check_point(z)?;
    let reps = coset_reps_at(ctx, bound, z);
    const Y_MIN: f64 = 0.12;
    const INNER_RADIUS: i64 = 32;
    let t_max = lipschitz_trace_bound(s.re, Y_MIN);
    let xs = XiList::new(ctx, t_max);
    let lip = lipschitz_constant(ctx, s);
    let terms: Vec<(f64, Complex64)> = reps
        .par_iter()
        .map(|r| {
            let w = balance(ctx, r.act(ctx, z));
            let y = w.0.im.min(w.1.im);
            let inner = if y >= Y_MIN {
                lip * xs.sum(s, w, lipschitz_trace_bound(s.re, y))
            } else {
                lattice_sum(ctx, s, w, INNER_RADIUS)
            };
            (r.height_at(ctx, z), powi_norm(r.j(ctx, z), k) * inner)
        })
        .collect();
    let c = cohen_constant_numeric(ctx, k, s);
    let norm = 1.0 / (2.0 * c * c);
    let v: Complex64 = terms.iter().map(|t| t.1).sum::<Complex64>() * norm;
    let h: Complex64 = terms.iter().filter(|t| t.0 <= bound / 2.0).map(|t| t.1).sum::<Complex64>() * norm;
    Ok(KernelEvalReport { value: v, height_bound: bound, tail_estimate: (v - h).norm(), region_ok })
}

/// Region `𝓡`: `2 < Re s < k − 2`, `Re w < min(Re s − 1, k − 1 − Re s)`.
pub fn in_double_region(k: i64, s: Complex64, w: Complex64) -> bool {
    let kf = k as f64;
    s.re > 2.0 && s.re < kf - 2.0 && w.re < (s.re - 1.0).min(kf - 1.0 - s.re)
}

/// Double Eisenstein series `E_{s,k−s}(z; w)` by the pair sum over
/// `c_{γδ⁻¹} = c_γ·d_δ − d_γ·c_δ ≫ 0`.
pub fn double_eisenstein_numeric(
    ctx: &FieldContext,
    k: i64,
    s: Complex64,
    w: Complex64,
    z: Point,
    bound: f64,
) -> Result<KernelEvalReport> {
    if !in_double_region(k, s, w) {
        return Err(Error::RegionViolation(format!(
            "(s, w) = ({s}, {w}) is outside the convergence region for k = {k}"
        )));
    }
    check_point(z)?;
    let reps = coset_reps_at(ctx, bound, z);
    let data: Vec<(OElem, OElem, Complex64, Complex64, Complex64, f64)> = reps
        .iter()
        .map(|r| {
            let j = r.j(ctx, z);
            (r.c, r.d, j.0.ln(), j.1.ln(), powi_norm(j, k), r.height_at(ctx, z))
        })
        .collect();
    let wrap = |x: Complex64| {
        let mut im = x.im;
        while im > PI {
            im -= 2.0 * PI;
        }
        while im <= -PI {
            im += 2.0 * PI;
        }
        Complex64::new(x.re, im)
    };
    let (full, half): (Complex64, Complex64) = data
        .par_iter()
        .map(|g| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut acc_half = Complex64::new(0.0, 0.0);
            for dl in &data {
                let c = ctx.mul(g.0, dl.1).sub(ctx.mul(g.1, dl.0));
                if !ctx.is_totally_positive(c) {
                    continue;
                }
                let n = ctx.norm(c) as f64;
                let l1 = wrap(g.2 - dl.2);
                let l2 = wrap(g.3 - dl.3);
                let t = ((w - 1.0) * n.ln() - s * (l1 + l2)).exp() * dl.4;
                acc += t;
                if g.5 <= bound / 2.0 && dl.5 <= bound / 2.0 {
                    acc_half += t;
                }
            }
            (acc, acc_half)
        })
        .reduce(|| (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(KernelEvalReport { value: full, height_bound: bound, tail_estimate: (full - half).norm(), region_ok: true })
}

/// `C^∞` step: 1 on `[0, 1/2]`, 0 from 1.
fn smooth_cutoff(t: f64) -> f64 {
    if t <= 0.5 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let u = 2.0 * t - 1.0;
    let (a, b) = ((-1.0 / u).exp(), (-1.0 / (1.0 - u)).exp());
    b / (a + b)
}

/// Applies `γ` (bottom row completed) to `z`; convenience for modularity checks.
pub fn act(ctx: &FieldContext, g: &CosetRep, z: Point) -> Point {
    g.act(ctx, z)
}

/// Numeric `∂_{z₁}^{l₁} ∂_{z₂}^{l₂} f` by trapezoidal Cauchy integrals on circles of radius `r`.
pub fn contour_derivative<F>(f: F, z: Point, l1: u32, l2: u32, r: f64, m: usize) -> Complex64
where
    F: Fn(Point) -> Complex64 + Sync,
{
    let fact = |n: u32| (1..=n).map(|x| x as f64).product::<f64>();
    let pts = |l: u32| -> Vec<(Complex64, Complex64)> {
        if l == 0 {
            return vec![(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))];
        }
        (0..m)
            .map(|j| {
                let e = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
                // weight l!/(m·r^l·e^{ilθ})
                (e * r, e.powi(-(l as i32)) * (fact(l) / (m as f64 * r.powi(l as i32))))
            })
            .collect()
    };
    let (p1, p2) = (pts(l1), pts(l2));
    p1.par_iter()
        .map(|(h1, w1)| p2.iter().map(|(h2, w2)| f((z.0 + h1, z.1 + h2)) * w1 * w2).sum::<Complex64>())
        .sum()
}

#[cfg(test)]
mod tests;

/// Closed form of `E_{s,k−s}(z; w)` at the grid point `(s, w) = (k₁+ν, ν+1)`,
/// `k = k₁ + k₂ + 2ν`, evaluated through the bracket `[E_{k₁}, E_{k₂}]_ν`
/// truncated at trace `n`. Returns the value and the Fourier tail bound.
pub fn double_eisenstein_via_bracket(
    ctx: &FieldContext,
    k1: i64,
    k2: i64,
    nu: i64,
    z: Point,
    n: i64,
) -> Result<(Complex64, f64)> {
    if k1 < 2 || k2 < 2 || k1 % 2 != 0 || k2 % 2 != 0 || nu < 1 {
        return Err(Error::Precondition(format!("need even k1, k2 >= 2 and nu >= 1, got ({k1}, {k2}, {nu})")));
    }
    let e1 = crate::modforms::eisenstein(ctx, k1, n)?.expansion;
    let e2 = crate::modforms::eisenstein(ctx, k2, n)?.expansion;
    let (br, m) = crate::modforms::rc_bracket(&e1, &e2, nu)?;
    let (v, tail) = br.evaluate_numeric(z, None)?;
    let g = |x: i64| gamma(Complex64::from(x as f64)).re;
    let a = (g(k1) * g(nu + 1) / g(k1 + nu)).powi(2);
    let b = (g(k2 + nu) / g(k2)).powi(2);
    // each normalized series is a quarter of its coset sum
    let f = m.to_complex() * 16.0 * a / (4.0 * b);
    Ok((v * f, tail * f.norm()))
}
