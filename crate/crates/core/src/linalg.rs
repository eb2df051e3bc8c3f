//! Exact linear algebra and univariate polynomials over `Q`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type QMat = Vec<Vec<BigRational>>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<BigRational>]) -> (QMat, Vec<usize>) {
    let mut m: QMat = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    rref(rows).1.len()
}

/// Coordinates `x` with `Σ x_j·vecs[j] = target`, if any.
pub fn solve_in_span(vecs: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = vecs.len();
    let len = target.len();
    // rows = coordinates, columns = unknowns + rhs
    let rows: QMat = (0..len)
        .map(|i| {
            let mut r: Vec<BigRational> = vecs.iter().map(|v| v[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn mat_add_scaled(a: &QMat, b: &QMat, s: &BigRational) -> QMat {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * s).collect()).collect()
}

pub fn mat_vec(a: &QMat, v: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|r| r.iter().zip(v).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)).collect()
}

pub fn transpose(a: &QMat) -> QMat {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Characteristic polynomial `det(x·I − A)` (Faddeev–LeVerrier).
pub fn charpoly(a: &QMat) -> Poly {
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = q(1);
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -tr / q(k as i64);
    }
    Poly::new(coeffs)
}

/// Dense polynomial over `Q`, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<BigRational>);

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree (`-1` for zero).
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Poly {
        let l = self.lead();
        Poly::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut qv = vec![BigRational::zero(); r.len() - dd];
        let l = d.lead();
        for i in (0..qv.len()).rev() {
            let c = &r[i + dd] / &l;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            qv[i] = c;
        }
        (Poly::new(qv), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() { a } else { a.monic() }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_c(&self, x: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + to_f64(c))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Number of distinct real roots (Sturm's theorem).
    pub fn real_root_count(&self) -> usize {
        if self.degree() <= 0 {
            return 0;
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&q(-1)));
        }
        let changes = |signs: Vec<i32>| {
            let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let sign = |p: &Poly, neg: bool| -> i32 {
            let l = if p.lead().is_positive() { 1 } else { -1 };
            if neg && p.degree() % 2 == 1 { -l } else { l }
        };
        let at_minus = changes(seq.iter().map(|p| sign(p, true)).collect());
        let at_plus = changes(seq.iter().map(|p| sign(p, false)).collect());
        at_minus - at_plus
    }

    /// True when every complex root is real.
    pub fn all_roots_real(&self) -> bool {
        let sf = self.divrem(&self.gcd(&self.derivative())).0;
        sf.real_root_count() as isize == sf.degree()
    }

    /// Complex roots (Durand–Kerner with Newton polishing).
    pub fn roots(&self) -> Vec<Complex64> {
        let p = self.monic();
        let n = p.degree().max(0) as usize;
        if n == 0 {
            return Vec::new();
        }
        let bound = 1.0 + p.0[..n].iter().map(|c| to_f64(c).abs()).fold(0.0, f64::max);
        let mut z: Vec<Complex64> =
            (0..n).map(|k| Complex64::from_polar(bound * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
        for _ in 0..2000 {
            let mut delta: f64 = 0.0;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                let step = p.eval_c(z[i]) / den;
                z[i] -= step;
                delta = delta.max(step.norm() / (1.0 + z[i].norm()));
            }
            if delta < 1e-15 {
                break;
            }
        }
        let dp = p.derivative();
        for r in z.iter_mut() {
            for _ in 0..5 {
                let d = dp.eval_c(*r);
                if d.norm() == 0.0 {
                    break;
                }
                *r -= p.eval_c(*r) / d;
            }
        }
        z
    }

    /// Irreducible factorization over `Q` of a monic squarefree integral
    /// polynomial whose irreducible factors have degree at most `max_deg`.
    pub fn factor(&self, max_deg: usize) -> Result<Vec<Poly>> {
        let mut rest = self.monic();
        if !rest.is_integral() {
            return Err(Error::FactorizationFailed("polynomial is not integral".into()));
        }
        let mut roots = rest.roots();
        let mut out = Vec::new();
        'outer: while rest.degree() > 0 {
            let n = roots.len();
            for size in 1..=max_deg.min(n) {
                for subset in combinations(n, size) {
                    let cand = poly_from_roots(&subset.iter().map(|&i| roots[i]).collect::<Vec<_>>());
                    let Some(cand) = cand else { continue };
                    let (quo, r) = rest.divrem(&cand);
                    if r.is_zero() {
                        out.push(cand);
                        rest = quo;
                        let mut keep = Vec::with_capacity(n - size);
                        for (i, z) in roots.iter().enumerate() {
                            if !subset.contains(&i) {
                                keep.push(*z);
                            }
                        }
                        roots = keep;
                        continue 'outer;
                    }
                }
            }
            return Err(Error::FactorizationFailed(format!(
                "no factor of degree <= {max_deg} found for remaining degree {}",
                rest.degree()
            )));
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| cmp_poly(a, b)));
        Ok(out)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(crate::rat_to_string).collect()
    }
}

fn cmp_poly(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    for i in (0..a.0.len().max(b.0.len())).rev() {
        let o = a.coeff(i).cmp(&b.coeff(i));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Integer polynomial `Π (x − r)` if its coefficients round cleanly.
fn poly_from_roots(rs: &[Complex64]) -> Option<Poly> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in rs {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, x) in c.iter().enumerate() {
            next[i + 1] += x;
            next[i] -= x * r;
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for x in c {
        let scale = 1.0 + x.re.abs();
        if x.im.abs() > 1e-6 * scale {
            return None;
        }
        let rounded = x.re.round();
        if (x.re - rounded).abs() > 0.25 {
            return None;
        }
        out.push(BigRational::from_integer(BigInt::from(rounded as i128)));
    }
    Some(Poly::new(out))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => crate::scalars::rat_to_f64(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_solve() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&rows), 2);
        let v = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert_eq!(solve_in_span(&v, &[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(solve_in_span(&v, &[q(2), q(3), q(4)]), None);
    }

    #[test]
    fn charpoly_2x2() {
        let a = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(charpoly(&a), Poly::from_ints(&[-2, -5, 1]));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(Poly::from_ints(&[-2, 0, 1]).real_root_count(), 2);
        assert_eq!(Poly::from_ints(&[1, 0, 1]).real_root_count(), 0);
        assert!(Poly::from_ints(&[0, -1, 0, 1]).all_roots_real());
        assert!(!Poly::from_ints(&[-1, 0, 0, 1]).all_roots_real());
    }

    #[test]
    fn factor_small() {
        // (x − 3)(x² − 5)(x² + x − 1)
        let p = Poly::from_ints(&[-3, 1]).mul(&Poly::from_ints(&[-5, 0, 1])).mul(&Poly::from_ints(&[-1, 1, 1]));
        let f = p.factor(4).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], Poly::from_ints(&[-3, 1]));
        let back = f.iter().fold(Poly::from_ints(&[1]), |a, b| a.mul(b));
        assert_eq!(back, p);
    }
}
