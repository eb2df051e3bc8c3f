use super::lattice::hnf2;
use super::{is_prime_u64, isqrt_u128, FieldContext, OElem, QuadRat};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Integral ideal with Z-basis `{a, b + c·ω}` in Hermite normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealHNF {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl IdealHNF {
    pub const UNIT: IdealHNF = IdealHNF { a: 1, b: 0, c: 1 };

    pub fn norm(&self) -> u64 {
        (self.a * self.c) as u64
    }

    pub fn basis(&self) -> [OElem; 2] {
        [OElem::new(self.a, 0), OElem::new(self.b, self.c)]
    }

    pub fn contains(&self, x: OElem) -> bool {
        if x.b % self.c != 0 {
            return false;
        }
        let k = x.b / self.c;
        (x.a - k * self.b) % self.a == 0
    }

    pub fn is_unit(&self) -> bool {
        *self == IdealHNF::UNIT
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

/// Prime ideal above the rational prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub p: u64,
    pub kind: PrimeKind,
    /// Residue of `ω` modulo the prime, for split and ramified primes.
    pub root: Option<i64>,
    pub ideal: IdealHNF,
    pub norm: u64,
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Square root of `n` modulo an odd prime `p` (Tonelli–Shanks), if it exists.
fn sqrt_mod(n: u128, p: u128) -> Option<u128> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u128;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pow_mod(c, 1u128 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

impl FieldContext {
    fn hnf_from(&self, gens: &[OElem]) -> IdealHNF {
        let mut vecs = Vec::with_capacity(gens.len() * 2);
        for &g in gens {
            vecs.push((g.a as i128, g.b as i128));
            let gw = self.mul(g, OElem::OMEGA);
            vecs.push((gw.a as i128, gw.b as i128));
        }
        let (a, b, c) = hnf2(&vecs).expect("ideal generators span a full-rank lattice");
        IdealHNF { a: a as i64, b: b as i64, c: c as i64 }
    }

    /// Principal ideal `(x)` of an integral element.
    pub fn ideal_from_oelem(&self, x: OElem) -> Result<IdealHNF> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.hnf_from(&[x]))
    }

    /// Principal ideal of an element of `𝒪` given with rational coordinates.
    pub fn ideal_from_element(&self, x: &QuadRat) -> Result<IdealHNF> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let o = x
            .to_oelem()
            .ok_or_else(|| Error::Precondition("element is not integral".into()))?;
        self.ideal_from_oelem(o)
    }

    pub fn ideal_mul(&self, i: &IdealHNF, j: &IdealHNF) -> IdealHNF {
        let mut gens = Vec::with_capacity(4);
        for x in i.basis() {
            for y in j.basis() {
                gens.push(self.mul(x, y));
            }
        }
        self.hnf_from(&gens)
    }

    pub fn ideal_pow(&self, i: &IdealHNF, e: u32) -> IdealHNF {
        let mut acc = IdealHNF::UNIT;
        for _ in 0..e {
            acc = self.ideal_mul(&acc, i);
        }
        acc
    }

    pub fn ideal_norm(&self, i: &IdealHNF) -> u64 {
        i.norm()
    }

    /// `I ⊆ J`.
    pub fn ideal_divides(&self, j: &IdealHNF, i: &IdealHNF) -> bool {
        i.basis().iter().all(|&x| j.contains(x))
    }

    /// Kronecker symbol `(D/p)` for a prime `p`.
    pub fn kronecker(&self, p: u64) -> i32 {
        let d = self.discriminant();
        if p == 2 {
            return match d.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            };
        }
        let r = d.rem_euclid(p as i64) as u128;
        if r == 0 {
            return 0;
        }
        if pow_mod(r, (p as u128 - 1) / 2, p as u128) == 1 { 1 } else { -1 }
    }

    /// Roots of `x² − D·x + n0` modulo `p`.
    fn omega_roots_mod(&self, p: u64) -> Vec<i64> {
        let d = self.discriminant().rem_euclid(p as i64) as u128;
        let n0 = self.omega_norm().rem_euclid(p as i64) as u128;
        let pp = p as u128;
        if p == 2 {
            return (0..2u128)
                .filter(|&r| (r * r + n0 + pp * pp - d * r % pp) % pp == 0)
                .map(|r| r as i64)
                .collect();
        }
        let inv2 = (pp + 1) / 2;
        let Some(s) = sqrt_mod(self.discriminant().rem_euclid(p as i64) as u128, pp) else {
            return Vec::new();
        };
        let r1 = (d + s) % pp * inv2 % pp;
        let r2 = (d + pp - s) % pp * inv2 % pp;
        if r1 == r2 { vec![r1 as i64] } else { vec![r1 as i64, r2 as i64] }
    }

    /// Prime ideals above the rational prime `p`, split pairs ordered by residue of `ω`.
    pub fn primes_above(&self, p: u64) -> Vec<PrimeIdeal> {
        let kind = match self.kronecker(p) {
            1 => PrimeKind::Split,
            -1 => PrimeKind::Inert,
            _ => PrimeKind::Ramified,
        };
        match kind {
            PrimeKind::Inert => vec![PrimeIdeal {
                p,
                kind,
                root: None,
                ideal: IdealHNF { a: p as i64, b: 0, c: p as i64 },
                norm: p * p,
            }],
            _ => {
                let mut roots = self.omega_roots_mod(p);
                roots.sort_unstable();
                roots
                    .into_iter()
                    .map(|r| {
                        let ideal = self.hnf_from(&[OElem::new(p as i64, 0), OElem::new(-r, 1)]);
                        PrimeIdeal { p, kind, root: Some(r), ideal, norm: p }
                    })
                    .collect()
            }
        }
    }

    /// Factorization of a positive integer by trial division up to the factor bound.
    pub fn factor_integer(&self, n: u128) -> Result<Vec<(u64, u32)>> {
        let mut out = Vec::new();
        let mut m = n;
        let mut p: u128 = 2;
        let bound = self.factor_bound() as u128;
        while p * p <= m && p <= bound {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                out.push((p as u64, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            if p * p <= m {
                return Err(Error::FactorizationTooLarge(n));
            }
            out.push((m as u64, 1));
        }
        Ok(out)
    }

    /// Prime factorization of a nonzero integral ideal.
    pub fn factor_ideal(&self, i: &IdealHNF) -> Result<Vec<(PrimeIdeal, u32)>> {
        let mut out = Vec::new();
        for (p, _) in self.factor_integer(i.norm() as u128)? {
            for prime in self.primes_above(p) {
                let mut e = 0u32;
                let mut pe = prime.ideal;
                while self.ideal_divides(&pe, i) {
                    e += 1;
                    pe = self.ideal_mul(&pe, &prime.ideal);
                }
                if e > 0 {
                    out.push((prime, e));
                }
            }
        }
        Ok(out)
    }

    /// All integral ideals dividing `m`.
    pub fn ideal_divisors(&self, m: &IdealHNF) -> Result<Vec<IdealHNF>> {
        let mut divs = vec![IdealHNF::UNIT];
        for (prime, e) in self.factor_ideal(m)? {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for d in &divs {
                let mut cur = *d;
                next.push(cur);
                for _ in 0..e {
                    cur = self.ideal_mul(&cur, &prime.ideal);
                    next.push(cur);
                }
            }
            divs = next;
        }
        divs.sort_by_key(|d| (d.norm(), *d));
        Ok(divs)
    }

    /// `Σ_{𝔟 | m} N(𝔟)^r`.
    pub fn sigma_ideal(&self, m: &IdealHNF, r: u32) -> Result<BigInt> {
        let mut acc = BigInt::one();
        for (prime, e) in self.factor_ideal(m)? {
            let q = BigInt::from(prime.norm).pow(r);
            let mut s = BigInt::zero();
            let mut term = BigInt::one();
            for _ in 0..=e {
                s += &term;
                term *= &q;
            }
            acc *= s;
        }
        Ok(acc)
    }

    /// Totally positive, unit-reduced generator of an integral ideal.
    pub fn principal_generator_tp(&self, m: &IdealHNF) -> Result<OElem> {
        let target = m.norm() as i128;
        let [mut u, mut v] = m.basis();
        // Lagrange reduction for the positive form Tr(x·y) = x₁y₁ + x₂y₂
        let form = |x: OElem, y: OElem| self.trace(self.mul(x, y)) as i128;
        loop {
            if form(v, v) < form(u, u) {
                std::mem::swap(&mut u, &mut v);
            }
            let uu = form(u, u);
            let uv = form(u, v);
            let m_ = ((2 * uv + uu).div_euclid(2 * uu)) as i64;
            if m_ == 0 {
                break;
            }
            v = v.sub(u.scale(m_));
        }
        for radius in [2i64, 4, 8, 16, 32, 64] {
            let mut best: Option<OElem> = None;
            for i in -radius..=radius {
                for j in -radius..=radius {
                    let g = u.scale(i).add(v.scale(j));
                    if g.is_zero() || self.norm(g).abs() != target {
                        continue;
                    }
                    if best.map_or(true, |b| form(g, g) < form(b, b)) {
                        best = Some(g);
                    }
                }
            }
            if let Some(mut g) = best {
                if self.norm(g) < 0 {
                    g = self.mul(g, self.eps0());
                }
                if self.embedding_signs(g).0 < 0 {
                    g = self.neg(g);
                }
                let g = self.unit_reduce_oelem(g);
                if self.ideal_from_oelem(g)? == *m {
                    return Ok(g);
                }
            }
        }
        Err(Error::GeneratorSearchExhausted)
    }

    /// Prime ideals of norm at most `bound`, with totally positive generators,
    /// sorted by norm.
    pub fn primes_below(&self, bound: u64) -> Result<Vec<(PrimeIdeal, OElem)>> {
        let mut out = Vec::new();
        for p in 2..=bound {
            if !is_prime_u64(p) {
                continue;
            }
            for prime in self.primes_above(p) {
                if prime.norm <= bound {
                    let g = self.principal_generator_tp(&prime.ideal)?;
                    out.push((prime, g));
                }
            }
        }
        out.sort_by_key(|(pr, _)| (pr.norm, pr.ideal));
        Ok(out)
    }
}

#[allow(dead_code)]
pub(crate) fn is_square(n: u128) -> bool {
    let r = isqrt_u128(n);
    r * r == n
}
