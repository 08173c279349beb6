//! Polynomials over prime fields `F_p` and their factorisation.

use crate::kernel::int::{mul_mod, pow_mod};
use crate::kernel::poly::IntPolynomial;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Polynomial over `F_p`, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    pub fn from_int(f: &IntPolynomial, p: u64) -> Self {
        let bp = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|x| {
                let r = ((x % &bp) + &bp) % &bp;
                r.to_u64().unwrap()
            })
            .collect();
        Self::new(p, c)
    }

    pub fn zero(p: u64) -> Self {
        Self { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    /// Lift coefficients to integers in `[0, p)`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let i = self.inv(self.lc());
        Self::new(self.p, self.c.iter().map(|&x| mul_mod(x, i, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    ((a as u128 + b as u128) % p as u128) as u64
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0);
                    let b = o.c.get(i).copied().unwrap_or(0);
                    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut r = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + a as u128 * b as u128) % p as u128;
            }
        }
        Self::new(p, r.into_iter().map(|x| x as u64).collect())
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| mul_mod(x, k, self.p)).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let il = self.inv(d.lc());
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i] == 0 {
                continue;
            }
            let c = mul_mod(r[i], il, p);
            q[i - dd] = c;
            for (j, &dc) in d.c.iter().enumerate() {
                let s = mul_mod(c, dc, p);
                r[i - dd + j] = (r[i - dd + j] + p - s) % p;
            }
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s a + t b = g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let i = self.inv(r0.lc());
        (r0.scale(i), s0.scale(i), t0.scale(i))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut r = 0;
        for &c in self.c.iter().rev() {
            r = (mul_mod(r, x, self.p) + c) % self.p;
        }
        r
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut r = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mul(&r).rem(m);
            if e.bit(i) {
                r = r.mul(&base).rem(m);
            }
        }
        r
    }

    pub fn compose_mod(&self, g: &Self, m: &Self) -> Self {
        let mut r = Self::zero(self.p);
        for &c in self.c.iter().rev() {
            r = r.mul(g).add(&Self::new(self.p, vec![c])).rem(m);
        }
        r
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }

    /// Roots in `F_p` (distinct).
    pub fn roots(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .factor()
            .into_iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| (self.p - g.c[0]) % self.p)
            .collect();
        out.sort_unstable();
        out
    }

    /// Monic irreducible factors with multiplicities, sorted.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero());
        let mut out = Vec::new();
        for (g, e) in self.monic().squarefree() {
            for (h, d) in g.ddf() {
                // h is a product of irreducibles of degree d
                for irr in h.edf(d) {
                    out.push((irr, e));
                }
            }
        }
        out.sort_by(|a, b| (a.0.deg(), &a.0.c, a.1).cmp(&(b.0.deg(), &b.0.c, b.1)));
        out
    }

    /// Squarefree decomposition of a monic polynomial.
    fn squarefree(&self) -> Vec<(FpPoly, u32)> {
        let p = self.p;
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            // f = g(x^p)
            let g = self.pth_root();
            for (h, e) in g.squarefree() {
                out.push((h, e * p as u32));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.divrem(&c).0;
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let fac = w.divrem(&y).0;
            if fac.deg() > 0 {
                out.push((fac.monic(), i));
            }
            w = y;
            c = c.divrem(&w).0;
            i += 1;
        }
        if c.deg() > 0 {
            let g = c.pth_root();
            for (h, e) in g.monic().squarefree() {
                out.push((h, e * p as u32));
            }
        }
        out
    }

    fn pth_root(&self) -> Self {
        // over F_p the coefficients are their own p-th roots
        let p = self.p as usize;
        Self::new(
            self.p,
            self.c.iter().step_by(p).copied().collect(),
        )
    }

    /// Distinct-degree factorisation of a monic squarefree polynomial.
    fn ddf(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = Self::x(p);
        let mut h = x.clone();
        let bp = BigUint::from(p);
        let mut d = 0;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.powmod(&bp, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.push((g.clone(), d));
                f = f.divrem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.deg() > 0 {
            let dd = f.deg();
            out.push((f.monic(), dd));
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus); deterministic seed.
    fn edf(&self, d: usize) -> Vec<FpPoly> {
        let p = self.p;
        let n = self.deg();
        if n == d {
            return vec![self.monic()];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (p.wrapping_mul(31)) ^ n as u64);
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(self);
                let mut s = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    s = s.add(&t);
                }
                s
            } else {
                let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
                a.powmod(&e, self).sub(&Self::one(p))
            };
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < n {
                let h = self.divrem(&g).0;
                let mut r = g.edf(d);
                r.extend(h.monic().edf(d));
                return r;
            }
        }
    }
}

/// Degrees of the irreducible factors of `f mod p` (with multiplicity), sorted.
pub fn factor_pattern(f: &IntPolynomial, p: u64) -> Vec<(usize, u32)> {
    let mut v: Vec<(usize, u32)> = FpPoly::from_int(f, p)
        .factor()
        .into_iter()
        .map(|(g, e)| (g.deg(), e))
        .collect();
    v.sort_unstable();
    v
}

/// Helper so callers can check for zero coefficients cheaply.
pub fn is_zero_mod(n: &BigInt, p: u64) -> bool {
    (n % BigInt::from(p)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        let mut r = FpPoly::one(p);
        for (g, e) in fs {
            for _ in 0..*e {
                r = r.mul(g);
            }
        }
        r
    }

    #[test]
    fn factors_multiply_back() {
        for p in [2u64, 3, 5, 7, 101] {
            let f = fp(p, &[1, 4, 0, 3, 1, 0, 2, 1]).monic();
            let fs = f.factor();
            assert_eq!(product(&fs, p), f, "p={p}");
            for (g, _) in &fs {
                assert!(g.is_irreducible_by_brute(), "p={p} g={g:?}");
            }
        }
    }

    #[test]
    fn repeated_and_pth_power() {
        // (x+1)^2 (x^2+1) over F_3
        let f = fp(3, &[1, 1]).mul(&fp(3, &[1, 1])).mul(&fp(3, &[1, 0, 1]));
        let fs = f.factor();
        assert_eq!(fs, vec![(fp(3, &[1, 1]), 2), (fp(3, &[1, 0, 1]), 1)]);
        // x^3 + 1 = (x+1)^3 over F_3
        let g = fp(3, &[1, 0, 0, 1]);
        assert_eq!(g.factor(), vec![(fp(3, &[1, 1]), 3)]);
    }

    #[test]
    fn cubic_patterns() {
        let b1 = IntPolynomial::parse("x^3 - 3x + 1").unwrap();
        // 3 ramifies totally in the cyclic cubic field of conductor 9
        assert_eq!(factor_pattern(&b1, 3), vec![(1, 3)]);
        // p = +-1 mod 9 splits, other primes are inert
        assert_eq!(factor_pattern(&b1, 2), vec![(3, 1)]);
        assert_eq!(factor_pattern(&b1, 5), vec![(3, 1)]);
        assert_eq!(factor_pattern(&b1, 17), vec![(1, 1), (1, 1), (1, 1)]);
        assert_eq!(factor_pattern(&b1, 19), vec![(1, 1), (1, 1), (1, 1)]);
    }

    impl FpPoly {
        fn is_irreducible_by_brute(&self) -> bool {
            let n = self.deg();
            if n <= 1 {
                return true;
            }
            // trial division by every monic polynomial of degree <= n/2 (small p only)
            if self.p > 7 && n > 2 {
                return self.roots().is_empty() || n == 1;
            }
            for d in 1..=n / 2 {
                let count = self.p.pow(d as u32);
                for k in 0..count {
                    let mut c = Vec::with_capacity(d + 1);
                    let mut t = k;
                    for _ in 0..d {
                        c.push(t % self.p);
                        t /= self.p;
                    }
                    c.push(1);
                    let g = FpPoly::new(self.p, c);
                    if self.rem(&g).is_zero() {
                        return false;
                    }
                }
            }
            true
        }
    }
}
