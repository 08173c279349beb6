//! Truncated p-adic integers and Hensel lifting.

use crate::error::{IflError, Result};
use crate::kernel::poly::IntPolynomial;
use crate::kernel::polymod::FpPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A p-adic integer known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicNumber {
    p: u64,
    precision: u32,
    residue: BigInt,
}

impl PadicNumber {
    pub fn new(p: u64, precision: u32, value: &BigInt) -> Self {
        let m = BigInt::from(p).pow(precision);
        Self {
            p,
            precision,
            residue: value.mod_floor(&m),
        }
    }

    pub fn from_i64(p: u64, precision: u32, v: i64) -> Self {
        Self::new(p, precision, &BigInt::from(v))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Representative in `[0, p^N)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.p).pow(self.precision)
    }

    /// `Some(v)` when `v < N`; `None` means "at least N" (indistinguishable from 0).
    pub fn valuation(&self) -> Option<u32> {
        if self.residue.is_zero() {
            return None;
        }
        let bp = BigInt::from(self.p);
        let mut r = self.residue.clone();
        let mut v = 0;
        while (&r % &bp).is_zero() {
            r /= &bp;
            v += 1;
        }
        Some(v)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "p-adic numbers over different primes");
    }

    /// Sum; precision is the minimum of the operands'.
    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(self.p, self.precision.min(o.precision), &(&self.residue + &o.residue))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(self.p, self.precision.min(o.precision), &(&self.residue - &o.residue))
    }

    /// Product of integers known mod `p^a` and `p^b` is known mod
    /// `p^min(a + v(o), b + v(self))`; we report the conservative `min(a, b)`
    /// raised by the valuations when they are exact.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let va = self.valuation().unwrap_or(self.precision);
        let vb = o.valuation().unwrap_or(o.precision);
        let prec = (self.precision + vb).min(o.precision + va);
        Self::new(self.p, prec, &(&self.residue * &o.residue))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.precision, &-&self.residue)
    }

    /// Inverse of a unit, at the same precision.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(IflError::InvalidInput("p-adic inverse of a non-unit".into()));
        }
        let m = self.modulus();
        let inv = self.residue.modinv(&m).expect("unit");
        Ok(Self::new(self.p, self.precision, &inv))
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, n: u32) -> Self {
        Self::new(self.p, n.min(self.precision), &self.residue)
    }

    /// Congruence modulo `p^k` (requires `k <= precision` on both sides).
    pub fn congruent_mod(&self, o: &Self, k: u32) -> bool {
        self.check(o);
        assert!(k <= self.precision && k <= o.precision);
        let m = BigInt::from(self.p).pow(k);
        ((&self.residue - &o.residue) % m).is_zero()
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.precision)
    }
}

/// Roots of `f` modulo `p^n` lifted from simple roots mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenselRoots {
    pub roots: Vec<PadicNumber>,
    /// Roots mod p that are multiple (f' vanishes there); not lifted.
    pub non_liftable: Vec<u64>,
}

/// Lift all simple roots of `f mod p` to precision `n` (Newton iteration with
/// precision doubling).
pub fn hensel_roots(f: &IntPolynomial, p: u64, n: u32) -> Result<HenselRoots> {
    if n == 0 {
        return Err(IflError::InvalidInput("precision must be positive".into()));
    }
    let fp = FpPoly::from_int(f, p);
    if fp.is_zero() {
        return Err(IflError::InvalidInput("polynomial vanishes mod p".into()));
    }
    let dfp = fp.derivative();
    let df = f.derivative();
    let mut roots = Vec::new();
    let mut non_liftable = Vec::new();
    for r0 in fp.roots() {
        if dfp.eval(r0) == 0 {
            non_liftable.push(r0);
            continue;
        }
        roots.push(PadicNumber::new(p, n, &lift_root(f, &df, p, r0, n)));
    }
    Ok(HenselRoots {
        roots,
        non_liftable,
    })
}

/// Newton lift of a simple root `r0 mod p` to `p^n`.
pub fn lift_root(f: &IntPolynomial, df: &IntPolynomial, p: u64, r0: u64, n: u32) -> BigInt {
    let mut r = BigInt::from(r0);
    let mut k = 1u32;
    while k < n {
        k = (2 * k).min(n);
        let m = BigInt::from(p).pow(k);
        let fr = f.eval(&r).mod_floor(&m);
        let dr = df.eval(&r).mod_floor(&m);
        let inv = dr.modinv(&m).expect("simple root");
        r = (&r - fr * inv).mod_floor(&m);
    }
    r
}

/// Whether `f(r) = 0 mod p^n`.
pub fn is_root_mod(f: &IntPolynomial, r: &BigInt, p: u64, n: u32) -> bool {
    let m = BigInt::from(p).pow(n);
    f.eval(r).mod_floor(&m).is_zero()
}

/// `p^k` as a big integer.
pub fn ppow(p: u64, k: u32) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    BigInt::from(p).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_mod_7_cubed() {
        let f = IntPolynomial::parse("x^2 - 2").unwrap();
        let h = hensel_roots(&f, 7, 3).unwrap();
        let rs: Vec<BigInt> = h.roots.iter().map(|r| r.residue().clone()).collect();
        assert!(rs.contains(&BigInt::from(108)));
        assert_eq!(rs.len(), 2);
        for r in &h.roots {
            assert!(is_root_mod(&f, r.residue(), 7, 3));
        }
    }

    #[test]
    fn cubic_root_mod_9() {
        let f = IntPolynomial::parse("x^3 - x^2 - 39x - 109").unwrap();
        let h = hensel_roots(&f, 3, 2).unwrap();
        assert_eq!(h.roots.len(), 1);
        assert_eq!(h.roots[0].residue(), &BigInt::from(8));
        assert_eq!(hensel_roots(&f, 3, 1).unwrap().roots[0].residue(), &BigInt::from(2));
    }

    #[test]
    fn no_roots_and_multiple_roots() {
        let f = IntPolynomial::parse("x^2 + 1").unwrap();
        assert!(hensel_roots(&f, 3, 5).unwrap().roots.is_empty());
        let g = IntPolynomial::parse("(x-1)^2*(x+1)").unwrap();
        let h = hensel_roots(&g, 5, 4).unwrap();
        assert_eq!(h.non_liftable, vec![1]);
        assert_eq!(h.roots.len(), 1);
    }

    #[test]
    fn arithmetic_tracks_precision() {
        let a = PadicNumber::from_i64(3, 5, 9);
        let b = PadicNumber::from_i64(3, 5, 7);
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(a.mul(&b).precision(), 5);
        let z = PadicNumber::from_i64(3, 4, 81);
        assert_eq!(z.valuation(), None);
        assert_eq!(b.inverse().unwrap().mul(&b).residue(), &BigInt::one());
        assert!(a.inverse().is_err());
    }
}
