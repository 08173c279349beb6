//! Iwasawa lambda-invariants of imaginary quadratic fields from truncated
//! Stickelberger series.
//!
//! For the odd quadratic character `chi` of conductor `f = f0 p^k` and level
//! `n`, the element
//!
//!   theta_n = (1/M) sum_{a mod M, (a, M) = 1} a chi(a) [<a>],   M = f0 p^(n+1),
//!
//! lives in `Z_p[Gamma / Gamma^(p^n)]`; sending the generator `1 + p` of the
//! principal units to `1 + T` gives a polynomial modulo `(1+T)^(p^n) - 1`.
//! Its first unit coefficient is the lambda-invariant once the reading is
//! stable under refinement.

use crate::error::{IflError, Result};
use crate::kernel::int::{kronecker, normalize_quadratic_discriminant, pow_mod};
use crate::kernel::padic::PadicNumber;
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Which character the series is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Twist {
    /// `chi` itself.
    A,
    /// `chi` times the quadratic character of `Q(sqrt -3)`.
    B,
}

impl std::str::FromStr for Twist {
    type Err = IflError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "auto" => Ok(Twist::A),
            "b" => Ok(Twist::B),
            _ => Err(IflError::InvalidInput(format!("unknown twist {s}"))),
        }
    }
}

/// Twist used when none is requested; checked by [`validate_twists`].
pub const DEFAULT_TWIST: Twist = Twist::A;

pub const START: (u32, u32) = (2, 8);
pub const MAX_LEVEL: u32 = 6;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IwasawaSeries {
    pub p: u64,
    pub disc: i64,
    pub twist: Twist,
    pub level: u32,
    pub precision: u32,
    /// Coefficients of `T^0, T^1, ...` modulo `p^precision`.
    pub coefficients: Vec<PadicNumber>,
}

impl IwasawaSeries {
    /// Index of the first unit coefficient.
    pub fn lambda_reading(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| c.is_unit())
    }

    /// Valuations of the first `k` coefficients (`None`: at least the precision).
    pub fn valuations(&self, k: usize) -> Vec<Option<u32>> {
        self.coefficients.iter().take(k).map(|c| c.valuation()).collect()
    }
}

fn check_input(d: i64, p: u64) -> Result<i64> {
    if p != 3 {
        return Err(IflError::Unsupported("lambda is implemented for p = 3".into()));
    }
    let d = normalize_quadratic_discriminant(d)
        .ok_or_else(|| IflError::InvalidInput(format!("{d} is not a fundamental discriminant")))?;
    if d >= 0 {
        return Err(IflError::InvalidInput("the field must be imaginary quadratic".into()));
    }
    if kronecker(d, p) == 1 {
        return Err(IflError::InvalidInput(format!("{p} splits in Q(sqrt {d})")));
    }
    Ok(d)
}

pub fn stickelberger_series(d: i64, p: u64, n: u32, prec: u32, twist: Twist) -> Result<IwasawaSeries> {
    let d = check_input(d, p)?;
    if n == 0 || prec == 0 {
        return Err(IflError::InvalidInput("level and precision must be positive".into()));
    }
    let f = d.unsigned_abs();
    let mut f0 = f;
    while f0 % p == 0 {
        f0 /= p;
    }
    let pn = p.pow(n);
    let q = p * pn; // p^(n+1)
    let big_m = f0 * q;
    // the sum is divided by M; f0 is a unit, so work modulo p^(prec + n + 1)
    let modulus = p.pow(prec + n + 1) as i128;

    let chi: Vec<i8> = (0..f).map(|a| kronecker(d, a) as i8).collect();
    let minus3: [i8; 3] = [0, 1, -1];
    // discrete log of <a> to base 1 + p
    let mut index = vec![usize::MAX; q as usize];
    let mut g = 1u64;
    for i in 0..pn as usize {
        index[g as usize] = i;
        g = g * (1 + p) % q;
    }
    let mut c = vec![0i128; pn as usize];
    for a in 1..big_m {
        if a % p == 0 {
            continue;
        }
        let mut x = chi[(a % f) as usize] as i128;
        if twist == Twist::B {
            x *= minus3[(a % 3) as usize] as i128;
        }
        if x == 0 {
            continue;
        }
        let r = a % q;
        let w = pow_mod(r, pn, q); // Teichmueller representative
        let winv = inv_mod_u64(w, q);
        let bracket = r * winv % q;
        let i = index[bracket as usize];
        c[i] = (c[i] + a as i128 * x).rem_euclid(modulus);
    }
    // (1+T)^i in the T basis
    let mut t = vec![0i128; pn as usize];
    let mut row = vec![0i128; pn as usize];
    row[0] = 1;
    for (i, ci) in c.iter().enumerate() {
        if i > 0 {
            for j in (1..=i).rev() {
                row[j] = (row[j] + row[j - 1]) % modulus;
            }
        }
        if *ci != 0 {
            for j in 0..=i {
                t[j] = (t[j] + ci * row[j]) % modulus;
            }
        }
    }
    let qn = q as i128;
    let small = modulus / qn;
    let f0inv = inv_mod_u64(f0 % small as u64, small as u64) as i128;
    let mut coefficients = Vec::with_capacity(t.len());
    for tj in t {
        if tj % qn != 0 {
            return Err(IflError::Integrity("Stickelberger series is not integral".into()));
        }
        let v = (tj / qn) * f0inv % small;
        coefficients.push(PadicNumber::new(p, prec, &BigInt::from(v)));
    }
    Ok(IwasawaSeries { p, disc: d, twist, level: n, precision: prec, coefficients })
}

fn inv_mod_u64(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    e.x.rem_euclid(m as i128) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaResult {
    pub disc: i64,
    pub p: u64,
    pub lambda: u32,
    pub twist: Twist,
    /// `(n, N)` of the two agreeing readings.
    pub steps: Vec<(u32, u32)>,
    pub valuations: Vec<Option<u32>>,
}

/// Lambda-invariant with the default escalation schedule.
pub fn lambda_invariant(d: i64, p: u64) -> Result<LambdaResult> {
    lambda_with(d, p, DEFAULT_TWIST, START)
}

/// Escalates `(n, N) -> (n + 1, N + 2)` from `start` until two consecutive
/// readings agree.
pub fn lambda_with(d: i64, p: u64, twist: Twist, start: (u32, u32)) -> Result<LambdaResult> {
    let (mut n, mut prec) = start;
    let mut prev: Option<(usize, (u32, u32))> = None;
    while n <= MAX_LEVEL {
        let s = stickelberger_series(d, p, n, prec, twist)?;
        let reading = s.lambda_reading();
        if let (Some(r), Some((r0, step0))) = (reading, prev) {
            if r == r0 {
                return Ok(LambdaResult {
                    disc: s.disc,
                    p,
                    lambda: r as u32,
                    twist,
                    steps: vec![step0, (n, prec)],
                    valuations: s.valuations(r + 4),
                });
            }
        }
        prev = reading.map(|r| (r, (n, prec)));
        n += 1;
        prec += 2;
    }
    Err(IflError::Computation(format!(
        "mu-obstruction or precision failure: no stable unit coefficient up to level {MAX_LEVEL}"
    )))
}

/// Runs both twists on the reference pair `-211 -> 2`, `-274 -> 4` and
/// returns the single twist that reproduces both.
pub fn validate_twists() -> Result<Twist> {
    let pairs = [(-211i64, 2u32), (-274, 4)];
    let mut ok = Vec::new();
    for tw in [Twist::A, Twist::B] {
        let pass = pairs.iter().all(|&(d, l)| {
            lambda_with(d, 3, tw, START).map(|r| r.lambda == l).unwrap_or(false)
        });
        if pass {
            ok.push(tw);
        }
    }
    match ok.as_slice() {
        [t] => Ok(*t),
        [] => Err(IflError::Integrity("no twist reproduces the reference lambda values".into())),
        _ => Err(IflError::Integrity("both twists reproduce the reference values".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::quad_class_group;
    use crate::kernel::int::is_fundamental_discriminant;

    #[test]
    fn reference_values() {
        assert_eq!(lambda_invariant(-211, 3).unwrap().lambda, 2);
        assert_eq!(lambda_invariant(-274, 3).unwrap().lambda, 4);
        let s = stickelberger_series(-211, 3, 3, 10, Twist::A).unwrap();
        assert_eq!(s.lambda_reading(), Some(2));
        let s2 = stickelberger_series(-211, 3, 4, 12, Twist::A).unwrap();
        assert_eq!(s2.lambda_reading(), Some(2));
    }

    #[test]
    fn pinned_twist() {
        assert_eq!(validate_twists().unwrap(), DEFAULT_TWIST);
    }

    #[test]
    fn refinement_is_compatible() {
        // level n+1 reduces to level n modulo ((1+T)^(3^n) - 1, 3^N)
        let a = stickelberger_series(-211, 3, 2, 6, Twist::A).unwrap();
        let b = stickelberger_series(-211, 3, 3, 6, Twist::A).unwrap();
        let m = BigInt::from(3).pow(6);
        let reduced = reduce_level(&b, 9, &m);
        for (x, y) in a.coefficients.iter().zip(&reduced) {
            assert_eq!(x.residue(), y);
        }
    }

    fn reduce_level(s: &IwasawaSeries, deg: usize, m: &BigInt) -> Vec<BigInt> {
        // (1+T)^deg - 1 = T^deg + ...; divide out
        let mut c: Vec<BigInt> = s.coefficients.iter().map(|x| x.residue().clone()).collect();
        let mut w = vec![BigInt::from(0); deg + 1];
        for (j, wj) in w.iter_mut().enumerate() {
            *wj = binom(deg, j);
        }
        w[0] -= 1;
        for top in (deg..c.len()).rev() {
            let lead = c[top].clone();
            for j in 0..=deg {
                c[top - deg + j] = (&c[top - deg + j] - &lead * &w[j]).mod_floor(m);
            }
        }
        c.truncate(deg);
        c
    }

    fn binom(n: usize, k: usize) -> BigInt {
        let mut r = BigInt::from(1);
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn errors() {
        assert!(lambda_invariant(-23, 3).is_err()); // 3 splits
        assert!(lambda_invariant(-211, 5).is_err());
        assert!(lambda_invariant(5, 3).is_err());
    }

    #[test]
    fn positive_when_three_divides_h() {
        let mut seen = 0;
        for d in (-800i64..-3).filter(|&d| is_fundamental_discriminant(d)) {
            if kronecker(d, 3) == 1 || d % 3 == 0 {
                continue;
            }
            if !(quad_class_group(d).unwrap().order() % 3u32 == BigInt::from(0)) {
                continue;
            }
            assert!(lambda_invariant(d, 3).unwrap().lambda >= 1, "d = {d}");
            seen += 1;
        }
        assert!(seen > 5);
    }
}
