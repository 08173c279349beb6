//! Integer helpers: primality, factorisation, modular arithmetic.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// All primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| if b { Some(k as u64) } else { None })
        .collect()
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 && g.gcd != -1 {
        return None;
    }
    let r = (g.x * g.gcd).rem_euclid(m as i128);
    Some(r as i64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on big integers (deterministic below 3.3e24, probabilistic above).
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let a = BigInt::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, c: u64) -> Option<BigInt> {
    let one = BigInt::one();
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 64u64;
    let limit = 1u64 << 22;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > limit {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if g > one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// Full factorisation of `|n|` as sorted `(prime, exponent)` pairs.
///
/// Trial division, then Pollard-Brent on the cofactor. Returns `None` when a
/// composite cofactor resists splitting.
pub fn factor(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return None;
    }
    for p in primes_up_to(50_000) {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    let mut stack = vec![n];
    let mut rest: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            rest.push(m);
            continue;
        }
        if let Some(r) = m.sqrt().pow(2).eq(&m).then(|| m.sqrt()) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let mut found = None;
        for c in 1..20u64 {
            if let Some(d) = pollard_brent(&m, c) {
                found = Some(d);
                break;
            }
        }
        let d = found?;
        stack.push(&m / &d);
        stack.push(d);
    }
    for p in rest {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    }
    out.sort();
    Some(out)
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor(&BigInt::from(n))
        .expect("u64 factorisation")
        .into_iter()
        .map(|(p, e)| (p.to_u64().unwrap(), e))
        .collect()
}

/// Largest `e` with `p^e | n` (`n != 0`).
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0;
    while (&m % &bp).is_zero() {
        m /= &bp;
        e += 1;
    }
    e
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factor_u64(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Whether `d` is a fundamental discriminant.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// Accepts either a fundamental discriminant or a squarefree radicand `m`
/// (meaning `Q(sqrt m)`) and returns the field discriminant.
pub fn normalize_quadratic_discriminant(d: i64) -> Option<i64> {
    if is_fundamental_discriminant(d) {
        return Some(d);
    }
    if d != 1 && is_squarefree(d) {
        let fd = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        if is_fundamental_discriminant(fd) {
            return Some(fd);
        }
    }
    None
}

/// Kronecker symbol `(d / n)` for `n > 0`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    if n == 0 {
        return (d.abs() == 1) as i32;
    }
    let mut n = n;
    let mut res = 1i32;
    while n % 2 == 0 {
        n /= 2;
        if d % 2 == 0 {
            return 0;
        }
        if matches!(d.rem_euclid(8), 3 | 5) {
            res = -res;
        }
    }
    if n == 1 {
        return res;
    }
    res * jacobi(d.rem_euclid(n as i64) as u64, n)
}

/// Jacobi symbol `(a / n)` for odd `n > 0`.
pub fn jacobi(a: u64, n: u64) -> i32 {
    let mut a = a % n;
    let mut n = n;
    let mut res = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            res = -res;
        }
        a %= n;
    }
    if n == 1 {
        res
    } else {
        0
    }
}

/// Multiplicative order of `a` modulo prime power / any modulus `m` (gcd(a,m)=1).
pub fn mult_order(a: u64, m: u64) -> u64 {
    let mut k = 1;
    let mut x = a % m;
    while x != 1 % m {
        x = mul_mod(x, a, m);
        k += 1;
    }
    k
}

/// Integer `r` with `r^k = n` exactly.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

/// `floor(a / b)` for `b != 0`.
pub fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Nearest integer to `a / b` (ties toward +inf).
pub fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let b2 = b * &two;
    (a * &two + b).div_floor(&b2)
}

pub fn to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_primality_agree() {
        let ps = primes_up_to(2000);
        for n in 0..2000u64 {
            assert_eq!(ps.binary_search(&n).is_ok(), is_prime_u64(n), "{n}");
        }
    }

    #[test]
    fn factor_composites() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64) * BigInt::from(12u64);
        let f = factor(&n).unwrap();
        assert_eq!(
            f,
            vec![
                (BigInt::from(2), 2),
                (BigInt::from(3), 1),
                (BigInt::from(1_000_003u64), 1),
                (BigInt::from(998_244_353u64), 1)
            ]
        );
        assert_eq!(factor_u64(158944), vec![(2, 5), (4967, 1)]);
    }

    #[test]
    fn discriminants() {
        assert!(is_fundamental_discriminant(-211));
        assert!(is_fundamental_discriminant(-4));
        assert!(!is_fundamental_discriminant(-274));
        assert_eq!(normalize_quadratic_discriminant(-274), Some(-1096));
        assert_eq!(normalize_quadratic_discriminant(-9934), Some(-39736));
        assert_eq!(normalize_quadratic_discriminant(-211), Some(-211));
        assert_eq!(normalize_quadratic_discriminant(-12), None);
        assert_eq!(normalize_quadratic_discriminant(2), Some(8));
    }

    #[test]
    fn kronecker_small() {
        assert_eq!(kronecker(-211, 3), -1);
        assert_eq!(kronecker(-1096, 3), -1);
        assert_eq!(kronecker(8, 5), -1);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }
}
