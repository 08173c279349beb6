//! Factorisation over Z (Berlekamp-Zassenhaus: factor mod p, Hensel lift, recombine).

use crate::kernel::int::{is_prime_u64, primes_up_to};
use crate::kernel::poly::IntPolynomial;
use crate::kernel::polymod::FpPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| sym_mod(c, m)).collect())
}

/// Squarefree decomposition of a primitive polynomial (Musser).
fn squarefree_parts(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    // all divisions below are of primitive polynomials by primitive divisors,
    // hence exact over Z by Gauss's lemma
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides").primitive_part();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides").primitive_part();
        if z.deg() > 0 {
            out.push((z, i));
        }
        c = c.div_exact(&y).expect("gcd divides").primitive_part();
        w = y;
        i += 1;
    }
    out
}

/// One step of linear Hensel lifting from modulus `p^j` to `p^(j+1)`.
fn hensel_pair(
    f: &IntPolynomial,
    a: &mut IntPolynomial,
    b: &mut IntPolynomial,
    s: &FpPoly,
    t: &FpPoly,
    p: u64,
    pj: &BigInt,
) {
    let bp = BigInt::from(p);
    let err = f - &(&*a * &*b);
    let e = IntPolynomial::new(err.coeffs().iter().map(|c| c / pj).collect());
    let ep = FpPoly::from_int(&e, p);
    let ap = FpPoly::from_int(a, p);
    let bpp = FpPoly::from_int(b, p);
    let (q, da) = t.mul(&ep).divrem(&ap);
    let db = s.mul(&ep).add(&q.mul(&bpp));
    let m = pj * &bp;
    *a = reduce(&(&*a + &da.to_int().scale(pj)), &m);
    *b = reduce(&(&*b + &db.to_int().scale(pj)), &m);
}

/// Lift `f = lc * prod(factors) mod p` to modulus `p^k`; factors are monic.
fn multi_lift(f: &IntPolynomial, factors: &[FpPoly], p: u64, k: u32) -> Vec<IntPolynomial> {
    if factors.len() == 1 {
        // the monic factor alone: f / lc mod p^k
        let m = BigInt::from(p).pow(k);
        let inv = f.lc().modinv(&m).expect("lc invertible");
        return vec![reduce(&f.scale(&inv), &m)];
    }
    let half = factors.len() / 2;
    let mut a_p = FpPoly::one(p);
    for g in &factors[..half] {
        a_p = a_p.mul(g);
    }
    let mut b_p = FpPoly::from_int(f, p);
    b_p = b_p.divrem(&a_p).0;
    let (_, s, t) = a_p.xgcd(&b_p);
    let mut a = a_p.to_int();
    let mut b = b_p.to_int();
    let mut pj = BigInt::from(p);
    let bp = BigInt::from(p);
    for _ in 1..k {
        hensel_pair(f, &mut a, &mut b, &s, &t, p, &pj);
        pj *= &bp;
    }
    let mut out = multi_lift(&a, &factors[..half], p, k);
    out.extend(multi_lift(&b, &factors[half..], p, k));
    out
}

fn choose_prime(f: &IntPolynomial) -> (u64, Vec<FpPoly>) {
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in primes_up_to(2000) {
        if (f.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::from_int(f, p);
        if fp.deg() != f.deg() || fp.gcd(&fp.derivative()).deg() > 0 {
            continue;
        }
        let fs: Vec<FpPoly> = fp.factor().into_iter().map(|(g, _)| g).collect();
        if best.as_ref().map_or(true, |(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 8 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("some prime keeps f squarefree")
}

/// Irreducible factors of a squarefree primitive polynomial of degree >= 1.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.primitive_part()];
    }
    let (p, modp) = choose_prime(f);
    debug_assert!(is_prime_u64(p));
    if modp.len() == 1 {
        return vec![f.primitive_part()];
    }
    // coefficient bound for factors (Mignotte): 2^n * |f|_2 * |lc|
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << n) * norm2 * f.lc().abs() * 2;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let mut lifted = multi_lift(f, &modp, p, k);
    let mut g = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut found = false;
        for subset in combinations(r, s) {
            let lc = g.lc();
            let mut h = IntPolynomial::constant(lc.clone());
            for &i in &subset {
                h = reduce(&(&h * &lifted[i]), &pk);
            }
            let h = h.primitive_part();
            if let Some(q) = g.div_exact(&h) {
                out.push(h);
                g = q.primitive_part();
                let keep: Vec<IntPolynomial> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, x)| x.clone())
                    .collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if g.deg() > 0 {
        out.push(g.primitive_part());
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Factorisation of a nonzero polynomial over Z into irreducible primitive
/// factors with multiplicities (the content is dropped).
pub fn factor_over_z(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    assert!(!f.is_zero());
    let f = f.primitive_part();
    if f.deg() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (g, e) in squarefree_parts(&f) {
        for h in factor_squarefree(&g) {
            out.push((h, e));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
    out
}

pub fn is_irreducible(f: &IntPolynomial) -> bool {
    if f.deg() == 0 {
        return false;
    }
    let fs = factor_over_z(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Number of roots of `f` modulo the prime `p` (cheap helper for fingerprints).
pub fn count_roots_mod(f: &IntPolynomial, p: u64) -> usize {
    let fp = FpPoly::from_int(f, p);
    if fp.is_zero() {
        return p.to_usize().unwrap_or(usize::MAX);
    }
    fp.roots().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntPolynomial {
        IntPolynomial::parse(s).unwrap()
    }

    #[test]
    fn factors_products() {
        let f = poly("(x^2+1)*(x^3-3x+1)*(2x-7)");
        let fs = factor_over_z(&f);
        assert_eq!(fs.len(), 3);
        let mut prod = IntPolynomial::one();
        for (g, e) in &fs {
            prod = &prod * &g.pow(*e);
        }
        assert_eq!(prod.primitive_part(), f.primitive_part());
    }

    #[test]
    fn swinnerton_dyer_style() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        assert!(is_irreducible(&poly("x^4 - 10x^2 + 1")));
        assert!(!is_irreducible(&poly("x^4 + 4")));
        assert!(is_irreducible(&poly("x^3 - x^2 - 39x - 109")));
    }

    #[test]
    fn repeated_factors() {
        let f = poly("(x-1)^3*(x^2+x+1)^2");
        let fs = factor_over_z(&f);
        assert_eq!(fs, vec![(poly("x-1"), 3), (poly("x^2+x+1"), 2)]);
    }
}
