//! Complex root approximations with error radii, and exact real-root counting.

use crate::kernel::poly::IntPolynomial;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// An approximate root together with a radius `r` such that a true root lies
/// in the closed disc of radius `r` around `z`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RootApprox {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl RootApprox {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn coeffs_f64(f: &IntPolynomial) -> Vec<f64> {
    f.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Rounding bound for Horner evaluation at `z`: `2 n u sum |a_i| |z|^i`.
fn eval_error(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut s = 0.0;
    for &a in c.iter().rev() {
        s = s * r + a.abs();
    }
    4.0 * c.len() as f64 * f64::EPSILON * s
}

/// All complex roots of a squarefree polynomial via Aberth iteration, each
/// with an inclusion radius `n |f(z)| / |f'(z)|` (inflated by the evaluation
/// error bound).
pub fn complex_roots(f: &IntPolynomial) -> Vec<RootApprox> {
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    let lc = f.lc().to_f64().unwrap();
    let c: Vec<f64> = coeffs_f64(f).into_iter().map(|x| x / lc).collect();
    // Cauchy bound for the initial circle
    let bound = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(bound * 0.5 + 0.1, ang)
        })
        .collect();
    for _ in 0..500 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::zero();
            for j in 0..n {
                if j != i {
                    s += Complex64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                maxstep = maxstep.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if maxstep < 1e-15 {
            break;
        }
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z.into_iter()
        .map(|zi| {
            let (p, dp) = horner(&c, zi);
            let err = eval_error(&c, zi);
            let radius = if dp.norm() > 0.0 {
                n as f64 * (p.norm() + err) / dp.norm()
            } else {
                f64::INFINITY
            };
            RootApprox {
                re: zi.re,
                im: zi.im,
                radius: radius.max(f64::EPSILON * (1.0 + zi.norm())),
            }
        })
        .collect()
}

/// Sturm sequence count of distinct real roots (exact).
pub fn count_real_roots(f: &IntPolynomial) -> usize {
    if f.deg() == 0 {
        return 0;
    }
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let a = &seq[seq.len() - 2];
        let b = &seq[seq.len() - 1];
        if b.deg() == 0 {
            break;
        }
        // sign-correct remainder: lc(b)^k a = q b + r with |lc|^k multiplier
        let k = a.deg() - b.deg() + 1;
        let mut r = a.pseudo_rem(b);
        if b.lc().is_negative() && k % 2 == 1 {
            r = -r;
        }
        if r.is_zero() {
            break;
        }
        let c = r.content();
        let r = IntPolynomial::new(r.coeffs().iter().map(|x| -(x / &c)).collect());
        seq.push(r);
    }
    let sign_changes = |signs: Vec<i32>| -> usize {
        let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_pos: Vec<i32> = seq.iter().map(|p| sgn(&p.lc())).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| {
            let s = sgn(&p.lc());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    sign_changes(at_neg) - sign_changes(at_pos)
}

fn sgn(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Roots ordered as: real roots ascending, then one root from each complex
/// pair (positive imaginary part), by ascending real part. Returns
/// `(roots, r1)`; `r1` is certified by Sturm's theorem.
pub fn ordered_embeddings(f: &IntPolynomial) -> (Vec<RootApprox>, usize) {
    let r1 = count_real_roots(f);
    let mut roots = complex_roots(f);
    roots.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap());
    let mut real: Vec<RootApprox> = roots[..r1]
        .iter()
        .map(|r| RootApprox {
            re: r.re,
            im: 0.0,
            radius: r.radius + r.im.abs(),
        })
        .collect();
    real.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    let mut cplx: Vec<RootApprox> = roots[r1..].iter().filter(|r| r.im > 0.0).copied().collect();
    cplx.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    real.extend(cplx);
    (real, r1)
}

/// Bits after the binary point in [`FixedComplex`].
pub const FIXED_BITS: u32 = 224;

/// `(re + i im) / 2^FIXED_BITS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
}

impl FixedComplex {
    pub fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_c64(z: Complex64) -> Self {
        let f = |x: f64| BigInt::from_f64(x * 2f64.powi(60)).unwrap_or_default() << (FIXED_BITS - 60);
        Self { re: f(z.re), im: f(z.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: (&self.re * &o.re - &self.im * &o.im) >> FIXED_BITS,
            im: (&self.re * &o.im + &self.im * &o.re) >> FIXED_BITS,
        }
    }

    pub fn add_int(&self, c: &BigInt) -> Self {
        Self { re: &self.re + (c << FIXED_BITS), im: self.im.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { re: &self.re * c, im: &self.im * c }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        Self { re: &self.re / d, im: &self.im / d }
    }

    pub fn to_c64(&self) -> Complex64 {
        let s = 2f64.powi(FIXED_BITS as i32);
        let f = |x: &BigInt| {
            // keep 64 significant bits before the float conversion
            let b = x.bits();
            if b > 64 {
                let sh = b - 64;
                (x >> sh).to_f64().unwrap_or(f64::NAN) * 2f64.powi(sh as i32) / s
            } else {
                x.to_f64().unwrap_or(f64::NAN) / s
            }
        };
        Complex64::new(f(&self.re), f(&self.im))
    }
}

/// Newton refinement of an approximate simple root to [`FIXED_BITS`] bits.
pub fn refine_root(f: &IntPolynomial, z0: Complex64) -> FixedComplex {
    let c = f.coeffs();
    let mut z = FixedComplex::from_c64(z0);
    if z0.im == 0.0 {
        z.im = BigInt::zero();
    }
    for _ in 0..12 {
        let mut p = FixedComplex::zero();
        let mut dp = FixedComplex::zero();
        for a in c.iter().rev() {
            dp = dp.mul(&z).add(&p);
            p = p.mul(&z).add_int(a);
        }
        let den = &dp.re * &dp.re + &dp.im * &dp.im;
        if den.is_zero() {
            break;
        }
        let dr = ((&p.re * &dp.re + &p.im * &dp.im) << FIXED_BITS) / &den;
        let di = ((&p.im * &dp.re - &p.re * &dp.im) << FIXED_BITS) / &den;
        let small = dr.bits() < 8 && di.bits() < 8;
        z.re -= dr;
        z.im -= di;
        if small {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_counts() {
        let p = |s: &str| IntPolynomial::parse(s).unwrap();
        assert_eq!(count_real_roots(&p("x^3 - 3x + 1")), 3);
        assert_eq!(count_real_roots(&p("x^3 - 2")), 1);
        assert_eq!(count_real_roots(&p("x^2 + 1")), 0);
        assert_eq!(count_real_roots(&p("x^3 - x^2 - 39x - 109")), 1);
        assert_eq!(count_real_roots(&p("x^4 - 10x^2 + 1")), 4);
    }

    #[test]
    fn roots_are_accurate() {
        let f = IntPolynomial::parse("x^3 - 2").unwrap();
        let (r, r1) = ordered_embeddings(&f);
        assert_eq!(r1, 1);
        assert_eq!(r.len(), 2);
        assert!((r[0].re - 2f64.cbrt()).abs() < 1e-12);
        assert!(r[0].radius < 1e-10);
    }

    #[test]
    fn fixed_point_roots() {
        let f = IntPolynomial::parse("x^2 - 2").unwrap();
        let (roots, _) = ordered_embeddings(&f);
        let r = refine_root(&f, roots[1].z());
        // r^2 - 2 vanishes to nearly full precision
        let sq = r.mul(&r).add_int(&BigInt::from(-2));
        assert!(sq.re.abs().bits() < 10 && sq.im.is_zero());
        let g = IntPolynomial::parse("x^3 + 34*x - 8").unwrap();
        let (roots, r1) = ordered_embeddings(&g);
        assert_eq!(r1, 1);
        let z = refine_root(&g, roots[1].z());
        assert!((z.to_c64() - roots[1].z()).norm() < 1e-12);
        assert!(z.im > BigInt::zero());
    }
}
