//! Dense univariate polynomials over Z.

use crate::error::{IflError, Result};
use crate::kernel::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial with integer coefficients, stored low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `-1`.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut r = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            r = r * x + c;
        }
        r
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut r = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            r = r * x + BigRational::from_integer(c.clone());
        }
        r
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut r = 0.0;
        for c in self.coeffs.iter().rev() {
            r = r * x + c.to_f64().unwrap_or(f64::NAN);
        }
        r
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `f(x + c)`.
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut r = Self::zero();
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        for a in self.coeffs.iter().rev() {
            r = &(&r * &lin) + &Self::constant(a.clone());
        }
        r
    }

    /// `f(a x + b)`.
    pub fn compose_linear(&self, a: &BigInt, b: &BigInt) -> Self {
        let mut r = Self::zero();
        let lin = Self::new(vec![b.clone(), a.clone()]);
        for c in self.coeffs.iter().rev() {
            r = &(&r * &lin) + &Self::constant(c.clone());
        }
        r
    }

    /// `f(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut r = Self::zero();
        for c in self.coeffs.iter().rev() {
            r = &(&r * g) + &Self::constant(c.clone());
        }
        r
    }

    /// Division by a monic polynomial.
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * dc;
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem_monic(&self, d: &Self) -> Self {
        self.divrem_monic(d).1
    }

    /// Exact division; `None` when `d` does not divide `self` over Z.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if self.is_zero() {
            return Some(Self::zero());
        }
        if r.len() <= dd {
            return None;
        }
        let lc = d.lc();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let (c, rem) = r[i].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * dc;
            }
            q[i - dd] = c;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder `lc(d)^(deg f - deg d + 1) f mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        let dd = d.deg();
        let lc = d.lc();
        while !r.is_zero() && r.deg() >= dd {
            let shift = r.deg() - dd;
            let c = r.lc();
            let mut t = vec![BigInt::zero(); shift];
            t.extend(d.coeffs.iter().map(|x| x * &c));
            r = &r.scale(&lc) - &Self::new(t);
        }
        r
    }

    /// Gcd over Q, returned primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (m, n) = (self.deg(), other.deg());
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let sz = m + n;
        let mut s = IntMatrix::zeros(sz, sz);
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                s.set(i, i + j, c.clone());
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                s.set(n + i, i + j, c.clone());
            }
        }
        s.det()
    }

    pub fn discriminant(&self) -> BigInt {
        let n = self.deg();
        let r = self.resultant(&self.derivative());
        let sign = if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        sign * r / self.lc()
    }

    /// Rational roots (distinct).
    pub fn rational_roots(&self) -> Vec<BigRational> {
        use crate::kernel::int::factor;
        if self.is_zero() {
            return Vec::new();
        }
        let mut f = self.primitive_part();
        let mut roots = Vec::new();
        if f.coeff(0).is_zero() {
            roots.push(BigRational::zero());
            let k = f.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            f = Self::new(f.coeffs[k..].to_vec());
        }
        if f.deg() == 0 {
            return roots;
        }
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let fac = factor(n).unwrap_or_default();
            let mut ds = vec![BigInt::one()];
            for (p, e) in fac {
                let mut next = Vec::new();
                for d in &ds {
                    let mut pk = BigInt::one();
                    for _ in 0..=e {
                        next.push(d * &pk);
                        pk *= &p;
                    }
                }
                ds = next;
            }
            ds
        };
        let a0 = f.coeff(0);
        let an = f.lc();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for s in [p.clone(), -p.clone()] {
                    let r = BigRational::new(s, q.clone());
                    if f.eval_rational(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots
    }

    /// Max absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Parse an expression in `x` using `+ - * ^ ( )` and integer literals.
    pub fn parse(s: &str) -> Result<Self> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { t: &toks, i: 0 };
        let r = p.expr()?;
        if p.i != toks.len() {
            return Err(IflError::InvalidInput(format!(
                "unexpected '{}' at position {} in polynomial",
                toks[p.i], p.i
            )));
        }
        Ok(r)
    }

    /// Parse either an expression or a bracketed coefficient list
    /// `[c0, c1, ...]` (low degree first).
    pub fn parse_any(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let v: Vec<i64> = serde_json::from_str(t)
                .map_err(|e| IflError::InvalidInput(format!("coefficient list: {e}")))?;
            return Ok(Self::from_i64(&v));
        }
        Self::parse(t)
    }
}

struct Parser<'a> {
    t: &'a [char],
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.t.get(self.i).copied()
    }

    fn err(&self, what: &str) -> IflError {
        IflError::InvalidInput(format!("polynomial parse error at {}: {what}", self.i))
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.i += 1;
                -self.term()?
            }
            Some('+') => {
                self.i += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.i += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.i += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == 'x' || c == 'X' || c == '(' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<IntPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            let e = self.number()?;
            let e = e
                .to_u32()
                .filter(|&e| e <= 256)
                .ok_or_else(|| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected number"));
        }
        let s: String = self.t[start..self.i].iter().collect();
        s.parse().map_err(|_| self.err("bad number"))
    }

    fn atom(&mut self) -> Result<IntPolynomial> {
        match self.peek() {
            Some('x') | Some('X') => {
                self.i += 1;
                Ok(IntPolynomial::x())
            }
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some('-') => {
                self.i += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPolynomial::constant(self.number()?)),
            Some(c) => Err(self.err(&format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end")),
        }
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::zero();
        }
        let mut r = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        IntPolynomial::new(r)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Lagrange interpolation through integer points; the result must be integral.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<IntPolynomial> {
    let n = xs.len();
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut num: Vec<BigRational> = vec![BigRational::one()];
        let mut den = BigInt::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); num.len() + 1];
            for (k, c) in num.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xs[j].clone());
            }
            num = next;
            den *= &xs[i] - &xs[j];
        }
        let f = BigRational::new(ys[i].clone(), den);
        for (k, c) in num.iter().enumerate() {
            acc[k] += c * &f;
        }
    }
    if acc.iter().all(|c| c.is_integer()) {
        Some(IntPolynomial::new(acc.into_iter().map(|c| c.to_integer()).collect()))
    } else {
        None
    }
}

/// `Res_y(f(y), g(x - t*y))`: its roots are `b + t*a` for roots `a` of `f`
/// and `b` of `g`.
pub fn sum_resultant(f: &IntPolynomial, g: &IntPolynomial, t: i64) -> Option<IntPolynomial> {
    let m = f.deg();
    let n = g.deg();
    let total = m * n;
    let xs: Vec<BigInt> = (0..=total as i64).map(BigInt::from).collect();
    let bt = BigInt::from(t);
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x| {
            // h(y) = g(x - t y)
            let h = g.compose_linear(&-&bt, x);
            f.resultant(&h)
        })
        .collect();
    let r = interpolate(&xs, &ys)?;
    // normalise sign to positive leading coefficient
    Some(if r.lc().is_negative() { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let f = IntPolynomial::parse("x^3 - x^2 - 39*x - 109").unwrap();
        assert_eq!(f, IntPolynomial::from_i64(&[-109, -39, -1, 1]));
        assert_eq!(f.to_string(), "x^3 - x^2 - 39*x - 109");
        let g = IntPolynomial::parse("(x+1)^2 - 2x").unwrap();
        assert_eq!(g, IntPolynomial::from_i64(&[1, 0, 1]));
        assert!(IntPolynomial::parse("x^").is_err());
        assert!(IntPolynomial::parse("y+1").is_err());
        assert_eq!(
            IntPolynomial::parse_any("[1, 0, 1]").unwrap(),
            IntPolynomial::from_i64(&[1, 0, 1])
        );
    }

    #[test]
    fn discriminants() {
        let f = IntPolynomial::parse("x^3 - x^2 - 39x - 109").unwrap();
        assert_eq!(f.discriminant(), BigInt::from(-158944));
        let b1 = IntPolynomial::parse("x^3 - 3x + 1").unwrap();
        assert_eq!(b1.discriminant(), BigInt::from(81));
        let q = IntPolynomial::parse("x^2 + x + 53").unwrap();
        assert_eq!(q.discriminant(), BigInt::from(-211));
    }

    #[test]
    fn gcd_and_division() {
        let a = IntPolynomial::parse("(x-1)*(x+2)^2").unwrap();
        let b = IntPolynomial::parse("(x+2)*(x+5)").unwrap();
        assert_eq!(a.gcd(&b), IntPolynomial::parse("x+2").unwrap());
        let q = a.div_exact(&IntPolynomial::parse("x+2").unwrap()).unwrap();
        assert_eq!(q, IntPolynomial::parse("(x-1)*(x+2)").unwrap());
        assert!(a.div_exact(&IntPolynomial::parse("2x+1").unwrap()).is_none());
        assert!(!a.is_squarefree());
    }

    #[test]
    fn roots_and_resultant() {
        let f = IntPolynomial::parse("2x^2 - 3x + 1").unwrap();
        let r = f.rational_roots();
        assert_eq!(r.len(), 2);
        let g = IntPolynomial::parse("x^2 - 2").unwrap();
        let h = IntPolynomial::parse("x^2 - 3").unwrap();
        // sqrt2 + sqrt3 has minimal polynomial x^4 - 10x^2 + 1
        let s = sum_resultant(&g, &h, 1).unwrap();
        assert_eq!(s, IntPolynomial::parse("x^4 - 10x^2 + 1").unwrap());
    }
}
