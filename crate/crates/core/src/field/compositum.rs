//! Compositum of two linearly disjoint fields.

use super::{FieldElement, NumberField};
use crate::error::{IflError, Result};
use crate::kernel::matrix::IntMatrix;
use crate::kernel::poly::{sum_resultant, IntPolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `K = Q(gamma)` with `gamma = beta + t alpha`, `alpha` a root of the first
/// field's polynomial and `beta` of the second.
#[derive(Clone, Debug)]
pub struct Compositum {
    pub field: NumberField,
    pub t: i64,
    /// Image of the first generator.
    pub alpha: FieldElement,
    /// Image of the second generator.
    pub beta: FieldElement,
}

/// Elements of `Q[x,y]/(f(x), g(y))` as integer arrays indexed `i * m + j`
/// for `x^i y^j`.
struct Tensor<'a> {
    f: &'a IntPolynomial,
    g: &'a IntPolynomial,
    n: usize,
    m: usize,
}

impl Tensor<'_> {
    fn mul_x(&self, v: &[BigInt]) -> Vec<BigInt> {
        let (n, m) = (self.n, self.m);
        let mut out = vec![BigInt::zero(); n * m];
        for j in 0..m {
            // top coefficient wraps around via x^n = -sum f_k x^k
            let top = v[(n - 1) * m + j].clone();
            for i in (1..n).rev() {
                out[i * m + j] = v[(i - 1) * m + j].clone();
            }
            if !top.is_zero() {
                for k in 0..n {
                    out[k * m + j] -= &top * &self.f.coeff(k);
                }
            }
        }
        out
    }

    fn mul_y(&self, v: &[BigInt]) -> Vec<BigInt> {
        let (n, m) = (self.n, self.m);
        let mut out = vec![BigInt::zero(); n * m];
        for i in 0..n {
            let top = v[i * m + m - 1].clone();
            for j in (1..m).rev() {
                out[i * m + j] = v[i * m + j - 1].clone();
            }
            if !top.is_zero() {
                for k in 0..m {
                    out[i * m + k] -= &top * &self.g.coeff(k);
                }
            }
        }
        out
    }

    fn mul_gamma(&self, v: &[BigInt], t: i64) -> Vec<BigInt> {
        let y = self.mul_y(v);
        let x = self.mul_x(v);
        y.into_iter().zip(x).map(|(a, b)| a + b * t).collect()
    }
}

fn t_sequence() -> impl Iterator<Item = i64> {
    (1..).flat_map(|k| [k, -k])
}

impl Compositum {
    /// Build the compositum of `a` and `b`. Fails if the degrees do not
    /// multiply (fields not linearly disjoint).
    pub fn new(a: &NumberField, b: &NumberField) -> Result<Self> {
        let (f, g) = (a.poly(), b.poly());
        let (n, m) = (f.deg(), g.deg());
        let big_n = n * m;
        let (t, h) = t_sequence()
            .take(40)
            .find_map(|t| {
                let h = sum_resultant(f, g, t)?;
                h.is_squarefree().then_some((t, h))
            })
            .ok_or_else(|| IflError::Computation("no primitive element found".into()))?;
        let facs = crate::kernel::zfactor::factor_over_z(&h);
        if facs.len() != 1 {
            return Err(IflError::InvalidInput(
                "fields are not linearly disjoint".into(),
            ));
        }
        let ten = Tensor { f, g, n, m };
        // power matrix of gamma
        let mut cols = Vec::with_capacity(big_n);
        let mut cur = vec![BigInt::zero(); big_n];
        cur[0] = BigInt::one();
        for _ in 0..big_n {
            cols.push(cur.clone());
            cur = ten.mul_gamma(&cur, t);
        }
        let pmat = IntMatrix::from_cols(&cols, big_n);
        let (adj, det) = pmat.inverse_scaled();
        let to_gamma = |v: &[BigInt]| -> Vec<BigInt> { adj.mul_vec(v) };

        let coprime = a.discriminant().gcd(b.discriminant()).is_one();
        let field = if coprime {
            // O_a (x) O_b is maximal when the discriminants are coprime
            let (ba, da) = a.basis_matrix();
            let (bb, db) = b.basis_matrix();
            let mut gens = Vec::with_capacity(big_n);
            for i in 0..n {
                for j in 0..m {
                    let mut v = vec![BigInt::zero(); big_n];
                    for r in 0..n {
                        for s in 0..m {
                            v[r * m + s] = ba.get(r, i) * bb.get(s, j);
                        }
                    }
                    gens.push(to_gamma(&v));
                }
            }
            let den = da * db * &det;
            let gm = IntMatrix::from_cols(&gens, big_n);
            NumberField::from_integral_basis(&h, &gm, &num_traits::Signed::abs(&den))?
        } else {
            NumberField::from_polynomial(&h)?
        };
        let elem = |v: Vec<BigInt>| -> Result<FieldElement> {
            let (num, den) = normalise(v, det.clone());
            let coords = field
                .from_power_basis(&num, &BigInt::one())
                .ok_or_else(|| IflError::Computation("generator image not integral".into()))?;
            Ok(FieldElement::new(coords, den))
        };
        let mut ex = vec![BigInt::zero(); big_n];
        if n > 1 {
            ex[m] = BigInt::one();
        }
        let mut ey = vec![BigInt::zero(); big_n];
        if m > 1 {
            ey[1] = BigInt::one();
        }
        let alpha = elem(to_gamma(&ex))?;
        let beta = elem(to_gamma(&ey))?;
        Ok(Self {
            field,
            t,
            alpha,
            beta,
        })
    }

    fn map(&self, gen: &FieldElement, src: &NumberField, x: &FieldElement) -> FieldElement {
        let (c, d) = src.to_power_basis(&x.num);
        let k = &self.field;
        // Horner in the image of the generator
        let mut acc = k.elem_from_int(0);
        for ci in c.iter().rev() {
            acc = k.mul(&acc, gen);
            let mut e = k.elem_from_int(0);
            e.num[0] = ci.clone();
            acc = k.add(&acc, &e);
        }
        FieldElement::new(acc.num.clone(), &acc.den * d * &x.den)
    }

    /// Image of an element of the first field.
    pub fn map_first(&self, src: &NumberField, x: &FieldElement) -> FieldElement {
        self.map(&self.alpha, src, x)
    }

    /// Image of an element of the second field.
    pub fn map_second(&self, src: &NumberField, x: &FieldElement) -> FieldElement {
        self.map(&self.beta, src, x)
    }
}

fn normalise(mut v: Vec<BigInt>, mut d: BigInt) -> (Vec<BigInt>, BigInt) {
    if num_traits::Signed::is_negative(&d) {
        d = -d;
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    (v, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_sqrt3() {
        let a = NumberField::parse("x^2 - 2").unwrap();
        let b = NumberField::parse("x^2 - 3").unwrap();
        let c = Compositum::new(&a, &b).unwrap();
        let k = &c.field;
        assert_eq!(k.degree(), 4);
        let two = k.elem_from_int(2);
        assert_eq!(k.mul(&c.alpha, &c.alpha), two);
        assert_eq!(k.mul(&c.beta, &c.beta), k.elem_from_int(3));
        // disc Q(sqrt2, sqrt3) = 2304
        assert_eq!(k.discriminant(), &BigInt::from(2304));
    }

    #[test]
    fn cubic_times_cyclic_cubic() {
        let a = NumberField::parse("x^3 - x^2 - 39x - 109").unwrap();
        let b = NumberField::parse("x^3 - 3x + 1").unwrap();
        let c = Compositum::new(&a, &b).unwrap();
        let k = &c.field;
        assert_eq!(k.degree(), 9);
        // coprime discriminants: d = d_a^3 d_b^3
        let expect = BigInt::from(-39736).pow(3) * BigInt::from(81).pow(3);
        assert_eq!(k.discriminant(), &expect);
        // generator images satisfy their polynomials
        let fa = a.poly();
        let mut acc = k.elem_from_int(0);
        for ci in fa.coeffs().iter().rev() {
            acc = k.mul(&acc, &c.alpha);
            let mut e = k.elem_from_int(0);
            e.num[0] = ci.clone();
            acc = k.add(&acc, &e);
        }
        assert!(acc.is_zero());
        let th = a.elem_theta();
        assert_eq!(c.map_first(&a, &th), c.alpha);
    }
}
