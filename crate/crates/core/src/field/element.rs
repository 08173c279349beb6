//! Field elements as rational vectors over the integral basis.

use super::NumberField;
use crate::error::{IflError, Result};
use crate::kernel::poly::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `num / den` in integral-basis coordinates; `den > 0` and coprime to the
/// content of `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl FieldElement {
    pub fn new(num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(!den.is_zero());
        let mut g = den.clone();
        for x in &num {
            g = g.gcd(x);
        }
        if den.is_negative() {
            g = -g;
        }
        Self {
            num: num.iter().map(|x| x / &g).collect(),
            den: den / g,
        }
    }

    pub fn integral(num: Vec<BigInt>) -> Self {
        Self {
            num,
            den: BigInt::one(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

impl NumberField {
    pub fn elem_from_int(&self, c: i64) -> FieldElement {
        FieldElement::integral(self.int_coords(&BigInt::from(c)))
    }

    pub fn elem_theta(&self) -> FieldElement {
        FieldElement::integral(self.theta())
    }

    /// Element given by a polynomial in the generator.
    pub fn elem_from_poly(&self, g: &IntPolynomial) -> FieldElement {
        FieldElement::integral(self.eval_poly(g))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        FieldElement::new(num, &a.den * &b.den)
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            num: a.num.iter().map(|x| -x).collect(),
            den: a.den.clone(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement::new(self.mul_coords(&a.num, &b.num), &a.den * &b.den)
    }

    pub fn scale(&self, a: &FieldElement, k: &BigRational) -> FieldElement {
        FieldElement::new(
            a.num.iter().map(|x| x * k.numer()).collect(),
            &a.den * k.denom(),
        )
    }

    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        if e < 0 {
            let inv = self.inv(a)?;
            return self.pow(&inv, -e);
        }
        let mut r = self.elem_from_int(1);
        let mut b = a.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Ok(r)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(IflError::InvalidInput("inverse of zero".into()));
        }
        // a * x = 1: sum_i x_i (num w_i) = den
        let m = self.mult_matrix(&a.num).transpose();
        let rhs: Vec<BigRational> = self
            .int_coords(&a.den)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let x = m
            .solve_rational(&rhs)
            .ok_or_else(|| IflError::Computation("singular multiplication matrix".into()))?;
        let mut den = BigInt::one();
        for q in &x {
            den = den.lcm(q.denom());
        }
        let num = x
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Ok(FieldElement::new(num, den))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn norm(&self, a: &FieldElement) -> BigRational {
        let n = self.norm_coords(&a.num);
        BigRational::new(n, a.den.pow(self.degree() as u32))
    }

    pub fn trace(&self, a: &FieldElement) -> BigRational {
        BigRational::new(self.trace_coords(&a.num), a.den.clone())
    }

    pub fn charpoly(&self, a: &FieldElement) -> Result<IntPolynomial> {
        if !a.is_integral() {
            return Err(IflError::Unsupported("charpoly of a non-integral element".into()));
        }
        Ok(self.charpoly_coords(&a.num))
    }

    /// Embeddings at the `r1 + r2` places.
    pub fn embed(&self, a: &FieldElement) -> Vec<num_complex::Complex64> {
        use num_traits::ToPrimitive;
        let emb = self.basis_embeddings_fixed();
        let d = a.den.to_f64().unwrap();
        self.embed_coords_fixed(&a.num, &emb)
            .into_iter()
            .map(|z| z / d)
            .collect()
    }

    pub fn is_unit(&self, a: &FieldElement) -> bool {
        a.is_integral() && self.norm_coords(&a.num).abs().is_one()
    }

    /// Render as a polynomial in `x` over a common denominator.
    pub fn format_element(&self, a: &FieldElement) -> String {
        let (c, d) = self.to_power_basis(&a.num);
        let p = IntPolynomial::new(c);
        let den = d * &a.den;
        let g = p.content().gcd(&den);
        let p = if g.is_zero() || g.is_one() {
            p
        } else {
            IntPolynomial::new(p.coeffs().iter().map(|x| x / &g).collect())
        };
        let den = if g.is_zero() { den } else { den / g };
        if den.is_one() {
            p.to_string()
        } else {
            format!("({p})/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_norm() {
        let k = NumberField::parse("x^3 - x^2 - 39x - 109").unwrap();
        let t = k.elem_theta();
        let a = k.add(&t, &k.elem_from_int(3));
        let ai = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &ai), k.elem_from_int(1));
        let n = k.norm(&a);
        assert_eq!(k.norm(&ai), n.recip());
        assert_eq!(k.pow(&a, -2).unwrap(), k.mul(&ai, &ai));
    }

    #[test]
    fn half_integral_basis() {
        let k = NumberField::parse("x^2 + 211").unwrap();
        // (1 + x)/2 is integral
        let half = k.scale(
            &k.add(&k.elem_from_int(1), &k.elem_theta()),
            &BigRational::new(1.into(), 2.into()),
        );
        assert!(half.is_integral());
        assert_eq!(k.norm(&half), BigRational::from_integer(53.into()));
        assert_eq!(k.format_element(&half), "(x + 1)/2");
    }
}
