//! Integral ideals as HNF lattices over the integral basis.

use super::{FieldElement, NumberField};
use crate::error::{IflError, Result};
use crate::kernel::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An integral ideal: columns of `basis` (upper-triangular HNF) are the
/// coordinates of a Z-basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealHNF {
    field_tag: u64,
    basis: IntMatrix,
    norm: BigInt,
}

impl IdealHNF {
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn field_tag(&self) -> u64 {
        self.field_tag
    }

    /// Smallest positive rational integer in the ideal.
    pub fn minimum(&self) -> &BigInt {
        self.basis.get(0, 0)
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm.is_one()
    }

    /// Z-basis elements as coordinate vectors.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.basis.col_vecs()
    }
}

impl IdealHNF {
    pub(crate) fn from_parts(field_tag: u64, basis: IntMatrix) -> Self {
        let mut norm = BigInt::one();
        for i in 0..basis.rows() {
            norm *= basis.get(i, i);
        }
        Self {
            field_tag,
            basis,
            norm,
        }
    }
}

impl NumberField {
    fn ideal_from_hnf(&self, h: IntMatrix) -> IdealHNF {
        IdealHNF::from_parts(self.tag(), h)
    }

    pub fn ideal_unit(&self) -> IdealHNF {
        self.ideal_from_hnf(IntMatrix::identity(self.degree()))
    }

    /// Ideal `(c)` for a rational integer `c != 0`.
    pub fn ideal_int(&self, c: &BigInt) -> IdealHNF {
        let n = self.degree();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.abs());
        }
        self.ideal_from_hnf(m)
    }

    /// Ideal generated (as an O-module) by integral elements; `d` must be a
    /// nonzero integer known to lie in the ideal.
    pub fn ideal_from_gens_mod(&self, gens: &[Vec<BigInt>], d: &BigInt) -> IdealHNF {
        let n = self.degree();
        let mut cols = Vec::with_capacity(gens.len() * n);
        for g in gens {
            if g.iter().all(Zero::is_zero) {
                continue;
            }
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                cols.push(self.mul_coords(g, &e));
            }
        }
        if cols.is_empty() {
            return self.ideal_int(d);
        }
        let h = IntMatrix::from_cols(&cols, n).hnf_mod(d);
        self.ideal_from_hnf(h)
    }

    /// Ideal generated by integral elements (not all zero).
    pub fn ideal_from_gens(&self, gens: &[Vec<BigInt>]) -> Result<IdealHNF> {
        let mut d = BigInt::zero();
        for g in gens {
            if g.iter().any(|x| !x.is_zero()) {
                d = d.gcd(&self.norm_coords(g));
            }
        }
        if d.is_zero() {
            return Err(IflError::InvalidInput("zero ideal".into()));
        }
        Ok(self.ideal_from_gens_mod(gens, &d))
    }

    /// Principal ideal of a nonzero integral element.
    pub fn ideal_principal(&self, a: &FieldElement) -> Result<IdealHNF> {
        if !a.is_integral() {
            return Err(IflError::InvalidInput("element is not integral".into()));
        }
        self.ideal_from_gens(std::slice::from_ref(&a.num))
    }

    pub fn ideal_mul(&self, a: &IdealHNF, b: &IdealHNF) -> Result<IdealHNF> {
        self.check_same(a.field_tag)?;
        self.check_same(b.field_tag)?;
        let n = self.degree();
        let ga = a.generators();
        let gb = b.generators();
        let mut cols = Vec::with_capacity(n * n);
        for x in &ga {
            for y in &gb {
                cols.push(self.mul_coords(x, y));
            }
        }
        let d = &a.norm * &b.norm;
        let h = IntMatrix::from_cols(&cols, n).hnf_mod(&d);
        Ok(self.ideal_from_hnf(h))
    }

    pub fn ideal_add(&self, a: &IdealHNF, b: &IdealHNF) -> Result<IdealHNF> {
        self.check_same(a.field_tag)?;
        self.check_same(b.field_tag)?;
        let n = self.degree();
        let mut cols = a.generators();
        cols.extend(b.generators());
        let d = a.norm.gcd(&b.norm);
        Ok(self.ideal_from_hnf(IntMatrix::from_cols(&cols, n).hnf_mod(&d)))
    }

    pub fn ideal_pow(&self, a: &IdealHNF, e: u64) -> Result<IdealHNF> {
        let mut r = self.ideal_unit();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.ideal_mul(&r, &b)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.ideal_mul(&b, &b)?;
            }
        }
        Ok(r)
    }

    pub fn ideal_norm(&self, a: &IdealHNF) -> Result<BigInt> {
        self.check_same(a.field_tag)?;
        Ok(a.norm.clone())
    }

    pub fn ideal_equal(&self, a: &IdealHNF, b: &IdealHNF) -> Result<bool> {
        self.check_same(a.field_tag)?;
        self.check_same(b.field_tag)?;
        Ok(a.basis == b.basis)
    }

    /// Membership of an integral element.
    pub fn ideal_contains(&self, a: &IdealHNF, x: &[BigInt]) -> bool {
        a.basis.solve_upper(x).is_some()
    }

    /// `a` divides `b` (i.e. `b` is contained in `a`).
    pub fn ideal_divides(&self, a: &IdealHNF, b: &IdealHNF) -> bool {
        b.generators().iter().all(|g| self.ideal_contains(a, g))
    }

    /// Whether `x` generates the ideal: `x` in `a` and `|N(x)| = N(a)`.
    pub fn is_generator(&self, a: &IdealHNF, x: &[BigInt]) -> bool {
        self.ideal_contains(a, x) && self.norm_coords(x).abs() == a.norm
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_identity_and_norms() {
        let k = NumberField::parse("x^3 - x^2 - 39x - 109").unwrap();
        let t = k.elem_theta();
        let a = k.ideal_principal(&k.add(&t, &k.elem_from_int(2))).unwrap();
        let one = k.ideal_unit();
        assert_eq!(k.ideal_mul(&a, &one).unwrap(), a);
        let b = k.ideal_int(&BigInt::from(3));
        let ab = k.ideal_mul(&a, &b).unwrap();
        assert_eq!(ab.norm(), &(a.norm() * BigInt::from(27)));
        assert!(k.ideal_divides(&a, &ab));
        assert!(k.ideal_divides(&b, &ab));
    }

    #[test]
    fn principal_ideal_norm() {
        let k = NumberField::parse("x^2 + 211").unwrap();
        let five = k.ideal_int(&BigInt::from(5));
        assert_eq!(five.norm(), &BigInt::from(25));
        assert!(k.is_generator(&five, &k.int_coords(&BigInt::from(5))));
    }
}
