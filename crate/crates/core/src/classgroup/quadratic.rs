//! Class groups of imaginary quadratic fields from reduced binary quadratic
//! forms and Gauss composition.

use super::{AbelianGroupSNF, Witness};
use crate::error::{IflError, Result};
use crate::kernel::int::normalize_quadratic_discriminant;
use crate::kernel::matrix::IntMatrix;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Primitive positive definite form `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl BinaryQuadraticForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Principal form of discriminant `d`.
    pub fn identity(d: i64) -> Self {
        let b = d.rem_euclid(2);
        Self { a: 1, b, c: (b * b - d) / 4 }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.a, b: -self.b, c: self.c }.reduce()
    }

    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && !(self.b < 0 && (self.b.abs() == self.a || self.a == self.c))
    }

    fn normal(self) -> Self {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        if -a < b && b <= a {
            return self;
        }
        let r = Integer::div_floor(&(a - b), &(2 * a));
        let nb = b + 2 * r * a;
        let nc = a * r * r + b * r + c;
        Self { a: self.a, b: nb as i64, c: nc as i64 }
    }

    pub fn reduce(self) -> Self {
        let mut f = self.normal();
        while f.a > f.c || (f.a == f.c && f.b < 0) {
            f = Self { a: f.c, b: -f.b, c: f.a }.normal();
        }
        f
    }

    /// Gauss composition followed by reduction.
    pub fn compose(&self, other: &Self) -> Self {
        let (mut f1, mut f2) = (*self, *other);
        if f1.a > f2.a {
            std::mem::swap(&mut f1, &mut f2);
        }
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (y1, d) = if a2 % a1 == 0 {
            (0, a1)
        } else {
            let e = a2.extended_gcd(&a1);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if s % d == 0 {
            (0, -1, d)
        } else {
            let e = s.extended_gcd(&d);
            (e.x, -e.y, e.gcd)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).mod_floor(&v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
        Self { a: a3 as i64, b: b3 as i64, c: c3 as i64 }.reduce()
    }

    pub fn pow(&self, e: i64) -> Self {
        let d = self.discriminant();
        let mut base = if e < 0 { self.inverse() } else { *self };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(d);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }
}

/// All reduced primitive forms of discriminant `d < 0`.
pub fn reduced_forms(d: i64) -> Vec<BinaryQuadraticForm> {
    let mut out = Vec::new();
    let amax = ((-d) as f64 / 3.0).sqrt() as i64 + 1;
    for a in 1..=amax {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = BinaryQuadraticForm { a, b, c };
            if f.is_reduced() && a.gcd(&b).gcd(&c) == 1 {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}

/// Class group of the imaginary quadratic field of discriminant `d`.
/// Squarefree radicands are read as `Q(sqrt d)`.
pub fn quad_class_group(d: i64) -> Result<AbelianGroupSNF> {
    let disc = normalize_quadratic_discriminant(d)
        .ok_or_else(|| IflError::InvalidInput(format!("{d} is not a fundamental discriminant")))?;
    if disc > 0 {
        return Err(IflError::InvalidInput(
            "real quadratic fields need the general class group".into(),
        ));
    }
    let forms = reduced_forms(disc);
    let id = BinaryQuadraticForm::identity(disc);
    let mut h: HashMap<BinaryQuadraticForm, Vec<i64>> = HashMap::from([(id, vec![])]);
    let mut gens: Vec<BinaryQuadraticForm> = Vec::new();
    let mut rels: Vec<Vec<i64>> = Vec::new();
    for f in &forms {
        if h.contains_key(f) {
            continue;
        }
        let t = gens.len();
        let mut g = *f;
        let mut m = 1i64;
        while !h.contains_key(&g) {
            g = g.compose(f);
            m += 1;
        }
        let mut rel: Vec<i64> = h[&g].iter().map(|x| -x).collect();
        rel.resize(t, 0);
        rel.push(m);
        rels.push(rel);
        gens.push(*f);
        let old: Vec<(BinaryQuadraticForm, Vec<i64>)> = h.drain().collect();
        let mut fj = id;
        for j in 0..m {
            for (x, e) in &old {
                let mut e2 = e.clone();
                e2.resize(t, 0);
                e2.push(j);
                h.insert(x.compose(&fj), e2);
            }
            fj = fj.compose(f);
        }
    }
    if h.len() != forms.len() {
        return Err(IflError::Integrity("composition does not close on reduced forms".into()));
    }
    if gens.is_empty() {
        return Ok(AbelianGroupSNF::trivial());
    }
    let r = gens.len();
    let rows: Vec<Vec<i64>> = rels
        .into_iter()
        .map(|mut v| {
            v.resize(r, 0);
            v
        })
        .collect();
    let labels: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let mut g = AbelianGroupSNF::from_relations(&IntMatrix::from_rows(&rows), &labels)?;
    // replace label products by the reduced form they compose to
    let p = g.presentation.clone().expect("presentation");
    g.witnesses = p
        .nontrivial()
        .map(|i| {
            let v = p.generator_vector(i);
            let w = v.iter().zip(&gens).fold(id, |acc, (e, f)| {
                acc.compose(&f.pow(e.to_i64().expect("small exponent")))
            });
            Witness::Label(w.to_string())
        })
        .collect();
    Ok(g)
}

/// `h(d)` by counting reduced forms.
pub fn class_number_by_forms(d: i64) -> usize {
    reduced_forms(d).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn inv(d: i64) -> Vec<u64> {
        quad_class_group(d).unwrap().invariants_u64()
    }

    #[test]
    fn known_groups() {
        assert!(inv(-4).is_empty());
        assert!(inv(-3).is_empty());
        assert_eq!(inv(-23), vec![3]);
        assert_eq!(inv(-211), vec![3]);
        assert_eq!(inv(-84), vec![2, 2]);
        assert_eq!(inv(-3299), vec![3, 9]);
        assert_eq!(inv(-4027), vec![3, 3]);
        // Q(sqrt -9934): 3-rank 2
        let g = quad_class_group(-9934).unwrap();
        assert_eq!(g.sylow_p(3).invariants_u64(), vec![3, 3]);
        assert!(quad_class_group(-12).is_err());
    }

    #[test]
    fn composition_is_a_group_law() {
        for d in [-23i64, -56, -71, -199, -3299, -4027] {
            let fs = reduced_forms(d);
            for x in &fs {
                assert_eq!(x.discriminant(), d);
                assert_eq!(x.compose(&BinaryQuadraticForm::identity(d)), *x);
                assert_eq!(x.compose(&x.inverse()), BinaryQuadraticForm::identity(d));
                for y in &fs {
                    let xy = x.compose(y);
                    assert!(xy.is_reduced());
                    assert_eq!(xy, y.compose(x));
                    for z in fs.iter().take(4) {
                        assert_eq!(xy.compose(z), x.compose(&y.compose(z)));
                    }
                }
            }
        }
    }

    #[test]
    fn order_matches_form_count() {
        for d in (-600i64..-3).filter(|&d| crate::kernel::int::is_fundamental_discriminant(d)) {
            let g = quad_class_group(d).unwrap();
            assert_eq!(g.order(), BigInt::from(class_number_by_forms(d)), "d = {d}");
        }
    }
}
