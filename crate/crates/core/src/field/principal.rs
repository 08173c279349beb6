//! Short elements of ideals and principality testing.

use super::{FieldElement, IdealHNF, NumberField};
use crate::error::{IflError, Result};
use crate::kernel::enumerate::fincke_pohst;
use crate::kernel::lll::lll_f64;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Outcome of a principality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Principality {
    /// A generator, verified by membership and norm.
    Generator(FieldElement),
    /// Certified non-principal.
    NotPrincipal,
    /// Search inconclusive.
    Unknown,
}

impl Principality {
    pub fn is_principal(&self) -> Option<bool> {
        match self {
            Principality::Generator(_) => Some(true),
            Principality::NotPrincipal => Some(false),
            Principality::Unknown => None,
        }
    }
}

/// An ideal lattice with an LLL-reduced basis for a weighted Minkowski form
/// `Q(x) = sum_places c_i |sigma_i(x)|^2`.
pub struct IdealLattice {
    /// Reduced basis, exact integral coordinates.
    pub basis: Vec<Vec<BigInt>>,
    pub gram: Vec<Vec<f64>>,
}

/// Real coordinates of embeddings scaled by `sqrt(c_i)`; a complex place
/// contributes its real and imaginary parts.
fn real_vector(z: &[Complex64], weights: &[f64], r1: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(2 * z.len());
    for (i, (zi, w)) in z.iter().zip(weights).enumerate() {
        let s = w.sqrt();
        v.push(zi.re * s);
        if i >= r1 {
            v.push(zi.im * s);
        }
    }
    v
}

impl NumberField {
    /// Weighted Minkowski form on `a`, LLL-reduced.
    pub fn ideal_lattice(&self, a: &IdealHNF, weights: &[f64]) -> Result<IdealLattice> {
        self.reduce_lattice(a.generators(), weights)
    }

    /// LLL-reduces the lattice spanned by `gens` (integral coordinates) under
    /// the weighted form. A basis reduced for nearby weights is a cheap start.
    pub fn reduce_lattice(&self, gens: Vec<Vec<BigInt>>, weights: &[f64]) -> Result<IdealLattice> {
        let emb = self.basis_embeddings_fixed();
        let r1 = self.signature().0;
        let vecs: Vec<Vec<f64>> = gens
            .iter()
            .map(|g| real_vector(&self.embed_coords_fixed(g, &emb), weights, r1))
            .collect();
        let u = lll_f64(&vecs)?;
        let n = self.degree();
        let basis: Vec<Vec<BigInt>> = u
            .iter()
            .map(|row| {
                let mut c = vec![BigInt::zero(); n];
                for (k, g) in row.iter().zip(&gens) {
                    if *k != 0 {
                        for (x, y) in c.iter_mut().zip(g) {
                            *x += y * *k;
                        }
                    }
                }
                c
            })
            .collect();
        let rv: Vec<Vec<f64>> = basis
            .iter()
            .map(|g| real_vector(&self.embed_coords_fixed(g, &emb), weights, r1))
            .collect();
        let gram = rv
            .iter()
            .map(|x| {
                rv.iter()
                    .map(|y| x.iter().zip(y).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        Ok(IdealLattice { basis, gram })
    }

    /// Elements of `a` with weighted form at most `bound` (one per sign pair);
    /// `None` if more than `limit`.
    pub fn short_elements(
        &self,
        lat: &IdealLattice,
        bound: f64,
        limit: usize,
    ) -> Option<Vec<Vec<BigInt>>> {
        let xs = fincke_pohst(&lat.gram, bound, limit)?;
        Some(xs.iter().map(|x| combine(&lat.basis, x)).collect())
    }

    fn place_degrees(&self) -> Vec<f64> {
        let (r1, r2) = self.signature();
        let mut d = vec![1.0; r1];
        d.extend(std::iter::repeat_n(2.0, r2));
        d
    }

    /// Principality test. Rigorous (both answers certified) for unit rank 0,
    /// and for unit rank 1 when a unit of infinite order is supplied; otherwise
    /// a seeded weight sweep that can only prove principality.
    pub fn is_principal(&self, a: &IdealHNF, unit: Option<&FieldElement>) -> Result<Principality> {
        self.check_same(a.field_tag())?;
        if a.is_unit_ideal() {
            return Ok(Principality::Generator(self.elem_from_int(1)));
        }
        let n = self.degree();
        let norm = a.norm().to_f64().unwrap_or(f64::INFINITY);
        let scale = norm.powf(2.0 / n as f64);
        let places = self.place_degrees().len();
        match (self.unit_rank(), unit) {
            (0, _) => {
                let w = vec![1.0 / scale; places];
                self.exhaustive(a, &w, 1.0)
            }
            (1, Some(u)) => {
                // log|alpha| - log N / n lies on the line through the log
                // vector L of u; cover one period of it by slices
                let l: Vec<f64> = self.embed(u).iter().map(|z| z.norm().ln()).collect();
                let lmax = l.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                if !(lmax > 1e-9) {
                    return Err(IflError::InvalidInput("unit has finite order".into()));
                }
                let slices = (lmax * 1.05).ceil() as usize;
                let width = 1.0 / slices as f64;
                let bound: f64 = l.iter().map(|x| (width * x.abs()).exp()).sum();
                for j in 0..slices {
                    let t = -0.5 + (j as f64 + 0.5) * width;
                    let w: Vec<f64> = l.iter().map(|x| (-2.0 * t * x).exp() / scale).collect();
                    if let Principality::Generator(g) = self.exhaustive(a, &w, bound)? {
                        return Ok(Principality::Generator(g));
                    }
                }
                debug_assert_eq!(places, l.len());
                Ok(Principality::NotPrincipal)
            }
            _ => self.sweep(a, 24),
        }
    }

    /// All elements with `Q <= bound` are examined; some generator must lie
    /// there, so the answer is certified either way.
    fn exhaustive(&self, a: &IdealHNF, w: &[f64], bound: f64) -> Result<Principality> {
        let lat = self.ideal_lattice(a, w)?;
        let cands = self
            .short_elements(&lat, bound * (1.0 + 1e-6), 5_000_000)
            .ok_or_else(|| IflError::Budget("principality enumeration too large".into()))?;
        for c in cands {
            if self.norm_coords(&c).abs() == *a.norm() {
                return Ok(Principality::Generator(FieldElement::integral(c)));
            }
        }
        Ok(Principality::NotPrincipal)
    }

    /// Heuristic search over random place weights (product of weights fixed).
    fn sweep(&self, a: &IdealHNF, rounds: usize) -> Result<Principality> {
        let n = self.degree();
        let d = self.place_degrees();
        let norm = a.norm().to_f64().unwrap_or(f64::INFINITY);
        let scale = norm.powf(2.0 / n as f64);
        let mut seed = 0u64;
        for (i, x) in a.basis().row_vecs().iter().flatten().enumerate() {
            seed = seed.wrapping_mul(1_000_003).wrapping_add(
                x.to_u64().unwrap_or(i as u64),
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spread = 0.5 * (1.0 + (self.discriminant().abs().to_f64().unwrap()).ln() / n as f64);
        for round in 0..rounds {
            let mut s: Vec<f64> = if round == 0 {
                vec![0.0; d.len()]
            } else {
                (0..d.len()).map(|_| rng.gen_range(-spread..spread)).collect()
            };
            let mean = s.iter().zip(&d).map(|(x, y)| x * y).sum::<f64>() / n as f64;
            for x in s.iter_mut() {
                *x -= mean;
            }
            let w: Vec<f64> = s.iter().map(|x| (2.0 * x).exp() / scale).collect();
            let lat = self.ideal_lattice(a, &w)?;
            // basis vectors first, then a bounded enumeration
            for c in &lat.basis {
                if self.norm_coords(c).abs() == *a.norm() {
                    return Ok(Principality::Generator(FieldElement::integral(c.clone())));
                }
            }
            let bound = 1.5 * d.len() as f64;
            if let Some(cands) = self.short_elements(&lat, bound, 20_000) {
                for c in cands {
                    if self.norm_coords(&c).abs() == *a.norm() {
                        return Ok(Principality::Generator(FieldElement::integral(c)));
                    }
                }
            }
        }
        Ok(Principality::Unknown)
    }
}

fn combine(basis: &[Vec<BigInt>], x: &[i64]) -> Vec<BigInt> {
    let n = basis[0].len();
    let mut c = vec![BigInt::zero(); n];
    for (k, b) in x.iter().zip(basis) {
        if *k != 0 {
            for (y, z) in c.iter_mut().zip(b) {
                *y += z * *k;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_quadratic() {
        let k = NumberField::parse("x^2 + 211").unwrap();
        let five = k.ideal_int(&BigInt::from(5));
        match k.is_principal(&five, None).unwrap() {
            Principality::Generator(g) => assert_eq!(k.norm(&g), BigInt::from(25).into()),
            r => panic!("{r:?}"),
        }
        // h(-211) = 3: primes above 5 (which splits) are non-principal
        let ps = k.primes_above(5).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(k.is_principal(&ps[0].ideal, None).unwrap(), Principality::NotPrincipal);
        let cube = k.ideal_pow(&ps[0].ideal, 3).unwrap();
        assert!(matches!(
            k.is_principal(&cube, None).unwrap(),
            Principality::Generator(_)
        ));
    }

    #[test]
    fn real_quadratic_with_unit() {
        // Q(sqrt 10) has class number 2; primes above 3 are not principal
        let k = NumberField::parse("x^2 - 10").unwrap();
        let u = k.elem_from_poly(&crate::kernel::poly::IntPolynomial::parse("x + 3").unwrap());
        assert!(k.is_unit(&u));
        let ps = k.primes_above(3).unwrap();
        assert_eq!(k.is_principal(&ps[0].ideal, Some(&u)).unwrap(), Principality::NotPrincipal);
        let sq = k.ideal_pow(&ps[0].ideal, 2).unwrap();
        assert!(matches!(
            k.is_principal(&sq, Some(&u)).unwrap(),
            Principality::Generator(_)
        ));
        // (x + 4) has norm 6
        let q = k.ideal_principal(&k.elem_from_poly(
            &crate::kernel::poly::IntPolynomial::parse("x + 4").unwrap(),
        ))
        .unwrap();
        assert!(matches!(
            k.is_principal(&q, Some(&u)).unwrap(),
            Principality::Generator(_)
        ));
    }
}
