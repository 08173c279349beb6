//! Prime ideal decomposition and valuations.

use super::{IdealHNF, NumberField};
use crate::error::{IflError, Result};
use crate::kernel::int::factor;
use crate::kernel::matrix::{left_kernel_mod_p, row_basis_mod_p, IntMatrix};
use crate::kernel::polymod::FpPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A prime ideal above a rational prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub p: u64,
    /// Ramification index.
    pub e: u32,
    /// Residue degree.
    pub f: u32,
    pub ideal: IdealHNF,
    /// Second generator: the prime is `(p, gen)`.
    pub gen: Vec<BigInt>,
    /// `beta` in `p P^-1` but not in `pO`; used for valuations.
    beta: Vec<BigInt>,
}

impl PrimeIdeal {
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.p).pow(self.f)
    }
}

/// Subspace of `F_p^n` in reduced row echelon form.
fn rref(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    row_basis_mod_p(rows, p)
}

fn pivot(row: &[u64]) -> usize {
    row.iter().position(|&x| x != 0).expect("nonzero row")
}

/// Reduce `v` modulo the span of an RREF basis.
fn reduce(v: &[u64], basis: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut v = v.to_vec();
    for row in basis {
        let c = pivot(row);
        let k = v[c];
        if k != 0 {
            for (x, r) in v.iter_mut().zip(row) {
                *x = ((*x as u128 + (p - k) as u128 * *r as u128) % p as u128) as u64;
            }
        }
    }
    v
}

fn unit_vec(n: usize, i: usize) -> Vec<u64> {
    let mut e = vec![0u64; n];
    e[i] = 1;
    e
}

impl NumberField {
    /// Ideal `(x)` of `O/pO` (an F_p-subspace), given a table reduced mod `p`.
    fn principal_mod(&self, tp: &[u64], x: &[u64], p: u64) -> Vec<Vec<u64>> {
        let n = self.degree();
        (0..n)
            .map(|i| self.mul_coords_mod(tp, x, &unit_vec(n, i), p))
            .collect()
    }

    /// Maximal ideals of `O/pO` containing the ideal `j` (RREF), by splitting
    /// the semisimple quotient with fixed points of Frobenius.
    fn split_mod(&self, tp: &[u64], j: Vec<Vec<u64>>, p: u64, out: &mut Vec<Vec<Vec<u64>>>) {
        let n = self.degree();
        let pivots: Vec<usize> = j.iter().map(|r| pivot(r)).collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        // x -> x^p - x on A/J, restricted to free coordinates
        let bp = BigInt::from(p);
        let rows: Vec<Vec<u64>> = free
            .iter()
            .map(|&i| {
                let e = unit_vec(n, i);
                let mut y = self.pow_coords_mod(tp, &e, &bp, p);
                y[i] = (y[i] + p - 1) % p;
                let y = reduce(&y, &j, p);
                free.iter().map(|&c| y[c]).collect()
            })
            .collect();
        let ker = left_kernel_mod_p(&rows, p);
        if ker.len() <= 1 {
            out.push(j);
            return;
        }
        // a fixed element that is not a scalar mod J
        let one = reduce(&unit_vec(n, 0), &j, p);
        let x = ker
            .iter()
            .map(|k| {
                let mut v = vec![0u64; n];
                for (t, &c) in free.iter().enumerate() {
                    v[c] = k[t];
                }
                v
            })
            .find(|v| {
                let mut span = j.clone();
                span.push(one.clone());
                rref(&span, p).len() != rref(&[span.clone(), vec![v.clone()]].concat(), p).len()
            })
            .expect("non-scalar idempotent direction");
        // minimal polynomial of x modulo J
        let mut powers = vec![one.clone()];
        let mut coeffs;
        loop {
            let next = reduce(&self.mul_coords_mod(tp, powers.last().unwrap(), &x, p), &j, p);
            let mut m: Vec<Vec<u64>> = powers.clone();
            m.push(next.clone());
            let k = left_kernel_mod_p(&m, p);
            if let Some(rel) = k.into_iter().next() {
                coeffs = rel;
                break;
            }
            powers.push(next);
        }
        // rel[0] + rel[1] x + ... (leading coefficient nonzero)
        let lead = *coeffs.last().unwrap();
        let inv = crate::kernel::int::pow_mod(lead, p - 2, p);
        for c in coeffs.iter_mut() {
            *c = crate::kernel::int::mul_mod(*c, inv, p);
        }
        let minpoly = FpPoly::new(p, coeffs);
        for c in minpoly.roots() {
            let mut xc = x.clone();
            xc[0] = (xc[0] + p - c % p) % p;
            let mut gens = j.clone();
            gens.extend(self.principal_mod(tp, &xc, p));
            self.split_mod(tp, rref(&gens, p), p, out);
        }
    }

    fn prime_from_maximal(&self, tp: &[u64], m: &[Vec<u64>], p: u64) -> Result<PrimeIdeal> {
        let n = self.degree();
        let bp = BigInt::from(p);
        let gens: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let basis = if gens.is_empty() {
            self.ideal_int(&bp).basis().clone()
        } else {
            IntMatrix::from_cols(&gens, n).hnf_mod(&bp)
        };
        let ideal = self.ideal_from_basis(basis);
        let f = (n - m.len()) as u32;
        // beta: x with x * m_j = 0 mod p for all generators m_j
        let mcols: Vec<Vec<u64>> = ideal
            .generators()
            .iter()
            .map(|g| g.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect())
            .collect();
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let e = unit_vec(n, i);
                mcols
                    .iter()
                    .flat_map(|g| self.mul_coords_mod(tp, &e, g, p))
                    .collect()
            })
            .collect();
        let ker = left_kernel_mod_p(&rows, p);
        let beta: Vec<BigInt> = ker
            .first()
            .ok_or_else(|| IflError::Computation("no anti-uniformizer".into()))?
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        let mut pr = PrimeIdeal {
            p,
            e: 0,
            f,
            ideal,
            gen: Vec::new(),
            beta,
        };
        pr.e = self
            .valuation(&pr, &self.int_coords(&bp))
            .expect("p is nonzero");
        pr.gen = self.second_generator(&pr)?;
        Ok(pr)
    }

    /// `alpha` in `P` with `(p, alpha) = P`.
    fn second_generator(&self, pr: &PrimeIdeal) -> Result<Vec<BigInt>> {
        let bp = BigInt::from(pr.p);
        let gens = pr.ideal.generators();
        let try_gen = |a: &Vec<BigInt>| -> bool {
            let i = self.ideal_from_gens_mod(&[self.int_coords(&bp), a.clone()], &bp);
            i == pr.ideal
        };
        for g in &gens {
            if try_gen(g) {
                return Ok(g.clone());
            }
        }
        // small combinations of the Z-basis
        let n = gens.len();
        for s in 1..=3i64 {
            let total = (2 * s + 1).pow(n as u32);
            for idx in 0..total {
                let mut t = idx;
                let mut a = vec![BigInt::zero(); n];
                for g in &gens {
                    let c = t % (2 * s + 1) - s;
                    t /= 2 * s + 1;
                    for (x, y) in a.iter_mut().zip(g) {
                        *x += y * c;
                    }
                }
                if try_gen(&a) {
                    return Ok(a);
                }
            }
        }
        Err(IflError::Computation("no two-element representation found".into()))
    }

    /// Prime ideals above `p` via the structure of `O/pO` (works whether or
    /// not `p` divides the index). Sorted by `(f, e, basis)`.
    pub fn primes_above(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        if !crate::kernel::int::is_prime_u64(p) {
            return Err(IflError::InvalidInput(format!("{p} is not prime")));
        }
        let n = self.degree();
        let tp = self.table_mod(p);
        let mut q = BigInt::from(p);
        while q < BigInt::from(n) {
            q *= p;
        }
        let frob: Vec<Vec<u64>> = (0..n)
            .map(|i| self.pow_coords_mod(&tp, &unit_vec(n, i), &q, p))
            .collect();
        let rad = rref(&left_kernel_mod_p(&frob, p), p);
        let mut maxes = Vec::new();
        self.split_mod(&tp, rad, p, &mut maxes);
        let mut out = maxes
            .iter()
            .map(|m| self.prime_from_maximal(&tp, m, p))
            .collect::<Result<Vec<_>>>()?;
        sort_primes(&mut out);
        let total: u32 = out.iter().map(|q| q.e * q.f).sum();
        if total as usize != n {
            return Err(IflError::Integrity(format!("sum e f = {total} != {n} above {p}")));
        }
        Ok(out)
    }

    /// Prime ideals above `p` by Kummer-Dedekind; requires `p` not dividing
    /// the index.
    pub fn primes_above_dedekind(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        if (self.index() % BigInt::from(p)).is_zero() {
            return Err(IflError::Unsupported(format!("{p} divides the index")));
        }
        let n = self.degree();
        let tp = self.table_mod(p);
        let bp = BigInt::from(p);
        let mut out = Vec::new();
        for (g, e) in FpPoly::from_int(self.poly(), p).factor() {
            let gc = self.eval_poly(&g.to_int());
            let ideal = self.ideal_from_gens_mod(&[self.int_coords(&bp), gc.clone()], &bp);
            let m: Vec<Vec<u64>> = rref(
                &ideal
                    .generators()
                    .iter()
                    .map(|v| v.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect())
                    .collect::<Vec<_>>(),
                p,
            );
            let mut pr = self.prime_from_maximal(&tp, &m, p)?;
            debug_assert_eq!(pr.f as usize, g.deg());
            debug_assert_eq!(pr.e, e);
            pr.gen = gc;
            out.push(pr);
        }
        sort_primes(&mut out);
        let total: u32 = out.iter().map(|q| q.e * q.f).sum();
        if total as usize != n {
            return Err(IflError::Integrity(format!("sum e f = {total} != {n} above {p}")));
        }
        Ok(out)
    }

    /// `v_P(x)` for integral `x`; `None` for `x = 0`.
    pub fn valuation(&self, pr: &PrimeIdeal, x: &[BigInt]) -> Option<u32> {
        if x.iter().all(Zero::is_zero) {
            return None;
        }
        let bp = BigInt::from(pr.p);
        if !(self.norm_coords(x) % &bp).is_zero() {
            return Some(0);
        }
        let mut y = x.to_vec();
        let mut v = 0;
        loop {
            let z = self.mul_coords(&y, &pr.beta);
            if z.iter().all(|c| (c % &bp).is_zero()) {
                y = z.into_iter().map(|c| c / &bp).collect();
                v += 1;
            } else {
                return Some(v);
            }
        }
    }

    /// `v_P(I)` as the minimum over a Z-basis.
    pub fn ideal_valuation(&self, pr: &PrimeIdeal, a: &IdealHNF) -> u32 {
        if !(a.norm() % BigInt::from(pr.p)).is_zero() {
            return 0;
        }
        a.generators()
            .iter()
            .filter_map(|g| self.valuation(pr, g))
            .min()
            .unwrap_or(0)
    }

    /// Factorisation of an integral ideal into prime ideals.
    pub fn factor_ideal(&self, a: &IdealHNF) -> Result<Vec<(PrimeIdeal, u32)>> {
        let fac = factor(a.norm())
            .ok_or_else(|| IflError::Computation(format!("could not factor {}", a.norm())))?;
        let mut out = Vec::new();
        for (p, _) in fac {
            let p = p
                .to_u64()
                .ok_or_else(|| IflError::Unsupported(format!("prime {p} exceeds 64 bits")))?;
            for pr in self.primes_above(p)? {
                let v = self.ideal_valuation(&pr, a);
                if v > 0 {
                    out.push((pr, v));
                }
            }
        }
        Ok(out)
    }

    /// Images of the integral basis in `Z/p^N` under the completion at a prime
    /// with `e = f = 1`.
    pub fn residue_images(&self, pr: &PrimeIdeal, prec: u32) -> Result<Vec<BigInt>> {
        if pr.e != 1 || pr.f != 1 {
            return Err(IflError::InvalidInput("prime is not of degree one".into()));
        }
        let h = self.ideal_pow(&pr.ideal, prec as u64)?;
        let b = h.basis();
        let n = self.degree();
        let m = BigInt::from(pr.p).pow(prec);
        if b.get(0, 0) != &m {
            return Err(IflError::Integrity("unexpected HNF for P^N".into()));
        }
        // column j: w_j + sum_{i<j} h_ij w_i lies in P^N
        let mut c = vec![BigInt::one(); n];
        for j in 1..n {
            if !b.get(j, j).is_one() {
                return Err(IflError::Integrity("unexpected HNF for P^N".into()));
            }
            let mut s = BigInt::zero();
            for i in 0..j {
                s += b.get(i, j) * &c[i];
            }
            c[j] = (-s).mod_floor(&m);
        }
        Ok(c)
    }

    /// Image of an integral element in `Z/p^N` for a degree-one prime.
    pub fn residue_map(&self, images: &[BigInt], x: &[BigInt], m: &BigInt) -> BigInt {
        let mut s = BigInt::zero();
        for (a, b) in x.iter().zip(images) {
            s += a * b;
        }
        s.mod_floor(m)
    }

    pub(crate) fn ideal_from_basis(&self, basis: IntMatrix) -> IdealHNF {
        IdealHNF::from_parts(self.tag(), basis)
    }
}

fn sort_primes(v: &mut [PrimeIdeal]) {
    v.sort_by(|a, b| {
        (a.f, a.e)
            .cmp(&(b.f, b.e))
            .then_with(|| a.ideal.basis().row_vecs().cmp(&b.ideal.basis().row_vecs()))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(ps: &[PrimeIdeal]) -> Vec<(u32, u32)> {
        ps.iter().map(|p| (p.e, p.f)).collect()
    }

    #[test]
    fn dedekind_agrees_with_algebra() {
        for s in ["x^3 - x^2 - 39x - 109", "x^3 - 2", "x^2 + 211", "x^3 - 3x + 1"] {
            let k = NumberField::parse(s).unwrap();
            for p in [3u64, 5, 7, 11, 13, 53, 109] {
                if (k.index() % BigInt::from(p)).is_zero() {
                    continue;
                }
                let a = k.primes_above(p).unwrap();
                let d = k.primes_above_dedekind(p).unwrap();
                assert_eq!(shape(&a), shape(&d), "{s} at {p}");
                for (x, y) in a.iter().zip(&d) {
                    assert_eq!(x.ideal, y.ideal, "{s} at {p}");
                }
            }
        }
    }

    #[test]
    fn index_divisor_primes() {
        // 2 divides the index of x^3 - x^2 - 2x - 8 and splits completely
        let k = NumberField::parse("x^3 - x^2 - 2x - 8").unwrap();
        let ps = k.primes_above(2).unwrap();
        assert_eq!(shape(&ps), vec![(1, 1), (1, 1), (1, 1)]);
        let k = NumberField::parse("x^3 - x^2 - 39x - 109").unwrap();
        let ps = k.primes_above(2).unwrap();
        let total: u32 = ps.iter().map(|p| p.e * p.f).sum();
        assert_eq!(total, 3);
        // 3 has a unique degree-one prime with e = 1
        let ps = k.primes_above(3).unwrap();
        assert_eq!(ps.iter().filter(|p| p.e == 1 && p.f == 1).count(), 1);
    }

    #[test]
    fn valuations_and_factorisation() {
        let k = NumberField::parse("x^2 + 211").unwrap();
        let ps = k.primes_above(211).unwrap();
        assert_eq!(shape(&ps), vec![(2, 1)]);
        let v = k.valuation(&ps[0], &k.int_coords(&BigInt::from(211 * 211)));
        assert_eq!(v, Some(4));
        let t = k.theta();
        assert_eq!(k.valuation(&ps[0], &t), Some(1));
        let i = k.ideal_principal(&k.elem_from_int(15)).unwrap();
        let f = k.factor_ideal(&i).unwrap();
        let mut prod = k.ideal_unit();
        for (pr, e) in &f {
            prod = k.ideal_mul(&prod, &k.ideal_pow(&pr.ideal, *e as u64).unwrap()).unwrap();
        }
        assert_eq!(prod, i);
    }

    #[test]
    fn degree_one_residue_map() {
        let k = NumberField::parse("x^3 - x^2 - 39x - 109").unwrap();
        let pr = k
            .primes_above(3)
            .unwrap()
            .into_iter()
            .find(|p| p.e == 1 && p.f == 1)
            .unwrap();
        let im = k.residue_images(&pr, 4).unwrap();
        let m = BigInt::from(81);
        let t = k.residue_map(&im, &k.theta(), &m);
        // image of x is a root of f mod 81
        let f = k.poly().eval(&t);
        assert!((f % &m).is_zero());
        // multiplicativity on a sample
        let a = k.eval_poly(&crate::kernel::poly::IntPolynomial::parse("x^2 + 5").unwrap());
        let b = k.eval_poly(&crate::kernel::poly::IntPolynomial::parse("3x - 7").unwrap());
        let ab = k.mul_coords(&a, &b);
        let lhs = k.residue_map(&im, &ab, &m);
        let rhs = (k.residue_map(&im, &a, &m) * k.residue_map(&im, &b, &m)).mod_floor(&m);
        assert_eq!(lhs, rhs);
    }
}
