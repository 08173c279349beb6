//! Number fields given by a monic integral polynomial, with maximal order.

pub mod compositum;
pub mod element;
pub mod embed;
pub mod ideal;
pub mod primes;
pub mod principal;

use crate::error::{IflError, Result};
use crate::kernel::int::factor;
use crate::kernel::matrix::{left_kernel_mod_p, IntMatrix};
use crate::kernel::poly::IntPolynomial;
use crate::kernel::zfactor::factor_over_z;
use embed::{ordered_embeddings, refine_root, FixedComplex, RootApprox};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::hash::{Hash, Hasher};

pub use element::FieldElement;
pub use ideal::IdealHNF;

/// A number field `Q[x]/(f)` together with its ring of integers.
///
/// The integral basis is `w_j = (sum_i basis[i][j] x^i) / basis_den`, with
/// `basis` upper triangular (so `w_j` has degree `j` and `w_0 = 1`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NumberField {
    poly: IntPolynomial,
    n: usize,
    basis: IntMatrix,
    basis_den: BigInt,
    /// `w_i w_j = sum_k mult[(i n + j) n + k] w_k`.
    mult: Vec<BigInt>,
    poly_disc: BigInt,
    disc: BigInt,
    index: BigInt,
    r1: usize,
    r2: usize,
    roots: Vec<RootApprox>,
    tag: u64,
}

/// Multiplication table of the order spanned by `basis / den`.
fn mult_table(f: &IntPolynomial, basis: &IntMatrix, den: &BigInt) -> Result<Vec<BigInt>> {
    let n = f.deg();
    let cols: Vec<IntPolynomial> = (0..n).map(|j| IntPolynomial::new(basis.col(j))).collect();
    let scaled = {
        let mut m = basis.clone();
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j) * den;
                m.set(i, j, v);
            }
        }
        m
    };
    let mut t = vec![BigInt::zero(); n * n * n];
    for i in 0..n {
        for j in i..n {
            let prod = (&cols[i] * &cols[j]).rem_monic(f);
            let rhs: Vec<BigInt> = (0..n).map(|k| prod.coeff(k)).collect();
            let c = scaled.solve_upper(&rhs).ok_or_else(|| {
                IflError::Computation("basis does not span a ring".into())
            })?;
            for k in 0..n {
                t[(i * n + j) * n + k] = c[k].clone();
                t[(j * n + i) * n + k] = c[k].clone();
            }
        }
    }
    Ok(t)
}

fn mul_table(t: &[BigInt], n: usize, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if b[j].is_zero() {
                continue;
            }
            let ab = &a[i] * &b[j];
            let row = &t[(i * n + j) * n..(i * n + j + 1) * n];
            for k in 0..n {
                if !row[k].is_zero() {
                    out[k] += &ab * &row[k];
                }
            }
        }
    }
    out
}

fn mul_table_mod(t: &[u64], n: usize, a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u128; n];
    let pp = p as u128;
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n {
            if b[j] == 0 {
                continue;
            }
            let ab = (a[i] as u128 * b[j] as u128) % pp;
            let row = &t[(i * n + j) * n..(i * n + j + 1) * n];
            for k in 0..n {
                if row[k] != 0 {
                    out[k] = (out[k] + ab * row[k] as u128) % pp;
                }
            }
        }
    }
    out.into_iter().map(|x| x as u64).collect()
}

fn table_mod(t: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    t.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect()
}

fn pow_mod_elem(t: &[u64], n: usize, a: &[u64], e: &BigInt, p: u64) -> Vec<u64> {
    let mut r = vec![0u64; n];
    r[0] = 1 % p;
    let bits = e.bits();
    for i in (0..bits).rev() {
        r = mul_table_mod(t, n, &r, &r, p);
        if e.bit(i) {
            r = mul_table_mod(t, n, &r, a, p);
        }
    }
    r
}

/// HNF of `gens` (coordinate vectors) together with `d * Z^n`.
fn lattice_mod(gens: &[Vec<BigInt>], n: usize, d: &BigInt) -> IntMatrix {
    let m = IntMatrix::from_cols(gens, n);
    if gens.is_empty() {
        let mut z = IntMatrix::zeros(n, n);
        for i in 0..n {
            z.set(i, i, d.clone());
        }
        return z;
    }
    m.hnf_mod(d)
}

/// One enlargement step of the Round-2 algorithm at `p`. Returns `None` when
/// the order is already `p`-maximal, otherwise the enlarged order's basis
/// (as coordinates over the current basis, scaled by `p`).
fn round2_step(t: &[BigInt], n: usize, p: u64) -> Option<IntMatrix> {
    let tp = table_mod(t, p);
    let bp = BigInt::from(p);
    // p-radical: kernel of x -> x^(p^j), p^j >= n
    let mut q = BigInt::from(p);
    while q < BigInt::from(n) {
        q *= p;
    }
    let frob: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            pow_mod_elem(&tp, n, &e, &q, p)
        })
        .collect();
    let rad = left_kernel_mod_p(&frob, p);
    let gens: Vec<Vec<BigInt>> = rad
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let ip = lattice_mod(&gens, n, &bp);
    // U = {x : x I_p subset p I_p}
    let ipcols = ip.col_vecs();
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let mut row = Vec::with_capacity(n * n);
            for b in &ipcols {
                let prod = mul_table(t, n, &e, b);
                let c = ip.solve_upper(&prod).expect("I_p is an ideal");
                row.extend(c.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()));
            }
            row
        })
        .collect();
    let ker = left_kernel_mod_p(&rows, p);
    if ker.is_empty() {
        return None;
    }
    let gens: Vec<Vec<BigInt>> = ker
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Some(lattice_mod(&gens, n, &bp))
}

impl NumberField {
    /// Field generated by a root of the monic irreducible polynomial `f`,
    /// with maximal order by Round-2 saturation at every `p` with `p^2 | disc(f)`.
    pub fn from_polynomial(f: &IntPolynomial) -> Result<Self> {
        Self::validate_poly(f)?;
        let n = f.deg();
        let pd = f.discriminant();
        let fac = factor(&pd).ok_or_else(|| {
            IflError::Computation(format!("could not factor polynomial discriminant {pd}"))
        })?;
        let primes: Vec<u64> = fac
            .iter()
            .filter(|(_, e)| *e >= 2)
            .map(|(p, _)| {
                p.to_u64()
                    .ok_or_else(|| IflError::Unsupported(format!("prime {p} exceeds 64 bits")))
            })
            .collect::<Result<_>>()?;
        let mut basis = IntMatrix::identity(n);
        let mut den = BigInt::one();
        let mut t = mult_table(f, &basis, &den)?;
        for p in primes {
            while let Some(u) = round2_step(&t, n, p) {
                // new basis: (old basis * u) / (den * p), renormalised
                let gens = basis.mul(&u);
                let mut h = gens.hnf();
                let mut d = &den * p;
                let mut g = d.clone();
                for i in 0..n {
                    for j in 0..n {
                        g = g.gcd(h.get(i, j));
                    }
                }
                if !g.is_one() {
                    for i in 0..n {
                        for j in 0..n {
                            let v = h.get(i, j) / &g;
                            h.set(i, j, v);
                        }
                    }
                    d /= &g;
                }
                basis = h;
                den = d;
                t = mult_table(f, &basis, &den)?;
            }
        }
        Self::assemble(f.clone(), basis, den, t, pd)
    }

    /// Field with a caller-supplied integral basis (columns over `den`, in
    /// power-basis coordinates). The basis is re-normalised to HNF; the caller
    /// is responsible for maximality.
    pub fn from_integral_basis(f: &IntPolynomial, gens: &IntMatrix, den: &BigInt) -> Result<Self> {
        Self::validate_poly(f)?;
        let n = f.deg();
        let mut h = gens.hnf();
        if h.cols() != n {
            return Err(IflError::InvalidInput("integral basis has wrong rank".into()));
        }
        let mut d = den.clone();
        let mut g = d.clone();
        for i in 0..n {
            for j in 0..n {
                g = g.gcd(h.get(i, j));
            }
        }
        if !g.is_one() {
            for i in 0..n {
                for j in 0..n {
                    let v = h.get(i, j) / &g;
                    h.set(i, j, v);
                }
            }
            d /= &g;
        }
        let t = mult_table(f, &h, &d)?;
        let pd = f.discriminant();
        Self::assemble(f.clone(), h, d, t, pd)
    }

    fn validate_poly(f: &IntPolynomial) -> Result<()> {
        if f.degree() < 1 {
            return Err(IflError::InvalidInput("polynomial must have degree >= 1".into()));
        }
        if !f.is_monic() {
            return Err(IflError::InvalidInput(format!("polynomial {f} is not monic")));
        }
        let fs = factor_over_z(f);
        if fs.len() != 1 || fs[0].1 != 1 {
            return Err(IflError::InvalidInput(format!(
                "polynomial {f} is reducible: factor {}",
                fs[0].0
            )));
        }
        Ok(())
    }

    fn assemble(
        poly: IntPolynomial,
        basis: IntMatrix,
        den: BigInt,
        mult: Vec<BigInt>,
        poly_disc: BigInt,
    ) -> Result<Self> {
        let n = poly.deg();
        let mut diag = BigInt::one();
        for i in 0..n {
            diag *= basis.get(i, i);
        }
        let (index, rem) = den.pow(n as u32).div_rem(&diag);
        if !rem.is_zero() || index.is_zero() {
            return Err(IflError::Computation("order does not contain Z[x]".into()));
        }
        let (disc, rem) = poly_disc.div_rem(&(&index * &index));
        if !rem.is_zero() {
            return Err(IflError::Computation("index does not divide discriminant".into()));
        }
        let (roots, r1) = ordered_embeddings(&poly);
        let r2 = (n - r1) / 2;
        let mut h = std::collections::hash_map::DefaultHasher::new();
        poly.hash(&mut h);
        basis.hash(&mut h);
        den.hash(&mut h);
        let tag = h.finish();
        let k = Self {
            poly,
            n,
            basis,
            basis_den: den,
            mult,
            poly_disc,
            disc,
            index,
            r1,
            r2,
            roots,
            tag,
        };
        // sign of the discriminant is (-1)^r2
        let expect_neg = r2 % 2 == 1;
        if k.disc.is_negative() != expect_neg {
            return Err(IflError::Computation("discriminant sign inconsistent".into()));
        }
        Ok(k)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_polynomial(&IntPolynomial::parse_any(s)?)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.poly_disc
    }

    /// `[O_K : Z[x]]`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn unit_rank(&self) -> usize {
        self.r1 + self.r2 - 1
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn basis_matrix(&self) -> (&IntMatrix, &BigInt) {
        (&self.basis, &self.basis_den)
    }

    pub fn roots(&self) -> &[RootApprox] {
        &self.roots
    }

    pub(crate) fn table_mod(&self, p: u64) -> Vec<u64> {
        table_mod(&self.mult, p)
    }

    /// Product of integral coordinate vectors.
    pub fn mul_coords(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        mul_table(&self.mult, self.n, a, b)
    }

    pub(crate) fn mul_coords_mod(&self, tp: &[u64], a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        mul_table_mod(tp, self.n, a, b, p)
    }

    pub(crate) fn pow_coords_mod(&self, tp: &[u64], a: &[u64], e: &BigInt, p: u64) -> Vec<u64> {
        pow_mod_elem(tp, self.n, a, e, p)
    }

    /// Multiplication-by-`a` matrix: row `i` holds the coordinates of `a w_i`.
    pub fn mult_matrix(&self, a: &[BigInt]) -> IntMatrix {
        let n = self.n;
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if a[j].is_zero() {
                    continue;
                }
                let row = &self.mult[(j * n + i) * n..(j * n + i + 1) * n];
                for k in 0..n {
                    if !row[k].is_zero() {
                        *m.get_mut(i, k) += &a[j] * &row[k];
                    }
                }
            }
        }
        m
    }

    /// Exact norm of an integral element.
    pub fn norm_coords(&self, a: &[BigInt]) -> BigInt {
        self.mult_matrix(a).det()
    }

    /// Exact trace of an integral element.
    pub fn trace_coords(&self, a: &[BigInt]) -> BigInt {
        let m = self.mult_matrix(a);
        (0..self.n).map(|i| m.get(i, i).clone()).sum()
    }

    /// Complex embeddings `sigma_k(w_i)` for the `r1 + r2` places (f64).
    pub fn basis_embeddings(&self) -> Vec<Vec<Complex64>> {
        let n = self.n;
        let d = self.basis_den.to_f64().unwrap();
        (0..n)
            .map(|i| {
                let col: Vec<f64> = (0..n).map(|j| self.basis.get(j, i).to_f64().unwrap()).collect();
                self.roots
                    .iter()
                    .map(|r| {
                        let z = r.z();
                        let mut acc = Complex64::zero();
                        for c in col.iter().rev() {
                            acc = acc * z + c;
                        }
                        acc / d
                    })
                    .collect()
            })
            .collect()
    }

    /// Fixed-point embeddings of the integral basis: `[i][place]`.
    pub fn basis_embeddings_fixed(&self) -> Vec<Vec<FixedComplex>> {
        let n = self.n;
        let roots: Vec<FixedComplex> = self.roots.iter().map(|r| refine_root(&self.poly, r.z())).collect();
        let powers: Vec<Vec<FixedComplex>> = roots
            .iter()
            .map(|z| {
                let mut v = vec![FixedComplex::zero().add_int(&BigInt::one())];
                for i in 1..n {
                    let next = v[i - 1].mul(z);
                    v.push(next);
                }
                v
            })
            .collect();
        (0..n)
            .map(|i| {
                powers
                    .iter()
                    .map(|pw| {
                        let mut acc = FixedComplex::zero();
                        for (j, zj) in pw.iter().enumerate() {
                            let c = self.basis.get(j, i);
                            if !c.is_zero() {
                                acc = acc.add(&zj.scale(c));
                            }
                        }
                        acc.div_int(&self.basis_den)
                    })
                    .collect()
            })
            .collect()
    }

    /// Embeddings of an integral element, summed exactly in fixed point so
    /// that small conjugates of large elements keep their precision.
    pub fn embed_coords_fixed(&self, a: &[BigInt], emb: &[Vec<FixedComplex>]) -> Vec<Complex64> {
        let places = self.r1 + self.r2;
        let mut out = vec![FixedComplex::zero(); places];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for k in 0..places {
                out[k] = out[k].add(&emb[i][k].scale(ai));
            }
        }
        out.iter().map(FixedComplex::to_c64).collect()
    }

    /// Embeddings of an integral element at the `r1 + r2` places.
    pub fn embed_coords(&self, a: &[BigInt], emb: &[Vec<Complex64>]) -> Vec<Complex64> {
        let places = self.r1 + self.r2;
        let mut out = vec![Complex64::zero(); places];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let x = ai.to_f64().unwrap_or(f64::NAN);
            for k in 0..places {
                out[k] += emb[i][k] * x;
            }
        }
        out
    }

    /// Integral element whose embeddings at the `r1 + r2` places approximate
    /// `targets`, by solving the real linear system and rounding. The caller
    /// verifies the result exactly.
    pub fn coords_from_embeddings(&self, targets: &[Complex64]) -> Option<Vec<BigInt>> {
        let n = self.n;
        let emb = self.basis_embeddings();
        let mut m = vec![vec![0.0f64; n + 1]; n];
        let mut row = 0;
        for k in 0..self.r1 + self.r2 {
            for j in 0..n {
                m[row][j] = emb[j][k].re;
            }
            m[row][n] = targets[k].re;
            row += 1;
            if k >= self.r1 {
                for j in 0..n {
                    m[row][j] = emb[j][k].im;
                }
                m[row][n] = targets[k].im;
                row += 1;
            }
        }
        for c in 0..n {
            let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))?;
            if m[p][c] == 0.0 {
                return None;
            }
            m.swap(c, p);
            for i in 0..n {
                if i != c {
                    let f = m[i][c] / m[c][c];
                    if f != 0.0 {
                        for j in c..=n {
                            m[i][j] -= f * m[c][j];
                        }
                    }
                }
            }
        }
        (0..n)
            .map(|i| {
                let x = m[i][n] / m[i][i];
                (x.is_finite() && x.abs() < 4e15).then(|| BigInt::from(x.round() as i64))
            })
            .collect()
    }

    /// Convert power-basis coordinates (rational numerators over `den`) to
    /// integral-basis coordinates; `None` if the result is not integral.
    pub fn from_power_basis(&self, coeffs: &[BigInt], den: &BigInt) -> Option<Vec<BigInt>> {
        // basis c / basis_den = coeffs / den  ->  (den * basis) c = basis_den * coeffs
        let n = self.n;
        let mut m = self.basis.clone();
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j) * den;
                m.set(i, j, v);
            }
        }
        let mut rhs: Vec<BigInt> = (0..n).map(|i| coeffs.get(i).cloned().unwrap_or_default()).collect();
        for x in rhs.iter_mut() {
            *x *= &self.basis_den;
        }
        m.solve_upper(&rhs)
    }

    /// Power-basis numerator coefficients and denominator of an integral element.
    pub fn to_power_basis(&self, a: &[BigInt]) -> (Vec<BigInt>, BigInt) {
        (self.basis.mul_vec(a), self.basis_den.clone())
    }

    /// Coordinates of the generator `x`.
    pub fn theta(&self) -> Vec<BigInt> {
        self.eval_poly(&IntPolynomial::x())
    }

    pub fn one_coords(&self) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.n];
        e[0] = BigInt::one();
        e
    }

    pub fn int_coords(&self, c: &BigInt) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.n];
        e[0] = c.clone();
        e
    }

    /// Value of a polynomial at the generator, as integral coordinates.
    pub fn eval_poly(&self, g: &IntPolynomial) -> Vec<BigInt> {
        let r = g.rem_monic(&self.poly);
        let coeffs: Vec<BigInt> = (0..self.n).map(|i| r.coeff(i)).collect();
        self.from_power_basis(&coeffs, &BigInt::one()).expect("integral")
    }

    /// Characteristic polynomial of an integral element.
    pub fn charpoly_coords(&self, a: &[BigInt]) -> IntPolynomial {
        let m = self.mult_matrix(a);
        let n = self.n;
        let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
        let ys: Vec<BigInt> = xs
            .iter()
            .map(|x| {
                let mut t = m.clone();
                for i in 0..n {
                    for j in 0..n {
                        let v = if i == j { x - t.get(i, j) } else { -t.get(i, j) };
                        t.set(i, j, v);
                    }
                }
                t.det()
            })
            .collect();
        crate::kernel::poly::interpolate(&xs, &ys).expect("integral charpoly")
    }

    /// Minkowski bound `(4/pi)^r2 n!/n^n sqrt|d|`.
    pub fn minkowski_bound(&self) -> f64 {
        let n = self.n as f64;
        let mut fact = 1.0;
        for i in 1..=self.n {
            fact *= i as f64;
        }
        (4.0 / std::f64::consts::PI).powi(self.r2 as i32) * fact / n.powf(n)
            * self.disc.abs().to_f64().unwrap().sqrt()
    }

    pub(crate) fn check_same(&self, tag: u64) -> Result<()> {
        if tag != self.tag {
            return Err(IflError::InvalidInput("ideal belongs to a different field".into()));
        }
        Ok(())
    }

    /// Whether this field's polynomial is the given one.
    pub fn same_as(&self, other: &NumberField) -> bool {
        self.tag == other.tag
    }

    /// Trace-form discriminant of the stored basis (independent check of `disc`).
    pub fn basis_discriminant(&self) -> BigInt {
        let n = self.n;
        let mut tr = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let row = &self.mult[(i * n + j) * n..(i * n + j + 1) * n];
                tr.set(i, j, self.trace_coords(row));
            }
        }
        tr.det()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> NumberField {
        NumberField::parse(s).unwrap()
    }

    #[test]
    fn quadratic_discriminants() {
        let k = field("x^2 + 211");
        assert_eq!(k.discriminant(), &BigInt::from(-211));
        assert_eq!(k.index(), &BigInt::from(2));
        let k = field("x^2 + 1");
        assert_eq!(k.discriminant(), &BigInt::from(-4));
        assert_eq!(k.index(), &BigInt::one());
        assert_eq!(k.signature(), (0, 1));
        let k = field("x^2 - 2");
        assert_eq!(k.discriminant(), &BigInt::from(8));
        assert_eq!(k.signature(), (2, 0));
    }

    #[test]
    fn cubic_example() {
        let k = field("x^3 - x^2 - 39x - 109");
        assert_eq!(k.poly_discriminant(), &BigInt::from(-158944));
        assert_eq!(k.discriminant(), &BigInt::from(-39736));
        assert_eq!(k.index(), &BigInt::from(2));
        assert_eq!(k.signature(), (1, 1));
        assert_eq!(k.basis_discriminant(), BigInt::from(-39736));
    }

    #[test]
    fn non_monogenic_cases() {
        // x^3 - x^2 - 2x - 8 (Dedekind): index 2, field discriminant -503
        let k = field("x^3 - x^2 - 2x - 8");
        assert_eq!(k.discriminant(), &BigInt::from(-503));
        assert_eq!(k.index(), &BigInt::from(2));
        // 5th cyclotomic-type check: x^4 + x^3 + x^2 + x + 1 has disc 125
        let k = field("x^4 + x^3 + x^2 + x + 1");
        assert_eq!(k.discriminant(), &BigInt::from(125));
        // x^2 - 12 defines Q(sqrt 3): disc 12, index 2
        let k = field("x^2 - 12");
        assert_eq!(k.discriminant(), &BigInt::from(12));
    }

    #[test]
    fn rejects_reducible() {
        let e = NumberField::parse("x^2 - 4").unwrap_err();
        assert!(e.to_string().contains("reducible"));
        assert!(NumberField::parse("2x^2 + 1").is_err());
    }

    #[test]
    fn norms_and_charpoly() {
        let k = field("x^3 - 2");
        let t = k.theta();
        assert_eq!(k.norm_coords(&t), BigInt::from(2));
        let one = k.one_coords();
        let tm1: Vec<BigInt> = t.iter().zip(&one).map(|(a, b)| a - b).collect();
        assert_eq!(k.norm_coords(&tm1), BigInt::one());
        assert_eq!(k.charpoly_coords(&t), IntPolynomial::parse("x^3 - 2").unwrap());
    }
}
