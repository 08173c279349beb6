//! Finitely presented abelian groups `Z^m / <relations>`: structured sparse
//! elimination on unit pivots, then Smith form of the dense remainder.

use crate::error::{IflError, Result};
use crate::field::{IdealHNF, NumberField};
use crate::kernel::int::mul_mod;
use crate::kernel::matrix::{IntMatrix, Snf};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Arc;

/// Sparse relation: sorted `(column, coefficient)` pairs.
pub type SparseRow = Vec<(usize, i64)>;

const LARGE: i128 = 1 << 50;
const RANK_PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Debug)]
pub struct Presentation {
    ncols: usize,
    /// Eliminated column and the relation used, normalised to coefficient 1 there.
    subst: Vec<(usize, Vec<(usize, BigInt)>)>,
    /// Columns kept for the dense part.
    remaining: Vec<usize>,
    /// Smith diagonal on the dense part (ones first, zeros last).
    diag: Vec<BigInt>,
    v: IntMatrix,
    vinv: IntMatrix,
    /// Prime ideals attached to the columns, for class groups.
    ideals: Option<(Arc<NumberField>, Vec<IdealHNF>)>,
}

impl Presentation {
    /// Presentation from a dense relation matrix (rows are relations).
    pub fn dense(rel: &IntMatrix) -> Result<Self> {
        let c = rel.cols();
        let rows = rel.row_vecs();
        let p = Self::finish(c, vec![], (0..c).collect(), rows)?;
        if p.free_rank() > 0 {
            return Err(IflError::InvalidInput("relations do not define a finite group".into()));
        }
        Ok(p)
    }

    /// Presentation from sparse relations on `ncols` generators.
    pub fn sparse(ncols: usize, rels: &[SparseRow]) -> Result<Self> {
        let (subst, remaining, rows) = eliminate(ncols, rels);
        Self::finish(ncols, subst, remaining, rows)
    }

    pub(crate) fn with_ideals(mut self, k: Arc<NumberField>, ideals: Vec<IdealHNF>) -> Self {
        self.ideals = Some((k, ideals));
        self
    }

    fn finish(
        ncols: usize,
        subst: Vec<(usize, Vec<(usize, BigInt)>)>,
        remaining: Vec<usize>,
        rows: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        let c = remaining.len();
        let (diag, v, vinv) = if c == 0 {
            (vec![], IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
        } else {
            dense_snf(c, rows)
        };
        Ok(Self { ncols, subst, remaining, diag, v, vinv, ideals: None })
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Number of columns left after sparse elimination.
    pub fn dense_size(&self) -> usize {
        self.remaining.len()
    }

    pub fn free_rank(&self) -> usize {
        self.diag.iter().filter(|d| d.is_zero()).count()
    }

    /// Nontrivial finite invariants.
    pub fn invariants(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    /// Product of the finite invariants (the index when the free rank is 0).
    pub fn torsion_order(&self) -> BigInt {
        self.diag.iter().filter(|d| !d.is_zero()).product()
    }

    /// Indices of the diagonal entries that are neither 0 nor 1.
    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        self.diag.iter().enumerate().filter(|(_, d)| !d.is_zero() && !d.is_one()).map(|(i, _)| i)
    }

    /// Vector over the original generators representing the `i`-th SNF generator.
    pub fn generator_vector(&self, i: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ncols];
        for (j, &col) in self.remaining.iter().enumerate() {
            out[col] = self.vinv.get(i, j).clone();
        }
        out
    }

    /// Coordinates in the nontrivial invariants of the class of `v`.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = v.to_vec();
        for (c, row) in &self.subst {
            if w[*c].is_zero() {
                continue;
            }
            let f = w[*c].clone();
            for (j, a) in row {
                w[*j] -= &f * a;
            }
        }
        let r: Vec<BigInt> = self.remaining.iter().map(|&c| w[c].clone()).collect();
        let n = self.remaining.len();
        let mut out = Vec::new();
        for i in self.nontrivial() {
            let mut s = BigInt::zero();
            for (j, x) in r.iter().enumerate().take(n) {
                if !x.is_zero() {
                    s += x * self.v.get(j, i);
                }
            }
            out.push(s.mod_floor(&self.diag[i]));
        }
        out
    }

    /// Order of the class of a vector.
    pub fn order_of(&self, v: &[BigInt]) -> BigInt {
        let inv = self.invariants();
        self.coordinates(v).iter().zip(&inv).fold(BigInt::one(), |acc, (c, d)| {
            acc.lcm(&(d / c.gcd(d)))
        })
    }

    /// Integral ideal in the class of `v`: exponents are reduced modulo the
    /// order of each prime's class to make them non-negative.
    pub fn ideal_of(&self, v: &[BigInt]) -> Result<IdealHNF> {
        Ok(self.ideal_and_exponents(v)?.0)
    }

    /// As `ideal_of`, also returning the reduced exponent vector.
    pub fn ideal_and_exponents(&self, v: &[BigInt]) -> Result<(IdealHNF, Vec<BigInt>)> {
        let (k, ideals) = self
            .ideals
            .as_ref()
            .ok_or_else(|| IflError::InvalidInput("presentation has no ideals attached".into()))?;
        let mut acc = k.ideal_unit();
        let mut red = vec![BigInt::zero(); v.len()];
        for (j, e) in v.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let mut unit = vec![BigInt::zero(); self.ncols];
            unit[j] = BigInt::one();
            let ord = self.order_of(&unit);
            let e = e.mod_floor(&ord);
            if e.is_zero() {
                continue;
            }
            red[j] = e.clone();
            let e = e
                .to_u64()
                .ok_or_else(|| IflError::Budget("exponent too large".into()))?;
            acc = k.ideal_mul(&acc, &k.ideal_pow(&ideals[j], e)?)?;
        }
        Ok((acc, red))
    }
}

/// Structured Gaussian elimination with Markowitz-style choice of unit pivots.
#[allow(clippy::type_complexity)]
fn eliminate(
    ncols: usize,
    rels: &[SparseRow],
) -> (Vec<(usize, Vec<(usize, BigInt)>)>, Vec<usize>, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Option<Vec<(usize, i128)>>> = rels
        .iter()
        .map(|r| {
            let mut v: Vec<(usize, i128)> =
                r.iter().filter(|(_, a)| *a != 0).map(|&(c, a)| (c, a as i128)).collect();
            v.sort_unstable();
            (!v.is_empty()).then_some(v)
        })
        .collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for &(c, _) in r {
                col_rows[c].push(i);
            }
        }
    }
    let mut done = vec![false; ncols];
    let mut blocked = vec![false; ncols];
    let mut subst = Vec::new();
    loop {
        // clean column lists
        let mut best: Option<(usize, usize, usize)> = None; // cost, col, row
        for c in 0..ncols {
            if done[c] || blocked[c] {
                continue;
            }
            col_rows[c].retain(|&i| {
                rows[i].as_ref().is_some_and(|r| r.binary_search_by_key(&c, |x| x.0).is_ok())
            });
            col_rows[c].sort_unstable();
            col_rows[c].dedup();
            let count = col_rows[c].len();
            for &i in &col_rows[c] {
                let r = rows[i].as_ref().unwrap();
                let pos = r.binary_search_by_key(&c, |x| x.0).unwrap();
                if r[pos].1.abs() == 1 {
                    let cost = (r.len() - 1) * (count - 1);
                    if best.is_none_or(|(b, bc, bi)| (cost, c, i) < (b, bc, bi)) {
                        best = Some((cost, c, i));
                    }
                }
            }
        }
        let Some((_, c, piv)) = best else { break };
        let mut prow = rows[piv].take().unwrap();
        let s = prow[prow.binary_search_by_key(&c, |x| x.0).unwrap()].1;
        if s < 0 {
            for x in prow.iter_mut() {
                x.1 = -x.1;
            }
        }
        // trial update
        let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != piv).collect();
        let mut updated = Vec::new();
        let mut overflow = false;
        for &i in &targets {
            let r = rows[i].as_ref().unwrap();
            let f = r[r.binary_search_by_key(&c, |x| x.0).unwrap()].1;
            let nr = axpy_sparse(r, -f, &prow);
            if nr.iter().any(|x| x.1.abs() > LARGE) {
                overflow = true;
                break;
            }
            updated.push((i, nr));
        }
        if overflow {
            rows[piv] = Some(if s < 0 {
                prow.iter().map(|&(j, a)| (j, -a)).collect()
            } else {
                prow
            });
            blocked[c] = true;
            continue;
        }
        for (i, nr) in updated {
            for &(j, _) in &nr {
                col_rows[j].push(i);
            }
            rows[i] = (!nr.is_empty()).then_some(nr);
        }
        done[c] = true;
        subst.push((c, prow.iter().map(|&(j, a)| (j, BigInt::from(a))).collect()));
    }
    let remaining: Vec<usize> = (0..ncols).filter(|&c| !done[c]).collect();
    let mut index = vec![usize::MAX; ncols];
    for (j, &c) in remaining.iter().enumerate() {
        index[c] = j;
    }
    let dense: Vec<Vec<BigInt>> = rows
        .into_iter()
        .flatten()
        .map(|r| {
            let mut v = vec![BigInt::zero(); remaining.len()];
            for (c, a) in r {
                debug_assert!(index[c] != usize::MAX);
                v[index[c]] = BigInt::from(a);
            }
            v
        })
        .collect();
    (subst, remaining, dense)
}

fn axpy_sparse(r: &[(usize, i128)], f: i128, p: &[(usize, i128)]) -> Vec<(usize, i128)> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (c, a) = if j == p.len() || (i < r.len() && r[i].0 < p[j].0) {
            i += 1;
            r[i - 1]
        } else if i == r.len() || p[j].0 < r[i].0 {
            j += 1;
            (p[j - 1].0, f * p[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (r[i - 1].0, r[i - 1].1 + f * p[j - 1].1)
        };
        if a != 0 {
            out.push((c, a));
        }
    }
    out
}

/// Smith form of the lattice spanned by `rows` in `Z^c`, via a modular HNF
/// when the rank is full.
fn dense_snf(c: usize, rows: Vec<Vec<BigInt>>) -> (Vec<BigInt>, IntMatrix, IntMatrix) {
    let rows: Vec<Vec<BigInt>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let sel = independent_rows(&rows, c);
    let basis = if sel.len() == c {
        let sub = IntMatrix::from_rows(&sel.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>());
        let d = sub.det().abs();
        let h = IntMatrix::from_cols(&rows, c).hnf_mod(&d);
        h.transpose()
    } else if rows.is_empty() {
        IntMatrix::zeros(1, c)
    } else {
        IntMatrix::from_cols(&rows, c).hnf().transpose()
    };
    let s = Snf::compute(&basis, true);
    let mut diag = s.diagonal;
    diag.resize(c, BigInt::zero());
    (diag, s.v.unwrap(), s.vinv.unwrap())
}

/// Indices of a maximal set of rows independent modulo a large prime.
fn independent_rows(rows: &[Vec<BigInt>], c: usize) -> Vec<usize> {
    let p = RANK_PRIME;
    let bp = BigInt::from(p);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new(); // pivot col, reduced row
    let mut sel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut v: Vec<u64> = r.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect();
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for j in 0..c {
                    v[j] = (v[j] + p - mul_mod(f, b[j], p)) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = crate::kernel::int::pow_mod(v[pc], p - 2, p);
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            basis.push((pc, v));
            sel.push(i);
            if sel.len() == c {
                break;
            }
        }
    }
    sel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sparse_matches_dense() {
        // Z^4 / <(1,2,0,0), (0,3,0,0), (0,1,1,0), (0,0,2,4), (0,0,0,6)>
        let rels: Vec<SparseRow> = vec![
            vec![(0, 1), (1, 2)],
            vec![(1, 3)],
            vec![(1, 1), (2, 1)],
            vec![(2, 2), (3, 4)],
            vec![(3, 6)],
        ];
        let s = Presentation::sparse(4, &rels).unwrap();
        let mut dense = IntMatrix::zeros(5, 4);
        for (i, r) in rels.iter().enumerate() {
            for &(c, a) in r {
                dense.set(i, c, BigInt::from(a));
            }
        }
        let d = Presentation::dense(&dense).unwrap();
        assert_eq!(s.invariants(), d.invariants());
        assert_eq!(s.torsion_order(), BigInt::from(6));
        // dlog is a homomorphism that kills relations
        for r in &rels {
            let mut v = vec![BigInt::zero(); 4];
            for &(c, a) in r {
                v[c] = BigInt::from(a);
            }
            assert!(s.coordinates(&v).iter().all(|x| x.is_zero()));
        }
        let x = b(&[0, 0, 0, 1]);
        let y = b(&[0, 1, 0, 0]);
        let xy = b(&[0, 1, 0, 1]);
        let inv = s.invariants();
        let sum: Vec<BigInt> = s
            .coordinates(&x)
            .iter()
            .zip(s.coordinates(&y))
            .zip(&inv)
            .map(|((a, b), d)| (a + b).mod_floor(d))
            .collect();
        assert_eq!(sum, s.coordinates(&xy));
    }

    #[test]
    fn free_part_detected() {
        let s = Presentation::sparse(3, &[vec![(0, 1), (1, 1)], vec![(1, 2)]]).unwrap();
        assert_eq!(s.free_rank(), 1);
    }

    #[test]
    fn generators_have_invariant_order() {
        let rels: Vec<SparseRow> = vec![vec![(0, 4), (1, 2)], vec![(0, 2), (1, 6)], vec![(2, 5)]];
        let s = Presentation::sparse(3, &rels).unwrap();
        let inv = s.invariants();
        for (k, i) in s.nontrivial().enumerate() {
            let g = s.generator_vector(i);
            assert_eq!(s.order_of(&g), inv[k]);
        }
        assert_eq!(s.torsion_order(), BigInt::from(100));
    }
}
