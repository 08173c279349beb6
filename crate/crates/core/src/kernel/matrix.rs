//! Dense integer matrices with Hermite and Smith normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, BigInt::from(v));
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_cols(cols: &[Vec<BigInt>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact determinant (fraction-free Bareiss elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        hnf_rows_general(&self.row_vecs(), self.cols).len()
    }

    /// Column-style Hermite normal form: the columns of the result form a basis
    /// of the integer column span, upper triangular (echelon when rank-deficient)
    /// with positive pivots and entries right of each pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> IntMatrix {
        let rows = hnf_rows_general(&self.col_vecs(), self.rows);
        IntMatrix::from_cols(&rows, self.rows)
    }

    /// HNF of the lattice spanned by the columns together with `d * Z^rows`.
    /// `d` must be nonzero; the result is square and upper triangular.
    pub fn hnf_mod(&self, d: &BigInt) -> IntMatrix {
        let rows = hnf_rows_mod(&self.col_vecs(), self.rows, d);
        IntMatrix::from_cols(&rows, self.rows)
    }

    /// Smith invariants `d_1 | d_2 | ...` of the matrix (zeros for the free part
    /// are omitted; units are kept).
    pub fn snf_invariants(&self) -> Vec<BigInt> {
        let s = Snf::compute(self, false);
        s.diagonal.into_iter().filter(|d| !d.is_zero()).collect()
    }

    /// Integer solution of `H x = b` for square upper-triangular `H`, if any.
    pub fn solve_upper(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut x = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut s = b[i].clone();
            for j in i + 1..n {
                if !self.get(i, j).is_zero() {
                    s -= self.get(i, j) * &x[j];
                }
            }
            let p = self.get(i, i);
            if p.is_zero() {
                if !s.is_zero() {
                    return None;
                }
                continue;
            }
            let (q, r) = s.div_rem(p);
            if !r.is_zero() {
                return None;
            }
            x[i] = q;
        }
        Some(x)
    }

    /// Rational solution of `A x = b` for square nonsingular `A`.
    pub fn solve_rational(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = (0..n)
                    .map(|j| BigRational::from_integer(self.get(i, j).clone()))
                    .collect();
                r.push(b[i].clone());
                r
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            let inv = a[k][k].recip();
            for j in k..=n {
                let v = &a[k][j] * &inv;
                a[k][j] = v;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    for j in k..=n {
                        let v = &a[k][j] * &f;
                        a[i][j] -= v;
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n].clone()).collect())
    }

    /// Adjugate-style inverse: returns `(adj, det)` with `self * adj = det * I`.
    pub fn inverse_scaled(&self) -> (IntMatrix, BigInt) {
        let n = self.rows;
        let d = self.det();
        let mut adj = IntMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[j] = BigRational::one();
            let x = self.solve_rational(&e).expect("singular matrix");
            for i in 0..n {
                let v = &x[i] * BigRational::from_integer(d.clone());
                debug_assert!(v.is_integer());
                adj.set(i, j, v.to_integer());
            }
        }
        (adj, d)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// Row-echelon basis (as "pivot rows") of the Z-span of `gens` in `Z^dim`.
/// Pivot columns are processed from the last coordinate down, so the returned
/// vector `k` has its pivot at coordinate `piv[k]` and zeros beyond it; the output
/// is ordered by increasing pivot coordinate.
pub(crate) fn hnf_rows_general(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut pivots: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for c in (0..dim).rev() {
        loop {
            let mut best: Option<usize> = None;
            for (i, v) in work.iter().enumerate() {
                if !v[c].is_zero() && best.map_or(true, |b| v[c].abs() < work[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            let piv = work.swap_remove(b);
            let mut all_zero = true;
            for v in work.iter_mut() {
                if !v[c].is_zero() {
                    let q = v[c].div_floor(&piv[c]);
                    axpy(v, &q, &piv);
                    if !v[c].is_zero() {
                        all_zero = false;
                    }
                }
            }
            work.retain(|v| v.iter().any(|x| !x.is_zero()));
            if all_zero {
                let mut piv = piv;
                if piv[c].is_negative() {
                    for x in piv.iter_mut() {
                        *x = -&*x;
                    }
                }
                pivots.push((c, piv));
                break;
            }
            work.push(piv);
        }
    }
    reduce_pivots(&mut pivots);
    pivots.sort_by_key(|(c, _)| *c);
    pivots.into_iter().map(|(_, v)| v).collect()
}

/// Reduce entries of each pivot row at the other pivot coordinates.
fn reduce_pivots(pivots: &mut [(usize, Vec<BigInt>)]) {
    // pivots are stored with decreasing pivot coordinate
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(pivots[k].0));
    for (pos, &ki) in order.iter().enumerate() {
        let ci = pivots[ki].0;
        let prow = pivots[ki].1.clone();
        // rows whose pivot lies above ci (processed earlier) may have entries at ci
        for &kj in &order[..pos] {
            let q = pivots[kj].1[ci].div_floor(&prow[ci]);
            if !q.is_zero() {
                axpy(&mut pivots[kj].1, &q, &prow);
            }
        }
    }
}

/// Modular variant: Z-span of `gens` plus `d * Z^dim` (full rank).
pub(crate) fn hnf_rows_mod(gens: &[Vec<BigInt>], dim: usize, d: &BigInt) -> Vec<Vec<BigInt>> {
    let d = d.abs();
    assert!(!d.is_zero());
    let modv = |v: &mut Vec<BigInt>| {
        for x in v.iter_mut() {
            *x = x.mod_floor(&d);
        }
    };
    let mut work: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| {
            let mut v = v.clone();
            modv(&mut v);
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for c in (0..dim).rev() {
        let mut de = vec![BigInt::zero(); dim];
        de[c] = d.clone();
        work.push(de);
        loop {
            let mut best: Option<usize> = None;
            for (i, v) in work.iter().enumerate() {
                if !v[c].is_zero() && best.map_or(true, |b| v[c].abs() < work[b][c].abs()) {
                    best = Some(i);
                }
            }
            let b = best.expect("d*e_c keeps column nonzero");
            let piv = work.swap_remove(b);
            let mut all_zero = true;
            for v in work.iter_mut() {
                if !v[c].is_zero() {
                    let q = v[c].div_floor(&piv[c]);
                    axpy(v, &q, &piv);
                    // coordinates below c may be reduced mod d; coordinate c stays exact
                    for (k, x) in v.iter_mut().enumerate() {
                        if k != c {
                            *x = x.mod_floor(&d);
                        }
                    }
                    if !v[c].is_zero() {
                        all_zero = false;
                    }
                }
            }
            work.retain(|v| v.iter().any(|x| !x.is_zero()));
            if all_zero {
                let mut piv = piv;
                if piv[c].is_negative() {
                    for x in piv.iter_mut() {
                        *x = -&*x;
                    }
                }
                for (k, x) in piv.iter_mut().enumerate() {
                    if k < c {
                        *x = x.mod_floor(&d);
                    }
                }
                pivots.push((c, piv));
                break;
            }
            work.push(piv);
        }
    }
    reduce_pivots(&mut pivots);
    pivots.sort_by_key(|(c, _)| *c);
    pivots.into_iter().map(|(_, v)| v).collect()
}

/// Smith normal form with column transforms: `U * A * V = diag`, and
/// `vinv = V^{-1}`. Only the column side is tracked.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal entries (non-negative), length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub v: Option<IntMatrix>,
    pub vinv: Option<IntMatrix>,
}

impl Snf {
    pub fn compute(a: &IntMatrix, track: bool) -> Snf {
        let mut m = a.clone();
        let (r, c) = (m.rows, m.cols);
        let mut v = track.then(|| IntMatrix::identity(c));
        let mut vinv = track.then(|| IntMatrix::identity(c));
        let n = r.min(c);
        let mut t = 0;
        while t < n {
            // locate smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = m.get(i, j);
                    if !x.is_zero()
                        && best.map_or(true, |(bi, bj)| x.abs() < m.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap_rows(t, bi);
            m.swap_cols(t, bj);
            if let (Some(v), Some(vi)) = (v.as_mut(), vinv.as_mut()) {
                v.swap_cols(t, bj);
                vi.swap_rows(t, bj);
            }
            let mut clean = true;
            // eliminate column t below pivot (row ops, untracked)
            for i in t + 1..r {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = m.get(i, t).div_floor(m.get(t, t));
                for j in t..c {
                    let s = &q * m.get(t, j);
                    *m.get_mut(i, j) -= s;
                }
                if !m.get(i, t).is_zero() {
                    clean = false;
                }
            }
            // eliminate row t right of pivot (column ops, tracked)
            for j in t + 1..c {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = m.get(t, j).div_floor(m.get(t, t));
                for i in t..r {
                    let s = &q * m.get(i, t);
                    *m.get_mut(i, j) -= s;
                }
                if let (Some(v), Some(vi)) = (v.as_mut(), vinv.as_mut()) {
                    // col_j -= q col_t  => V col_j -= q V col_t ; Vinv row_t += q row_j
                    for i in 0..c {
                        let s = &q * v.get(i, t);
                        *v.get_mut(i, j) -= s;
                    }
                    for k in 0..c {
                        let s = &q * vi.get(j, k);
                        *vi.get_mut(t, k) += s;
                    }
                }
                if !m.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility condition
            let p = m.get(t, t).clone();
            let mut bad = None;
            'find: for i in t + 1..r {
                for j in t + 1..c {
                    if !(m.get(i, j) % &p).is_zero() {
                        bad = Some(i);
                        break 'find;
                    }
                }
            }
            if let Some(i) = bad {
                for j in t..c {
                    let s = m.get(i, j).clone();
                    *m.get_mut(t, j) += s;
                }
                continue;
            }
            if p.is_negative() {
                for i in t..r {
                    let s = -m.get(i, t);
                    m.set(i, t, s);
                }
                if let (Some(v), Some(vi)) = (v.as_mut(), vinv.as_mut()) {
                    for i in 0..c {
                        let s = -v.get(i, t);
                        v.set(i, t, s);
                    }
                    for k in 0..c {
                        let s = -vi.get(t, k);
                        vi.set(t, k, s);
                    }
                }
            }
            t += 1;
        }
        let diagonal = (0..n).map(|i| m.get(i, i).clone()).collect();
        Snf {
            diagonal,
            v,
            vinv,
        }
    }
}

/// Basis of the integer lattice `{x in Z^n : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    // column-reduce [A ; I]: columns whose A-part vanishes give the kernel
    let (r, c) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<BigInt>> = (0..c)
        .map(|j| {
            let mut v = a.col(j);
            v.extend((0..c).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let mut start = 0;
    for i in 0..r {
        loop {
            let mut best: Option<usize> = None;
            for (j, v) in cols.iter().enumerate().skip(start) {
                if !v[i].is_zero() && best.map_or(true, |b| v[i].abs() < cols[b][i].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            cols.swap(start, b);
            let piv = cols[start].clone();
            let mut done = true;
            for v in cols.iter_mut().skip(start + 1) {
                if !v[i].is_zero() {
                    let q = v[i].div_floor(&piv[i]);
                    axpy(v, &q, &piv);
                    if !v[i].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                start += 1;
                break;
            }
        }
    }
    cols.into_iter()
        .skip(start)
        .map(|v| v[r..].to_vec())
        .collect()
}

/// Row reduction modulo a prime; returns the reduced row basis.
pub fn row_basis_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut r0 = 0;
    for c in 0..ncols {
        let Some(pr) = (r0..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r0, pr);
        let inv = crate::kernel::int::pow_mod(m[r0][c], p - 2, p);
        for x in m[r0].iter_mut() {
            *x = crate::kernel::int::mul_mod(*x, inv, p);
        }
        for i in 0..m.len() {
            if i != r0 && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..ncols {
                    let s = crate::kernel::int::mul_mod(f, m[r0][j], p);
                    m[i][j] = (m[i][j] + p - s) % p;
                }
            }
        }
        r0 += 1;
    }
    for row in m.into_iter().take(r0) {
        out.push(row);
    }
    out
}

/// Kernel basis of the map `x -> x * M` (row vectors) modulo prime `p`,
/// where `m` has `n` rows.
pub fn left_kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let k = m.first().map_or(0, |r| r.len());
    // augment [M | I] and row reduce on the M part
    let mut aug: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut r: Vec<u64> = m[i].iter().map(|x| x % p).collect();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let mut r0 = 0;
    for c in 0..k {
        let Some(pr) = (r0..n).find(|&i| aug[i][c] != 0) else {
            continue;
        };
        aug.swap(r0, pr);
        let inv = crate::kernel::int::pow_mod(aug[r0][c], p - 2, p);
        for x in aug[r0].iter_mut() {
            *x = crate::kernel::int::mul_mod(*x, inv, p);
        }
        for i in 0..n {
            if i != r0 && aug[i][c] != 0 {
                let f = aug[i][c];
                for j in 0..k + n {
                    let s = crate::kernel::int::mul_mod(f, aug[r0][j], p);
                    aug[i][j] = (aug[i][j] + p - s) % p;
                }
            }
        }
        r0 += 1;
    }
    aug.into_iter().skip(r0).map(|r| r[k..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hnf_identity_and_det() {
        assert_eq!(m(&[&[1, 0], &[0, 1]]).hnf(), IntMatrix::identity(2));
        let h = m(&[&[4, 2], &[2, 2]]).hnf();
        assert_eq!(h.det().abs(), BigInt::from(4));
        assert!(h.get(1, 0).is_zero());
        assert_eq!(m(&[&[2, 3], &[0, 1]]).hnf(), m(&[&[2, 1], &[0, 1]]));
        assert_eq!(m(&[&[2, 1], &[0, 1]]).hnf(), m(&[&[2, 1], &[0, 1]]));
        assert_eq!(m(&[&[3, 1], &[0, 1]]).hnf(), m(&[&[3, 1], &[0, 1]]));
        assert_eq!(m(&[&[3, 1], &[1, 1]]).hnf(), m(&[&[2, 1], &[0, 1]]));
    }

    #[test]
    fn hnf_mod_matches_plain() {
        let a = m(&[&[6, 4, 9], &[2, 8, 1], &[0, 3, 5]]);
        let d = a.det().abs();
        assert_eq!(a.hnf(), a.hnf_mod(&d));
    }

    #[test]
    fn snf_small() {
        let inv = |a: IntMatrix| -> Vec<i64> {
            a.snf_invariants().iter().map(|x| x.try_into().unwrap()).collect()
        };
        assert_eq!(inv(IntMatrix::diagonal(&[2, 3])), vec![1, 6]);
        assert_eq!(inv(IntMatrix::diagonal(&[3, 3])), vec![3, 3]);
        assert_eq!(inv(IntMatrix::diagonal(&[12, 36])), vec![12, 36]);
        assert_eq!(inv(m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), vec![2, 6, 12]);
        assert_eq!(inv(m(&[&[-4, -2], &[-2, -1]])), vec![1]);
        assert!(inv(m(&[&[0]])).is_empty());
    }

    #[test]
    fn snf_transform_consistent() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16], &[1, 1, 1]]);
        let s = Snf::compute(&a, true);
        let v = s.v.unwrap();
        let vi = s.vinv.unwrap();
        assert_eq!(v.mul(&vi), IntMatrix::identity(3));
    }

    #[test]
    fn kernel_basic() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn modp_kernel() {
        let m = vec![vec![1, 2], vec![2, 4], vec![0, 1]];
        let k = left_kernel_mod_p(&m, 5);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for c in 0..2 {
            let s: u64 = (0..3).map(|i| v[i] * m[i][c]).sum();
            assert_eq!(s % 5, 0);
        }
    }
}
