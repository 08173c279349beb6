//! Lattice reduction: exact integral LLL and a floating variant with exact transforms.

use crate::error::{IflError, Result};
use crate::kernel::int::round_div;
use crate::kernel::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Lovasz constant used everywhere: 99/100.
pub const DELTA_NUM: i64 = 99;
pub const DELTA_DEN: i64 = 100;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integral LLL on a positive definite Gram matrix. Returns the unimodular
/// transform `U` (rows are coefficient vectors of the reduced basis).
pub fn lll_gram(gram: &IntMatrix) -> Result<IntMatrix> {
    let n = gram.rows();
    if gram.cols() != n {
        return Err(IflError::InvalidInput("Gram matrix not square".into()));
    }
    let mut h: Vec<Vec<BigInt>> = IntMatrix::identity(n).row_vecs();
    if n == 0 {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let g = |h: &Vec<Vec<BigInt>>, i: usize, j: usize| -> BigInt {
        let gj = gram.mul_vec(&h[j]);
        dot(&h[i], &gj)
    };
    let mut d: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut lam: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::from(1);
    d[1] = g(&h, 0, 0);
    if !d[1].is_positive() {
        return Err(IflError::InvalidInput("Gram matrix not positive definite".into()));
    }
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = g(&h, k, j);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if !u.is_positive() {
                        return Err(IflError::InvalidInput(
                            "Gram matrix not positive definite".into(),
                        ));
                    }
                    d[k + 1] = u;
                }
            }
        }
        red(&mut h, &mut lam, &d, k, k - 1);
        let lhs = BigInt::from(DELTA_DEN) * &d[k + 1] * &d[k - 1];
        let rhs = BigInt::from(DELTA_NUM) * &d[k] * &d[k]
            - BigInt::from(DELTA_DEN) * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            // swap k, k-1
            h.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = b;
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k - 1).rev() {
                red(&mut h, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    Ok(IntMatrix::from_rows(&h))
}

fn red(h: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    let two_l: BigInt = &lam[k][l] * 2;
    if two_l.abs() > d[l + 1] {
        let q = round_div(&lam[k][l], &d[l + 1]);
        let hl = h[l].clone();
        for (x, y) in h[k].iter_mut().zip(&hl) {
            *x -= &q * y;
        }
        let s = &q * &d[l + 1];
        lam[k][l] -= s;
        for i in 0..l {
            let s = &q * &lam[l][i];
            lam[k][i] -= s;
        }
    }
}

/// LLL-reduce the rows of `basis` under the standard inner product.
pub fn lll(basis: &IntMatrix) -> Result<IntMatrix> {
    let gram = basis.mul(&basis.transpose());
    let u = lll_gram(&gram)?;
    Ok(u.mul(basis))
}

/// LLL-reduce the rows of `basis` under the quadratic form `gram` on the
/// ambient space (`gram` is `cols x cols`, positive definite).
pub fn lll_reduce(basis: &IntMatrix, gram: &IntMatrix) -> Result<IntMatrix> {
    if gram.rows() != basis.cols() || gram.cols() != basis.cols() {
        return Err(IflError::InvalidInput("Gram matrix has wrong size".into()));
    }
    let g = basis.mul(gram).mul(&basis.transpose());
    let u = lll_gram(&g)?;
    Ok(u.mul(basis))
}

/// Check the size-reduction and Lovasz conditions exactly (rational arithmetic).
pub fn is_lll_reduced(basis: &IntMatrix) -> bool {
    use num_rational::BigRational;
    let n = basis.rows();
    let rows: Vec<Vec<BigRational>> = basis
        .row_vecs()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let dotq = |a: &[BigRational], b: &[BigRational]| -> BigRational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    let mut bstar: Vec<Vec<BigRational>> = Vec::new();
    let mut bb: Vec<BigRational> = Vec::new();
    let half = BigRational::new(1.into(), 2.into());
    let delta = BigRational::new(DELTA_NUM.into(), DELTA_DEN.into());
    for i in 0..n {
        let mut v = rows[i].clone();
        let mut mus = Vec::new();
        for j in 0..i {
            let mu = dotq(&rows[i], &bstar[j]) / &bb[j];
            if mu.abs() > half {
                return false;
            }
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= &mu * y;
            }
            mus.push(mu);
        }
        let b = dotq(&v, &v);
        if i > 0 {
            let mu = &mus[i - 1];
            if b < (&delta - mu * mu) * &bb[i - 1] {
                return false;
            }
        }
        bstar.push(v);
        bb.push(b);
    }
    true
}

/// Floating LLL on real row vectors `b`. Returns the integer transform `U`
/// with `U * B` reduced; only `U` is meaningful exactly.
pub fn lll_f64(b: &[Vec<f64>]) -> Result<Vec<Vec<i64>>> {
    let n = b.len();
    let mut b: Vec<Vec<f64>> = b.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n <= 1 {
        return Ok(u);
    }
    let delta = DELTA_NUM as f64 / DELTA_DEN as f64;
    let fdot = |x: &[f64], y: &[f64]| -> f64 { x.iter().zip(y).map(|(a, b)| a * b).sum() };
    let m = b[0].len();
    let mut bstar: Vec<Vec<f64>> = vec![vec![0.0; m]; n];
    let mut bn: Vec<f64> = vec![0.0; n];
    let mut mu: Vec<Vec<f64>> = vec![vec![0.0; n]; n];
    bstar[0] = b[0].clone();
    bn[0] = fdot(&b[0], &b[0]);
    if bn[0] <= 0.0 {
        return Err(IflError::Computation("zero vector in floating LLL".into()));
    }
    let mut k = 1;
    let mut iters = 0u64;
    while k < n {
        iters += 1;
        if iters > 1_000_000 {
            return Err(IflError::Computation("floating LLL did not converge".into()));
        }
        // size reduction with recomputation when large quotients occur
        loop {
            for j in 0..k {
                mu[k][j] = fdot(&b[k], &bstar[j]) / bn[j];
            }
            let mut big = false;
            for j in (0..k).rev() {
                let q = mu[k][j].round();
                if q != 0.0 {
                    if q.abs() > 1e15 {
                        return Err(IflError::Computation("floating LLL overflow".into()));
                    }
                    if q.abs() > (1u64 << 26) as f64 {
                        big = true;
                    }
                    let qi = q as i64;
                    let (bj, uj) = (b[j].clone(), u[j].clone());
                    for (x, y) in b[k].iter_mut().zip(&bj) {
                        *x -= q * y;
                    }
                    for (x, y) in u[k].iter_mut().zip(&uj) {
                        *x = x
                            .checked_sub(qi.checked_mul(*y).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                    for i in 0..j {
                        mu[k][i] -= q * mu[j][i];
                    }
                    mu[k][j] -= q;
                }
            }
            if !big {
                break;
            }
        }
        let mut v = b[k].clone();
        for j in 0..k {
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= mu[k][j] * y;
            }
        }
        let bk = fdot(&v, &v);
        if bk < (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1] {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = k.saturating_sub(1).max(1);
            if k == 1 {
                bstar[0] = b[0].clone();
                bn[0] = fdot(&b[0], &b[0]);
            }
        } else {
            if bk <= 1e-300 {
                return Err(IflError::Computation("dependent vectors in floating LLL".into()));
            }
            bstar[k] = v;
            bn[k] = bk;
            k += 1;
        }
    }
    Ok(u)
}

fn overflow() -> IflError {
    IflError::Computation("integer overflow in floating LLL transform".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_classic_example() {
        let b = IntMatrix::from_rows(&[vec![1i64, 1, 1], vec![-1, 0, 2], vec![3, 5, 6]]);
        let r = lll(&b).unwrap();
        assert!(is_lll_reduced(&r));
        assert_eq!(r.det().abs(), b.det().abs());
    }

    #[test]
    fn two_dim_and_orthogonal() {
        let b = IntMatrix::from_rows(&[vec![1i64, 0], vec![4, 1]]);
        let r = lll(&b).unwrap();
        assert!(r.row_vecs().contains(&vec![1.into(), 0.into()]));
        let o = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]);
        assert_eq!(lll(&o).unwrap(), o);
        let neg = IntMatrix::from_rows(&[vec![1i64, 0], vec![0, -1]]);
        assert!(lll_reduce(&o, &neg).is_err());
    }

    #[test]
    fn rejects_dependent() {
        let b = IntMatrix::from_rows(&[vec![1i64, 2], vec![2, 4]]);
        assert!(lll(&b).is_err());
    }

    #[test]
    fn float_variant_gives_unimodular() {
        let rows = vec![vec![201.0, 37.0], vec![1648.0, 297.0]];
        let u = lll_f64(&rows).unwrap();
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        assert_eq!(det.abs(), 1);
        let b = IntMatrix::from_rows(&[vec![201i64, 37], vec![1648, 297]]);
        let um = IntMatrix::from_rows(&u);
        assert!(is_lll_reduced(&um.mul(&b)));
    }
}
