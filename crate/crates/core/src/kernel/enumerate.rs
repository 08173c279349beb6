//! Fincke-Pohst enumeration of short lattice vectors.

/// Cholesky-style decomposition `Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`.
fn decompose(gram: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = gram.len();
    let mut q: Vec<Vec<f64>> = gram.to_vec();
    for i in 0..n {
        if q[i][i] <= 0.0 {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    Some(q)
}

/// All nonzero integer vectors `x` with `x^T G x <= bound` (up to sign: only one
/// of `x`, `-x` is returned). A small relative slack is added so that rounding
/// never drops a solution; callers confirm candidates exactly.
///
/// Returns `None` when `G` is not positive definite or when more than `limit`
/// vectors would be produced.
pub fn fincke_pohst(gram: &[Vec<f64>], bound: f64, limit: usize) -> Option<Vec<Vec<i64>>> {
    let n = gram.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let q = decompose(gram)?;
    let c = bound * (1.0 + 1e-9) + 1e-9;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let mut t = vec![0.0f64; n + 1];
    let mut ctr = vec![0.0f64; n];
    let mut upper = vec![0i64; n];
    t[n] = c;
    let mut i = n - 1;
    // initialise level i
    let init = |i: usize, x: &mut [i64], t: &[f64], ctr: &mut [f64], upper: &mut [i64]| {
        let mut s = 0.0;
        for j in i + 1..x.len() {
            s += q[i][j] * x[j] as f64;
        }
        ctr[i] = -s;
        let r = (t[i + 1] / q[i][i]).max(0.0).sqrt();
        upper[i] = (ctr[i] + r).floor() as i64;
        x[i] = (ctr[i] - r).ceil() as i64 - 1;
    };
    init(i, &mut x, &t, &mut ctr, &mut upper);
    loop {
        x[i] += 1;
        if x[i] > upper[i] {
            if i == n - 1 {
                break;
            }
            i += 1;
            continue;
        }
        let d = x[i] as f64 - ctr[i];
        t[i] = t[i + 1] - q[i][i] * d * d;
        if i == 0 {
            if x.iter().all(|&v| v == 0) {
                continue;
            }
            // keep one representative of +-x: first nonzero from the top positive
            let lead = x.iter().rev().find(|&&v| v != 0).copied().unwrap_or(0);
            if lead > 0 {
                out.push(x.clone());
                if out.len() > limit {
                    return None;
                }
            }
        } else {
            i -= 1;
            init(i, &mut x, &t, &mut ctr, &mut upper);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_z2_points() {
        let g = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        // x^2 + y^2 <= 5: 20 nonzero points, 10 up to sign
        let v = fincke_pohst(&g, 5.0, 1000).unwrap();
        assert_eq!(v.len(), 10);
    }

    #[test]
    fn hexagonal_form() {
        let g = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let v = fincke_pohst(&g, 2.0, 1000).unwrap();
        assert_eq!(v.len(), 3);
    }
}
