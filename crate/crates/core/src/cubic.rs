//! Cubic fields of a given negative discriminant via binary cubic forms, and
//! layers of the cyclotomic Z_3-tower over them.

use crate::error::{IflError, Result};
use crate::field::compositum::Compositum;
use crate::field::primes::PrimeIdeal;
use crate::field::NumberField;
use crate::kernel::int::{normalize_quadratic_discriminant, primes_up_to};
use crate::kernel::poly::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// `a x^3 + b x^2 y + c x y^2 + d y^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinaryCubicForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl BinaryCubicForm {
    pub fn discriminant(&self) -> i128 {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c - 27 * a * a * d * d
    }

    /// Monic polynomial `x^3 + b x^2 + a c x + a^2 d` whose root is `a` times a
    /// root of `f(x, 1)`.
    pub fn monic_polynomial(&self) -> IntPolynomial {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        IntPolynomial::from_i64(&[a * a * d, a * c, b, 1])
    }

    pub fn is_irreducible(&self) -> bool {
        self.a != 0 && self.d != 0 && self.monic_polynomial().rational_roots().is_empty()
    }
}

/// Irreducible forms of discriminant `disc < 0` with `a > 0`, normalised so
/// that the real root of `f(x, 1)` is reduced modulo translation. Every
/// GL_2(Z)-class has at least one representative in the output.
pub fn enumerate_forms(disc: i64) -> Vec<BinaryCubicForm> {
    assert!(disc < 0);
    let big_a = disc.unsigned_abs() as f64;
    let amax = (16.0 * big_a / 27.0).powf(0.25) as i64 + 1;
    let root = (big_a / 3.0).powf(0.25);
    let mut out = Vec::new();
    for a in 1..=amax {
        if 27 * (a as i128).pow(4) > 16 * disc.unsigned_abs() as i128 {
            break;
        }
        let bmax = (1.5 * a as f64 + root) as i64 + 1;
        let tmax = (16.0 * big_a / (27.0 * (a as f64).powi(4))).cbrt();
        let rmax = 0.5 + root / a as f64;
        let cmax = (a as f64 * (tmax + rmax)) as i64 + 1;
        for b in -bmax..=bmax {
            for c in -cmax..=cmax {
                // -27 a^2 d^2 + (18abc - 4b^3) d + (b^2 c^2 - 4 a c^3 - D) = 0
                let (ai, bi, ci) = (a as i128, b as i128, c as i128);
                let qa = -27 * ai * ai;
                let qb = 18 * ai * bi * ci - 4 * bi * bi * bi;
                let qc = bi * bi * ci * ci - 4 * ai * ci * ci * ci - disc as i128;
                let dl = qb * qb - 4 * qa * qc;
                if dl < 0 {
                    continue;
                }
                let s = dl.sqrt();
                if s * s != dl {
                    continue;
                }
                for sg in [s, -s] {
                    let num = -qb + sg;
                    if num % (2 * qa) != 0 {
                        continue;
                    }
                    let d = (num / (2 * qa)) as i64;
                    let f = BinaryCubicForm { a, b, c, d };
                    if f.discriminant() == disc as i128 && f.is_irreducible() {
                        out.push(f);
                    }
                    if s == 0 {
                        break;
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A cubic field found by enumeration, with the form it came from.
#[derive(Clone, Debug)]
pub struct CubicField {
    pub form: BinaryCubicForm,
    pub field: NumberField,
}

/// Splitting types of the first primes (from the maximal order, so valid at
/// index divisors too).
fn fingerprint(k: &NumberField, count: usize) -> Result<Vec<Vec<(u32, u32)>>> {
    primes_up_to(1000)
        .into_iter()
        .take(count)
        .map(|p| {
            Ok(k.primes_above(p)?
                .iter()
                .map(|q| (q.e, q.f))
                .collect())
        })
        .collect()
}

/// A root of `g` in `k` (both cubic with one real place), found from the
/// embeddings and verified exactly.
pub fn root_in_field(k: &NumberField, g: &IntPolynomial) -> Option<Vec<BigInt>> {
    use crate::field::embed::ordered_embeddings;
    let (groots, gr1) = ordered_embeddings(g);
    if k.degree() != 3 || g.deg() != 3 || k.signature().0 != 1 || gr1 != 1 {
        return None;
    }
    let emb = k.basis_embeddings();
    let real = groots[0].re;
    let cz = groots[1].z();
    for z in [cz, cz.conj()] {
        // rows: real place, Re and Im of the complex place
        let mut m = [[0.0f64; 4]; 3];
        for j in 0..3 {
            m[0][j] = emb[j][0].re;
            m[1][j] = emb[j][1].re;
            m[2][j] = emb[j][1].im;
        }
        m[0][3] = real;
        m[1][3] = z.re;
        m[2][3] = z.im;
        let sol = solve3(m)?;
        let c: Vec<BigInt> = sol.iter().map(|x| BigInt::from(x.round() as i64)).collect();
        // exact check g(c) = 0
        let mut acc = vec![BigInt::zero(); 3];
        for coef in g.coeffs().iter().rev() {
            acc = k.mul_coords(&acc, &c);
            acc[0] += coef;
        }
        if acc.iter().all(Zero::is_zero) {
            return Some(c);
        }
    }
    None
}

fn solve3(mut m: [[f64; 4]; 3]) -> Option<[f64; 3]> {
    for k in 0..3 {
        let p = (k..3).max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap())?;
        if m[p][k].abs() < 1e-300 {
            return None;
        }
        m.swap(k, p);
        for i in 0..3 {
            if i != k {
                let f = m[i][k] / m[k][k];
                for j in k..4 {
                    m[i][j] -= f * m[k][j];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Whether two cubic fields are isomorphic: splitting fingerprints first,
/// then an exact root of one polynomial in the other field.
pub fn cubic_isomorphic(a: &NumberField, b: &NumberField) -> Result<bool> {
    if a.discriminant() != b.discriminant() {
        return Ok(false);
    }
    if fingerprint(a, 20)? != fingerprint(b, 20)? {
        return Ok(false);
    }
    if root_in_field(b, a.poly()).is_some() {
        return Ok(true);
    }
    Err(IflError::Computation(format!(
        "could not decide isomorphism of {} and {}",
        a.poly(),
        b.poly()
    )))
}

/// All cubic fields of discriminant `disc` (up to isomorphism), one per
/// class, in lexicographic order of the representative form. Accepts a
/// fundamental discriminant or a squarefree radicand (normalised).
pub fn enumerate_cubic_fields(disc: i64) -> Result<Vec<CubicField>> {
    let d = normalize_quadratic_discriminant(disc).ok_or_else(|| {
        IflError::InvalidInput(format!("{disc} is not a fundamental discriminant"))
    })?;
    if d > 0 {
        return Err(IflError::Unsupported("positive discriminants".into()));
    }
    let forms = enumerate_forms(d);
    let target = BigInt::from(d);
    let mut candidates: Vec<CubicField> = Vec::new();
    for f in forms {
        let field = NumberField::from_polynomial(&f.monic_polynomial())?;
        if field.discriminant() != &target {
            continue;
        }
        candidates.push(CubicField { form: f, field });
    }
    // smallest-height representative per class
    candidates.sort_by_key(|c| {
        let f = c.form;
        (f.a, f.b.abs().max(f.c.abs()).max(f.d.abs()), f)
    });
    let mut reps: Vec<CubicField> = Vec::new();
    for c in candidates {
        let mut seen = false;
        for r in &reps {
            if cubic_isomorphic(&r.field, &c.field)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(c);
        }
    }
    reps.sort_by_key(|c| c.form);
    Ok(reps)
}

/// `#fields = (3^r - 1) / 2` with `r` the 3-rank of the class group.
pub fn hasse_count_check(count: usize, three_rank: u32) -> bool {
    (3usize.pow(three_rank) - 1) / 2 == count
}

/// Defining polynomial of the first layer of the cyclotomic Z_3-extension of Q.
pub fn b1_polynomial() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, -3, 0, 1])
}

/// The field `F_n = F B_n` with its primes above `p`.
#[derive(Clone, Debug)]
pub struct TowerLayer {
    pub level: u32,
    pub p: u64,
    pub field: NumberField,
    pub primes: Vec<PrimeIdeal>,
    /// For `n = 1`: the embedding data of `F` and `B_1` in `F_1`.
    pub compositum: Option<Compositum>,
}

pub const MAX_LAYER_DEGREE: usize = 9;

pub fn layer_field(f: &NumberField, n: u32, p: u64) -> Result<TowerLayer> {
    if p != 3 {
        return Err(IflError::Unsupported("tower layers are implemented for p = 3".into()));
    }
    match n {
        0 => Ok(TowerLayer {
            level: 0,
            p,
            field: f.clone(),
            primes: f.primes_above(p)?,
            compositum: None,
        }),
        1 => {
            if f.degree() * 3 > MAX_LAYER_DEGREE {
                return Err(IflError::Unsupported("layer degree exceeds 9".into()));
            }
            let b1 = NumberField::from_polynomial(&b1_polynomial())?;
            let c = Compositum::new(f, &b1)?;
            let primes = c.field.primes_above(p)?;
            Ok(TowerLayer {
                level: 1,
                p,
                field: c.field.clone(),
                primes,
                compositum: Some(c),
            })
        }
        _ => Err(IflError::Unsupported(format!(
            "level {n} exceeds the degree-9 cap"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_discriminant() {
        let f = BinaryCubicForm { a: 1, b: -1, c: -39, d: -109 };
        assert_eq!(f.discriminant(), -158944);
        assert!(f.is_irreducible());
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(enumerate_cubic_fields(-211).unwrap().len(), 1);
        assert_eq!(enumerate_cubic_fields(-4).unwrap().len(), 0);
        assert_eq!(enumerate_cubic_fields(-23).unwrap().len(), 1);
        let fs = enumerate_cubic_fields(-211).unwrap();
        assert_eq!(fs[0].field.discriminant(), &BigInt::from(-211));
        assert!(enumerate_cubic_fields(-12).is_err());
    }

    #[test]
    fn four_fields_of_minus_9934() {
        let fs = enumerate_cubic_fields(-9934).unwrap();
        assert_eq!(fs.len(), 4);
        let k = NumberField::parse("x^3 - x^2 - 39x - 109").unwrap();
        let hits = fs
            .iter()
            .filter(|c| cubic_isomorphic(&c.field, &k).unwrap())
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn tower_layer_primes() {
        let f = &enumerate_cubic_fields(-211).unwrap()[0].field;
        let l0 = layer_field(f, 0, 3).unwrap();
        let shape: Vec<(u32, u32)> = l0.primes.iter().map(|q| (q.e, q.f)).collect();
        assert_eq!(shape, vec![(1, 1), (1, 2)]);
        let l1 = layer_field(f, 1, 3).unwrap();
        assert_eq!(l1.field.degree(), 9);
        let shape: Vec<(u32, u32)> = l1.primes.iter().map(|q| (q.e, q.f)).collect();
        assert_eq!(shape, vec![(3, 1), (3, 2)]);
        assert!(layer_field(f, 2, 3).is_err());
    }
}
