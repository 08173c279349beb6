//! Fundamental units of rank-one fields, degree-one completions, `e(F)` and
//! orders of units in residue fields.

use crate::error::{IflError, Result};
use crate::field::primes::PrimeIdeal;
use crate::field::{FieldElement, NumberField};
use crate::kernel::int::factor;
use crate::kernel::padic::{lift_root, PadicNumber};
use crate::kernel::poly::IntPolynomial;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// How far a returned unit is known to be from fundamental.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitCertification {
    /// No proper root exists: the unit generates `E / torsion`.
    Fundamental,
    /// Index in the full unit group is at most this bound.
    IndexBound(u64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FundamentalUnit {
    pub element: FieldElement,
    /// `log |sigma(eps)|` at the normalising real place.
    pub regulator: f64,
    /// Absolute error bound on `regulator`.
    pub regulator_error: f64,
    /// Lower bound on the regulator used for certification.
    pub regulator_lower_bound: f64,
    pub certification: UnitCertification,
    pub method: String,
}

/// Unconditional lower bound for the regulator of a rank-one field.
pub fn regulator_lower_bound(k: &NumberField) -> Result<f64> {
    let d = k.discriminant().abs().to_f64().unwrap_or(f64::INFINITY);
    match (k.degree(), k.signature()) {
        (2, (2, 0)) => {
            // smallest unit (a + b sqrt d)/2 has b >= 1, a^2 >= d - 4
            Ok((((d - 4.0).max(0.0)).sqrt() + d.sqrt()).ln() - 2f64.ln())
        }
        (3, (1, 1)) => {
            // |d| < 4 eps^3 + 24; the global minimum is attained at d = -23
            let artin = if d > 28.0 { ((d - 24.0) / 4.0).ln() / 3.0 } else { 0.0 };
            Ok(artin.max(0.28))
        }
        _ => Err(IflError::Unsupported(
            "regulator bound only for real quadratic and complex cubic fields".into(),
        )),
    }
}

/// Index of the real place used for normalisation (largest real root).
fn norm_place(k: &NumberField) -> usize {
    k.signature().0 - 1
}

fn log_abs(k: &NumberField, u: &FieldElement) -> f64 {
    k.embed(u)[norm_place(k)].norm().ln()
}

/// `eps` or `1/eps`, sign adjusted, with `sigma(eps) > 1` at the normalising place.
fn normalize(k: &NumberField, u: &FieldElement) -> Result<FieldElement> {
    let z = k.embed(u)[norm_place(k)].re;
    let mut u = if z.abs() < 1.0 { k.inv(u)? } else { u.clone() };
    if k.embed(&u)[norm_place(k)].re < 0.0 {
        u = k.neg(&u);
    }
    Ok(u)
}

fn check_rank_one(k: &NumberField) -> Result<()> {
    if k.unit_rank() != 1 {
        return Err(IflError::InvalidInput(format!(
            "unit rank is {}, fundamental unit needs rank 1",
            k.unit_rank()
        )));
    }
    Ok(())
}

/// Fundamental unit. Real quadratic fields use the continued fraction; other
/// rank-one fields use the lattice search. Both routes are certified by
/// excluding proper roots below the regulator lower bound.
pub fn fundamental_unit(k: &NumberField) -> Result<FundamentalUnit> {
    check_rank_one(k)?;
    if k.degree() == 2 {
        fundamental_unit_cf(k)
    } else {
        fundamental_unit_search(k)
    }
}

/// Lattice route: sweep place weights so that the unit of the current size
/// has weighted norm about one at every place, enumerate short elements and
/// keep those of norm `+-1`.
pub fn fundamental_unit_search(k: &NumberField) -> Result<FundamentalUnit> {
    check_rank_one(k)?;
    let (r1, r2) = k.signature();
    let places = r1 + r2;
    let deg: Vec<f64> = (0..places).map(|i| if i < r1 { 1.0 } else { 2.0 }).collect();
    let p0 = norm_place(k);
    let other = 1 - p0;
    let ratio = deg[p0] / deg[other];
    let step = 0.5f64;
    let bound = places as f64 * (step * ratio.max(1.0)).exp() * (1.0 + 1e-6);
    let mut t = 0.0f64;
    let mut best: Option<(f64, FieldElement)> = None;
    let mut basis = k.ideal_int(&BigInt::one()).generators();
    for _ in 0..4000 {
        let mut w = vec![0.0; places];
        w[p0] = (-2.0 * t).exp();
        w[other] = (2.0 * t * ratio).exp();
        let lat = k.reduce_lattice(basis, &w)?;
        basis = lat.basis.clone();
        if let Some(cands) = k.short_elements(&lat, bound, 200_000) {
            for c in cands {
                if k.norm_coords(&c).abs() != BigInt::one() {
                    continue;
                }
                let u = FieldElement::integral(c);
                let l = log_abs(k, &u).abs();
                if l < 1e-9 {
                    continue;
                }
                if best.as_ref().is_none_or(|(b, _)| l < *b - 1e-9) {
                    best = Some((l, u));
                }
            }
        }
        if best.is_some() {
            break;
        }
        t += step;
    }
    let (_, u) = best.ok_or_else(|| IflError::Budget("no unit found in search region".into()))?;
    certify(k, &u, "lattice-search")
}

/// Continued-fraction route for real quadratic fields.
pub fn fundamental_unit_cf(k: &NumberField) -> Result<FundamentalUnit> {
    check_rank_one(k)?;
    if k.degree() != 2 {
        return Err(IflError::InvalidInput("continued fractions need a quadratic field".into()));
    }
    let d = k.discriminant().clone();
    let f = k.poly();
    let (b, c) = (f.coeff(1), f.coeff(0));
    // b^2 - 4c = d m^2, sqrt d = (2 theta + b) / m
    let m2: BigInt = (&b * &b - 4 * &c) / &d;
    let m = m2.sqrt();
    if &m * &m != m2 {
        return Err(IflError::Integrity("polynomial discriminant is not d times a square".into()));
    }
    let two_theta = k.scale(&k.elem_theta(), &BigInt::from(2).into());
    let sqrt_d = k.scale(
        &k.add(&two_theta, &FieldElement::integral(k.int_coords(&b))),
        &num_rational::BigRational::new(BigInt::one(), m),
    );
    // omega = (P0 + sqrt d) / 2 generates the maximal order
    let p0 = if d.is_odd() { BigInt::one() } else { BigInt::zero() };
    let omega = k.scale(
        &k.add(&FieldElement::integral(k.int_coords(&p0)), &sqrt_d),
        &num_rational::BigRational::new(BigInt::one(), BigInt::from(2)),
    );
    let sd = d.sqrt();
    let (mut pp, mut qq) = (p0.clone(), BigInt::from(2));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    for _ in 0..1_000_000 {
        let a = (&pp + &sd).div_floor(&qq);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        // candidate h - k omega
        let cand = k.sub(
            &FieldElement::integral(k.int_coords(&h1)),
            &k.scale(&omega, &k1.clone().into()),
        );
        if k.is_unit(&cand) && log_abs(k, &cand).abs() > 1e-9 {
            return certify(k, &cand, "continued-fraction");
        }
        pp = &a * &qq - &pp;
        qq = (&d - &pp * &pp) / &qq;
    }
    Err(IflError::Budget("continued fraction period too long".into()))
}

/// Remove proper roots of `u` up to the index allowed by the regulator bound.
fn certify(k: &NumberField, u: &FieldElement, method: &str) -> Result<FundamentalUnit> {
    let mut u = normalize(k, u)?;
    let lower = regulator_lower_bound(k)?;
    loop {
        let r = log_abs(k, &u);
        let max_index = (r / lower).floor() as u64;
        let mut reduced = false;
        for ell in crate::kernel::int::primes_up_to(max_index.max(1)) {
            if let Some(v) = kth_root(k, &u, ell as u32) {
                u = normalize(k, &v)?;
                reduced = true;
                break;
            }
        }
        if !reduced {
            break;
        }
    }
    let r = log_abs(k, &u);
    Ok(FundamentalUnit {
        element: u,
        regulator: r,
        regulator_error: r.abs() * 1e-12 + 1e-12,
        regulator_lower_bound: lower,
        certification: UnitCertification::Fundamental,
        method: method.into(),
    })
}

/// A unit `v` with `v^ell = +-u`, if one exists.
pub fn kth_root(k: &NumberField, u: &FieldElement, ell: u32) -> Option<FieldElement> {
    let (r1, r2) = k.signature();
    let z = k.embed(u);
    // candidate roots per place
    let mut per_place: Vec<Vec<Complex64>> = Vec::new();
    for sign in [1.0f64, -1.0] {
        per_place.clear();
        let mut ok = true;
        for (i, zi) in z.iter().enumerate() {
            let w = zi * sign;
            let mut opts = Vec::new();
            if i < r1 {
                let x = w.re;
                if ell % 2 == 1 {
                    opts.push(Complex64::new(x.signum() * x.abs().powf(1.0 / ell as f64), 0.0));
                } else if x > 0.0 {
                    let r = x.powf(1.0 / ell as f64);
                    opts.push(Complex64::new(r, 0.0));
                    opts.push(Complex64::new(-r, 0.0));
                } else {
                    ok = false;
                }
            } else {
                let r = w.norm().powf(1.0 / ell as f64);
                let a = w.arg() / ell as f64;
                for j in 0..ell {
                    let t = a + 2.0 * std::f64::consts::PI * j as f64 / ell as f64;
                    opts.push(Complex64::from_polar(r, t));
                }
            }
            per_place.push(opts);
        }
        if !ok || r1 + r2 != per_place.len() {
            continue;
        }
        let mut idx = vec![0usize; per_place.len()];
        loop {
            let target: Vec<Complex64> = idx.iter().zip(&per_place).map(|(&j, o)| o[j]).collect();
            if let Some(c) = k.coords_from_embeddings(&target) {
                let v = FieldElement::integral(c);
                if let Ok(p) = k.pow(&v, ell as i64) {
                    if p == *u || k.neg(&p) == *u {
                        return Some(v);
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == idx.len() {
                    break;
                }
                idx[i] += 1;
                if idx[i] < per_place[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
    }
    None
}

/// The completion of `K` at a prime with `e = f = 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PadicEmbedding {
    pub prime: PrimeIdeal,
    /// Image of the generator `theta` of the defining polynomial.
    pub root: PadicNumber,
    pub precision: u32,
    /// Images of the integral basis modulo `p^N`.
    pub images: Vec<BigInt>,
}

impl PadicEmbedding {
    pub fn p(&self) -> u64 {
        self.prime.p
    }

    /// Image of an integral element.
    pub fn map(&self, k: &NumberField, x: &[BigInt]) -> PadicNumber {
        let m = self.root.modulus();
        PadicNumber::new(self.prime.p, self.precision, &k.residue_map(&self.images, x, &m))
    }
}

/// Embedding at the unique degree-one prime above `p` (for `p = 3`), or the
/// one with the smallest root residue otherwise.
pub fn degree_one_prime_above_p(k: &NumberField, p: u64, prec: u32) -> Result<PadicEmbedding> {
    let primes: Vec<PrimeIdeal> =
        k.primes_above(p)?.into_iter().filter(|q| q.e == 1 && q.f == 1).collect();
    if primes.is_empty() {
        return Err(IflError::InvalidInput(format!("no prime of degree one above {p}")));
    }
    if primes.len() > 1 && p == 3 {
        return Err(IflError::InvalidInput(
            "several degree-one primes above 3; the choice is not canonical".into(),
        ));
    }
    let mut embs = primes
        .into_iter()
        .map(|q| embedding_at(k, q, prec))
        .collect::<Result<Vec<_>>>()?;
    embs.sort_by(|a, b| {
        let m = BigInt::from(p);
        a.root.residue().mod_floor(&m).cmp(&b.root.residue().mod_floor(&m))
    });
    Ok(embs.remove(0))
}

/// Embedding at a given degree-one prime, with consistency checks.
pub fn embedding_at(k: &NumberField, pr: PrimeIdeal, prec: u32) -> Result<PadicEmbedding> {
    let p = pr.p;
    let images = k.residue_images(&pr, prec)?;
    let m = BigInt::from(p).pow(prec);
    let root_val = k.residue_map(&images, &k.theta(), &m);
    let f = k.poly();
    if !f.eval(&root_val).mod_floor(&m).is_zero() {
        return Err(IflError::Integrity("residue image of theta is not a root".into()));
    }
    // Hensel cross-check when the residue is a simple root
    let df = f.derivative();
    let r0 = root_val.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    if !df.eval(&BigInt::from(r0)).mod_floor(&BigInt::from(p)).is_zero()
        && lift_root(f, &df, p, r0, prec).mod_floor(&m) != root_val
    {
        return Err(IflError::Integrity("Hensel lift disagrees with residue map".into()));
    }
    // valuation consistency on the second generator
    let g = PadicNumber::new(p, prec, &k.residue_map(&images, &pr.gen, &m));
    let exact = k.valuation(&pr, &pr.gen);
    if let (Some(a), Some(b)) = (g.valuation(), exact) {
        if a != b {
            return Err(IflError::Integrity("valuation mismatch at the chosen prime".into()));
        }
    } else if g.valuation().is_some() != exact.is_some_and(|v| v < prec) {
        return Err(IflError::Integrity("valuation mismatch at the chosen prime".into()));
    }
    Ok(PadicEmbedding {
        root: PadicNumber::new(p, prec, &root_val),
        precision: prec,
        images,
        prime: pr,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EInvariant {
    pub e: u32,
    /// Precision at which the p-adic reading was stable.
    pub precision: u32,
    pub unit: FieldElement,
}

pub const E_START_PRECISION: u32 = 8;

/// `e(F)`: the exponent with `eps^2 = 1 mod P^e` but not mod `P^(e+1)` at the
/// degree-one prime above 3. Computed by exact valuation and by the p-adic
/// embedding with precision doubling; both must agree.
pub fn e_of_f(k: &NumberField) -> Result<EInvariant> {
    if k.signature() != (1, 1) {
        return Err(IflError::InvalidInput("e(F) needs a complex cubic field".into()));
    }
    let eps = fundamental_unit(k)?.element;
    e_of_unit(k, &eps)
}

/// `e` for a given unit (any choice of sign or inverse gives the same value).
pub fn e_of_unit(k: &NumberField, eps: &FieldElement) -> Result<EInvariant> {
    let x = k.sub(&k.mul(eps, eps), &k.elem_from_int(1));
    if !x.is_integral() {
        return Err(IflError::InvalidInput("unit is not integral".into()));
    }
    let mut prec = E_START_PRECISION;
    let emb = degree_one_prime_above_p(k, 3, prec)?;
    let exact = k
        .valuation(&emb.prime, &x.num)
        .ok_or_else(|| IflError::InvalidInput("eps^2 = 1".into()))?;
    let mut emb = emb;
    for _ in 0..8 {
        let v = emb.map(k, &x.num).valuation();
        match v {
            Some(v) if v + 2 <= prec => {
                if v != exact {
                    return Err(IflError::Integrity(format!(
                        "p-adic valuation {v} disagrees with exact valuation {exact}"
                    )));
                }
                // stability: the doubled precision gives the same reading
                let e2 = embedding_at(k, emb.prime.clone(), 2 * prec)?;
                if e2.map(k, &x.num).valuation() != Some(v) {
                    return Err(IflError::Integrity("e(F) unstable under precision doubling".into()));
                }
                return Ok(EInvariant { e: v, precision: prec, unit: eps.clone() });
            }
            _ => {
                prec *= 2;
                emb = embedding_at(k, emb.prime.clone(), prec)?;
            }
        }
    }
    Err(IflError::Budget("precision exhausted computing e(F)".into()))
}

/// Multiplicative order of `u` in `(O / Q)^*`, lcm over the primes `Q` above `q`.
pub fn unit_order_mod_q(k: &NumberField, u: &FieldElement, q: u64) -> Result<BigInt> {
    let primes = k.primes_above(q)?;
    if primes.iter().any(|pr| pr.e > 1) {
        return Err(IflError::InvalidInput(format!("{q} ramifies")));
    }
    // u = a / d with q not dividing d
    let d = &u.den;
    if (d % q).is_zero() {
        return Err(IflError::InvalidInput("element is not q-integral".into()));
    }
    let dinv = BigInt::from(
        crate::kernel::int::inv_mod((d % q).to_i64().unwrap(), q as i64)
            .ok_or_else(|| IflError::InvalidInput("element is not q-integral".into()))?,
    );
    let bq = BigInt::from(q);
    let a: Vec<u64> =
        u.num.iter().map(|x| (x * &dinv).mod_floor(&bq).to_u64().unwrap()).collect();
    let tp = k.table_mod(q);
    let one = k.one_coords();
    let mut total = BigInt::one();
    for pr in &primes {
        let member = |e: &BigInt| -> bool {
            let v = k.pow_coords_mod(&tp, &a, e, q);
            let w: Vec<BigInt> =
                v.iter().zip(&one).map(|(x, o)| BigInt::from(*x) - o).collect();
            k.ideal_contains(&pr.ideal, &w)
        };
        if k.ideal_contains(&pr.ideal, &a.iter().map(|x| BigInt::from(*x)).collect::<Vec<_>>()) {
            return Err(IflError::InvalidInput("element is not coprime to q".into()));
        }
        let group = bq.pow(pr.f) - 1u32;
        let mut ord = group.clone();
        let fac = factor(&group)
            .ok_or_else(|| IflError::Computation("could not factor group order".into()))?;
        for (r, _) in fac {
            while (&ord % &r).is_zero() && member(&(&ord / &r)) {
                ord /= &r;
            }
        }
        if !member(&ord) {
            return Err(IflError::Integrity("order computation failed".into()));
        }
        total = total.lcm(&ord);
    }
    Ok(total)
}

/// Real quadratic field `Q(sqrt m)` for `m > 1` squarefree or a discriminant.
pub fn real_quadratic(m: i64) -> Result<NumberField> {
    if m <= 1 {
        return Err(IflError::InvalidInput("real quadratic needs m > 1".into()));
    }
    NumberField::from_polynomial(&IntPolynomial::from_i64(&[-m, 0, 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(k: &NumberField, s: &str) -> FieldElement {
        k.elem_from_poly(&IntPolynomial::parse(s).unwrap())
    }

    #[test]
    fn cube_root_two() {
        let k = NumberField::parse("x^3 - 2").unwrap();
        let fu = fundamental_unit(&k).unwrap();
        let u = elem(&k, "x - 1");
        let ui = k.inv(&u).unwrap();
        assert!(fu.element == ui || fu.element == u || fu.element == k.neg(&u));
        assert_eq!(fu.certification, UnitCertification::Fundamental);
        assert!((fu.regulator - 1.3468).abs() < 1e-3);
    }

    #[test]
    fn sqrt_two_both_routes() {
        let k = NumberField::parse("x^2 - 2").unwrap();
        let a = fundamental_unit_cf(&k).unwrap();
        let b = fundamental_unit_search(&k).unwrap();
        assert_eq!(a.element, elem(&k, "x + 1"));
        assert_eq!(a.element, b.element);
    }

    #[test]
    fn real_quadratic_routes_agree() {
        for m in [3, 5, 6, 7, 10, 13, 14, 19, 21, 22, 31, 46, 53, 61, 94] {
            let k = real_quadratic(m).unwrap();
            let a = fundamental_unit_cf(&k).unwrap();
            let b = fundamental_unit_search(&k).unwrap();
            assert_eq!(a.element, b.element, "m = {m}");
        }
    }

    #[test]
    fn rank_zero_errors() {
        let k = NumberField::parse("x^2 + 211").unwrap();
        assert!(fundamental_unit(&k).is_err());
    }

    #[test]
    fn padic_embedding() {
        let k = NumberField::parse("x^3 - x^2 - 39*x - 109").unwrap();
        let e = degree_one_prime_above_p(&k, 3, 8).unwrap();
        assert_eq!(e.root.residue().mod_floor(&BigInt::from(9)), BigInt::from(8));
        let q = NumberField::parse("x^2 + 211").unwrap();
        assert!(degree_one_prime_above_p(&q, 3, 8).is_err());
    }

    #[test]
    fn e_invariant() {
        let fs = crate::cubic::enumerate_cubic_fields(-211).unwrap();
        let ef = e_of_f(&fs[0].field).unwrap();
        assert_eq!(ef.e, 2);
        let inv = fs[0].field.inv(&ef.unit).unwrap();
        assert_eq!(e_of_unit(&fs[0].field, &inv).unwrap().e, 2);
        let fs = crate::cubic::enumerate_cubic_fields(-274).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(e_of_f(&fs[0].field).unwrap().e, 2);
    }

    #[test]
    fn orders_mod_q() {
        let k = real_quadratic(2).unwrap();
        let u = elem(&k, "x + 1");
        assert_eq!(unit_order_mod_q(&k, &u, 5).unwrap(), BigInt::from(12));
        assert_eq!(unit_order_mod_q(&k, &u, 11).unwrap(), BigInt::from(24));
        assert_eq!(unit_order_mod_q(&k, &k.elem_from_int(-1), 7).unwrap(), BigInt::from(2));
        assert!(unit_order_mod_q(&k, &elem(&k, "x"), 2).is_err());
    }
}
