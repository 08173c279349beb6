//! Abelian pro-p groups with restricted ramification over real quadratic
//! fields at finite level, from the exact sequence
//!
//!   E(k) (x) Z_p -> sum_{q in S} R(q) -> X_S(k) -> A(k) -> 0,
//!
//! where `R(q)` is the Sylow-p subgroup of `(O / q O)^*`.

use crate::classgroup::{general_class_group, AbelianGroupSNF, ClassGroupOptions};
use crate::error::{IflError, Result};
use crate::field::primes::PrimeIdeal;
use crate::field::{FieldElement, NumberField};
use crate::kernel::int::{factor_u64, inv_mod, is_prime_u64, valuation};
use crate::kernel::matrix::IntMatrix;
use crate::units::fundamental_unit;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `O / Q` for one prime `Q`, elements as integral-basis coordinates mod `q`.
struct Residue<'a> {
    k: &'a NumberField,
    pr: &'a PrimeIdeal,
    table: Vec<u64>,
    q: u64,
    order: u64,
}

impl<'a> Residue<'a> {
    fn new(k: &'a NumberField, pr: &'a PrimeIdeal) -> Result<Self> {
        let q = pr.p;
        let order = q
            .checked_pow(pr.f)
            .filter(|&x| x <= 1 << 20)
            .ok_or_else(|| IflError::Unsupported("residue field too large".into()))?
            - 1;
        Ok(Self { k, pr, table: k.table_mod(q), q, order })
    }

    fn is_one(&self, x: &[u64]) -> bool {
        let one = self.k.one_coords();
        let w: Vec<BigInt> = x.iter().zip(&one).map(|(a, o)| BigInt::from(*a) - o).collect();
        self.k.ideal_contains(&self.pr.ideal, &w)
    }

    fn is_zero(&self, x: &[u64]) -> bool {
        let w: Vec<BigInt> = x.iter().map(|a| BigInt::from(*a)).collect();
        self.k.ideal_contains(&self.pr.ideal, &w)
    }

    fn pow(&self, x: &[u64], e: u64) -> Vec<u64> {
        self.k.pow_coords_mod(&self.table, x, &BigInt::from(e), self.q)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.k.mul_coords_mod(&self.table, a, b, self.q)
    }

    fn reduce(&self, u: &FieldElement) -> Result<Vec<u64>> {
        let q = self.q as i64;
        let d = (&u.den % self.q).to_i64().unwrap();
        let dinv = inv_mod(d, q)
            .ok_or_else(|| IflError::InvalidInput("element is not integral at q".into()))?;
        let bq = BigInt::from(self.q);
        Ok(u.num.iter().map(|x| (x * dinv).mod_floor(&bq).to_u64().unwrap()).collect())
    }

    fn element_order(&self, x: &[u64]) -> u64 {
        let mut ord = self.order;
        for (r, _) in factor_u64(self.order) {
            while ord % r == 0 && self.is_one(&self.pow(x, ord / r)) {
                ord /= r;
            }
        }
        ord
    }

    /// A generator of the cyclic group `(O / Q)^*`, by exhaustive search.
    fn generator(&self) -> Vec<u64> {
        let n = self.k.degree();
        let mut x = vec![0u64; n];
        loop {
            // next vector in lexicographic order
            let mut i = 0;
            while i < n {
                x[i] += 1;
                if x[i] < self.q {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
            assert!(i < n, "residue field has no generator");
            if !self.is_zero(&x) && self.element_order(&x) == self.order {
                return x;
            }
        }
    }
}

/// Sylow-p part of `(O / Q)^*` with the images of the units.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalData {
    pub q: u64,
    pub f: u32,
    /// `|R(Q)|`, a power of `p`.
    pub order: u64,
    /// Exponent of `-1` and of `eps` with respect to a generator of `R(Q)`.
    pub unit_images: Vec<u64>,
    pub eps_order: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RayData {
    pub field: String,
    pub primes: Vec<u64>,
    pub p: u64,
    pub local: Vec<LocalData>,
    pub class_number: BigInt,
    pub unit: String,
}

fn local_data(k: &NumberField, pr: &PrimeIdeal, p: u64, units: &[FieldElement]) -> Result<LocalData> {
    let r = Residue::new(k, pr)?;
    let pk = p.pow(valuation(&BigInt::from(r.order), p));
    let m = r.order / pk;
    let mut images = Vec::new();
    let mut eps_order = 0;
    if pk > 1 {
        let g = r.pow(&r.generator(), m);
        for u in units {
            let x = r.pow(&r.reduce(u)?, m);
            let mut h = k.one_coords().iter().map(|c| c.to_u64().unwrap()).collect::<Vec<_>>();
            let mut e = None;
            for i in 0..pk {
                if r.is_one(&r.mul(&x, &inv_pow(&r, &h))) {
                    e = Some(i);
                    break;
                }
                h = r.mul(&h, &g);
            }
            images.push(e.ok_or_else(|| IflError::Integrity("discrete log failed".into()))?);
        }
    } else {
        images = vec![0; units.len()];
    }
    if let Some(u) = units.last() {
        eps_order = r.element_order(&r.reduce(u)?);
    }
    Ok(LocalData { q: pr.p, f: pr.f, order: pk, unit_images: images, eps_order })
}

fn inv_pow(r: &Residue, h: &[u64]) -> Vec<u64> {
    r.pow(h, r.order - 1)
}

struct Context {
    k: NumberField,
    units: Vec<FieldElement>,
    h: BigInt,
    unit_text: String,
}

fn context(k: &NumberField, p: u64) -> Result<Context> {
    let (r1, r2) = k.signature();
    if k.degree() != 2 || r1 != 2 || r2 != 0 {
        return Err(IflError::InvalidInput("field must be real quadratic".into()));
    }
    let h = general_class_group(k, &ClassGroupOptions::default())?.order();
    if (&h % p).is_zero() {
        return Err(IflError::InvalidInput(format!("{p} divides the class number {h}")));
    }
    let eps = fundamental_unit(k)?.element;
    Ok(Context {
        k: k.clone(),
        unit_text: k.format_element(&eps),
        units: vec![k.elem_from_int(-1), eps],
        h,
    })
}

fn unramified_primes(k: &NumberField, q: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_prime_u64(q) {
        return Err(IflError::InvalidInput(format!("{q} is not prime")));
    }
    let ps = k.primes_above(q)?;
    if ps.iter().any(|pr| pr.e > 1) {
        return Err(IflError::InvalidInput(format!("{q} ramifies")));
    }
    Ok(ps)
}

fn ray_data(c: &Context, s: &[u64], p: u64) -> Result<RayData> {
    let mut local = Vec::new();
    for &q in s {
        if q == p {
            return Err(IflError::InvalidInput("S must not contain p".into()));
        }
        for pr in unramified_primes(&c.k, q)? {
            local.push(local_data(&c.k, &pr, p, &c.units)?);
        }
    }
    Ok(RayData {
        field: c.k.poly().to_string(),
        primes: s.to_vec(),
        p,
        local,
        class_number: c.h.clone(),
        unit: c.unit_text.clone(),
    })
}

/// Cokernel of the unit map into `sum R(Q)`.
fn cokernel(data: &RayData) -> Result<AbelianGroupSNF> {
    let cols: Vec<&LocalData> = data.local.iter().filter(|l| l.order > 1).collect();
    let r = cols.len();
    if r == 0 {
        return Ok(AbelianGroupSNF::trivial());
    }
    let mut rows = Vec::new();
    for (i, l) in cols.iter().enumerate() {
        let mut row = vec![0i64; r];
        row[i] = l.order as i64;
        rows.push(row);
    }
    let nunits = cols[0].unit_images.len();
    for u in 0..nunits {
        rows.push(cols.iter().map(|l| l.unit_images[u] as i64).collect());
    }
    let labels: Vec<String> = cols.iter().map(|l| format!("r{}", l.q)).collect();
    AbelianGroupSNF::from_relations(&IntMatrix::from_rows(&rows), &labels)
}

/// `X_S(k)` at finite level for `k` real quadratic with `p` prime to `h(k)`.
pub fn xs_finite_level(k: &NumberField, s: &[u64], p: u64) -> Result<AbelianGroupSNF> {
    let c = context(k, p)?;
    cokernel(&ray_data(&c, s, p)?)
}

pub fn ray_data_for(k: &NumberField, s: &[u64], p: u64) -> Result<RayData> {
    let c = context(k, p)?;
    ray_data(&c, s, p)
}

/// Whether the unit map to `R(q)` is onto, i.e. `X_{q}(k)` is trivial.
pub fn x_q_trivial(k: &NumberField, q: u64, p: u64) -> Result<bool> {
    let c = context(k, p)?;
    x_q_trivial_in(&c, q, p)
}

fn x_q_trivial_in(c: &Context, q: u64, p: u64) -> Result<bool> {
    let ps = unramified_primes(&c.k, q)?;
    if ps.len() != 1 {
        return Err(IflError::InvalidInput(format!("{q} is not inert")));
    }
    let d = ray_data(c, &[q], p)?;
    if d.local[0].order == 1 {
        return Err(IflError::InvalidInput(format!(
            "R({q}) is trivial: {q}^2 - 1 is prime to {p}"
        )));
    }
    Ok(cokernel(&d)?.is_trivial())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimeFlags {
    pub q: u64,
    pub inert: bool,
    pub minus_one_mod_p: bool,
    pub square_not_one_mod_p2: bool,
    /// `None` when not computed (q not inert).
    pub x_q_trivial: Option<bool>,
    pub unit_order: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Thm16Report {
    pub field: String,
    pub p: u64,
    pub primes: Vec<PrimeFlags>,
    pub p_inert: bool,
    pub class_number: u64,
    /// Two primes of S with trivial `X_{q}`, serving as `q1, q2`.
    pub pair: Option<(u64, u64)>,
    pub xs_invariants: Vec<u64>,
    pub fires: bool,
    pub failures: Vec<String>,
    pub conclusion: Option<String>,
}

pub fn check_thm16(k: &NumberField, s: &[u64], p: u64) -> Result<Thm16Report> {
    if s.len() < 3 {
        return Err(IflError::InvalidInput("S needs at least 3 primes (r >= 3)".into()));
    }
    if p % 2 == 0 || !is_prime_u64(p) {
        return Err(IflError::InvalidInput("p must be an odd prime".into()));
    }
    let mut uniq = s.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.len() != s.len() {
        return Err(IflError::InvalidInput("S has repeated primes".into()));
    }
    let c = context(k, p)?;
    let pp = c.k.primes_above(p)?;
    let p_inert = pp.len() == 1 && pp[0].f == 2;
    let mut failures = Vec::new();
    if !p_inert {
        failures.push(format!("{p} is not inert"));
    }
    let mut flags = Vec::new();
    for &q in s {
        let ps = unramified_primes(&c.k, q)?;
        let inert = ps.len() == 1;
        let minus_one = q % p == p - 1;
        let sq = (q as u128 * q as u128) % (p as u128 * p as u128) != 1;
        let (xt, ord) = if inert && minus_one {
            let d = ray_data(&c, &[q], p)?;
            (Some(cokernel(&d)?.is_trivial()), Some(d.local[0].eps_order))
        } else {
            (None, None)
        };
        if !inert {
            failures.push(format!("{q} is not inert"));
        }
        if !minus_one {
            failures.push(format!("{q} is not -1 mod {p}"));
        }
        if !sq {
            failures.push(format!("{q}^2 = 1 mod {}", p * p));
        }
        flags.push(PrimeFlags {
            q,
            inert,
            minus_one_mod_p: minus_one,
            square_not_one_mod_p2: sq,
            x_q_trivial: xt,
            unit_order: ord,
        });
    }
    let trivial: Vec<u64> =
        flags.iter().filter(|f| f.x_q_trivial == Some(true)).map(|f| f.q).collect();
    let pair = (trivial.len() >= 2).then(|| (trivial[0], trivial[1]));
    if pair.is_none() {
        failures.push("no two primes of S with trivial X_{q}".into());
    }
    let xs = cokernel(&ray_data(&c, s, p)?)?;
    let fires = failures.is_empty();
    if fires {
        let expect = vec![BigInt::from(p); s.len() - 1];
        if xs.invariants != expect {
            return Err(IflError::Integrity(format!(
                "X_S has invariants {:?}, expected (Z/{p})^{}",
                xs.invariants,
                s.len() - 1
            )));
        }
    }
    Ok(Thm16Report {
        field: c.k.poly().to_string(),
        p,
        primes: flags,
        p_inert,
        class_number: c.h.to_u64().unwrap_or(u64::MAX),
        pair,
        xs_invariants: xs.invariants_u64(),
        fires,
        failures,
        conclusion: fires.then(|| {
            "X_S of the cyclotomic Z_p-extension is not a free pro-p group".to_string()
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{real_quadratic, unit_order_mod_q};

    fn sqrt2() -> NumberField {
        real_quadratic(2).unwrap()
    }

    #[test]
    fn residue_orders_match_unit_orders() {
        let k = sqrt2();
        let c = context(&k, 3).unwrap();
        for q in [5u64, 11, 29, 7, 23] {
            let d = ray_data(&c, &[q], 3).unwrap();
            let o = unit_order_mod_q(&k, &c.units[1], q).unwrap();
            let l = d.local.iter().map(|l| l.eps_order).fold(1u64, |a, b| a.lcm(&b));
            assert_eq!(BigInt::from(l), o, "q = {q}");
        }
        assert_eq!(ray_data(&c, &[5], 3).unwrap().local[0].eps_order, 12);
        assert_eq!(ray_data(&c, &[11], 3).unwrap().local[0].eps_order, 24);
    }

    #[test]
    fn finite_level_groups() {
        let k = sqrt2();
        assert!(xs_finite_level(&k, &[], 3).unwrap().is_trivial());
        assert_eq!(xs_finite_level(&k, &[5, 11], 3).unwrap().invariants_u64(), vec![3]);
        assert_eq!(xs_finite_level(&k, &[5, 11, 29], 3).unwrap().invariants_u64(), vec![3, 3]);
        // 7 splits in Q(sqrt 2): R has two factors of order 3
        let g = xs_finite_level(&k, &[7], 3).unwrap();
        assert_eq!(g.order(), BigInt::from(3));
    }

    #[test]
    fn single_primes() {
        let k = sqrt2();
        assert!(x_q_trivial(&k, 5, 3).unwrap());
        assert!(x_q_trivial(&k, 11, 3).unwrap()); // eps has order 24, 120 / 24 = 5
        assert!(!x_q_trivial(&k, 29, 3).unwrap()); // order 20
        assert!(x_q_trivial(&k, 83, 3).unwrap());
        assert!(x_q_trivial(&k, 7, 3).is_err()); // split
        assert!(x_q_trivial(&k, 2, 3).is_err()); // ramified
        assert!(x_q_trivial(&k, 3, 5).is_err()); // 9 - 1 prime to 5
    }

    #[test]
    fn theorem_checker() {
        let k = sqrt2();
        let r = check_thm16(&k, &[5, 29, 11], 3).unwrap();
        assert!(r.fires, "{:?}", r.failures);
        assert_eq!(r.pair, Some((5, 11)));
        assert_eq!(r.xs_invariants.len(), 2);
        let r = check_thm16(&k, &[29, 59, 5], 3).unwrap();
        assert!(!r.fires);
        assert_eq!(r.failures, vec!["no two primes of S with trivial X_{q}".to_string()]);
        let r = check_thm16(&k, &[5, 11, 53], 3).unwrap();
        assert!(!r.fires);
        assert!(r.failures.iter().any(|f| f.starts_with("53^2")));
        assert!(check_thm16(&k, &[5, 11], 3).is_err());
    }

    #[test]
    fn class_number_must_be_prime_to_p() {
        // h(Q(sqrt 79)) = 3
        let k = real_quadratic(79).unwrap();
        assert!(xs_finite_level(&k, &[5], 3).is_err());
    }
}
