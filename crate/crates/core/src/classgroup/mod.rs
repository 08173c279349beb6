//! Finite abelian groups in Smith form, class groups of imaginary quadratic
//! fields (forms) and of general fields (relations over a factor base).

pub mod presentation;
pub mod quadratic;
pub mod relations;

pub use presentation::Presentation;
pub use quadratic::{quad_class_group, BinaryQuadraticForm};
pub use relations::{
    d_subgroup_order, direct_d_check, general_class_group, ideal_class_order, ClassGroup,
    ClassGroupOptions, DirectDCheck, FactorBase, Policy,
};

use crate::error::{IflError, Result};
use crate::field::IdealHNF;
use crate::kernel::int::valuation;
use crate::kernel::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A generator of one cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Ideal(IdealHNF),
    Label(String),
}

/// How far a class group computation is proven.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Exact method, no bound involved (reduced forms).
    Exact,
    /// Factor base up to the Minkowski bound, rigorous saturation.
    MinkowskiComplete,
    /// Factor base below Minkowski, or saturation not provable.
    Heuristic(u64),
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::Exact => write!(f, "exact"),
            Certification::MinkowskiComplete => write!(f, "minkowski-complete"),
            Certification::Heuristic(b) => write!(f, "heuristic({b})"),
        }
    }
}

impl Serialize for Certification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Certification {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "exact" => Ok(Certification::Exact),
            "minkowski-complete" => Ok(Certification::MinkowskiComplete),
            _ => s
                .strip_prefix("heuristic(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|b| b.parse().ok())
                .map(Certification::Heuristic)
                .ok_or_else(|| serde::de::Error::custom(format!("bad certification {s}"))),
        }
    }
}

/// `Z/d_1 + ... + Z/d_r` with `d_1 | d_2 | ...`, all `d_i > 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbelianGroupSNF {
    pub invariants: Vec<BigInt>,
    pub witnesses: Vec<Witness>,
    /// Presentation used for discrete logarithms; not serialized.
    #[serde(skip)]
    pub(crate) presentation: Option<Arc<Presentation>>,
    /// Set when this is the Sylow subgroup of the presented group.
    #[serde(skip)]
    pub(crate) sylow: Option<u64>,
}

impl PartialEq for AbelianGroupSNF {
    fn eq(&self, other: &Self) -> bool {
        self.invariants == other.invariants
    }
}

impl AbelianGroupSNF {
    pub fn trivial() -> Self {
        Self { invariants: vec![], witnesses: vec![], presentation: None, sylow: None }
    }

    /// Group with the given invariants (any order, ones dropped), normalised
    /// to divisor-chain form. Witnesses are labels `g1, g2, ...`.
    pub fn from_invariants(inv: &[i64]) -> Result<Self> {
        let n = inv.len();
        let m = IntMatrix::diagonal(inv);
        let g = Self::from_relations(&m, &(1..=n).map(|i| format!("g{i}")).collect::<Vec<_>>())?;
        Ok(g)
    }

    /// Cokernel of the relation rows on generators with the given labels.
    pub fn from_relations(rel: &IntMatrix, labels: &[String]) -> Result<Self> {
        let p = Presentation::dense(rel)?;
        let mut witnesses = Vec::new();
        for i in p.nontrivial() {
            let v = p.generator_vector(i);
            let terms: Vec<String> = v
                .iter()
                .zip(labels)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{l}^{c}") })
                .collect();
            witnesses.push(Witness::Label(if terms.is_empty() {
                "1".into()
            } else {
                terms.join("*")
            }));
        }
        Ok(Self { invariants: p.invariants(), witnesses, presentation: Some(Arc::new(p)), sylow: None })
    }

    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Number of invariants divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.invariants.iter().filter(|d| (*d % p).is_zero()).count()
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> BigInt {
        self.invariants.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Sylow `p`-subgroup; witnesses are raised to the prime-to-`p` cofactor.
    pub fn sylow_p(&self, p: u64) -> AbelianGroupSNF {
        let mut invariants = Vec::new();
        let mut witnesses = Vec::new();
        for (i, d) in self.invariants.iter().enumerate() {
            let v = valuation(d, p);
            if v == 0 {
                continue;
            }
            let pp = BigInt::from(p).pow(v);
            let cof = d / &pp;
            invariants.push(pp);
            witnesses.push(match &self.witnesses.get(i) {
                Some(Witness::Label(l)) if cof.is_one() => Witness::Label(l.clone()),
                Some(Witness::Label(l)) => Witness::Label(format!("({l})^{cof}")),
                Some(Witness::Ideal(a)) if cof.is_one() => Witness::Ideal(a.clone()),
                Some(Witness::Ideal(_)) => self
                    .ideal_witness_power(i, &cof)
                    .map(Witness::Ideal)
                    .unwrap_or_else(|| Witness::Label(format!("(w{})^{cof}", i + 1))),
                None => Witness::Label(format!("g{}^{cof}", i + 1)),
            });
        }
        AbelianGroupSNF {
            invariants,
            witnesses,
            presentation: self.presentation.clone(),
            sylow: Some(p),
        }
    }

    fn ideal_witness_power(&self, i: usize, e: &BigInt) -> Option<IdealHNF> {
        let p = self.presentation.as_ref()?;
        let idx = p.nontrivial().nth(i)?;
        let v: Vec<BigInt> = p.generator_vector(idx).iter().map(|x| x * e).collect();
        p.ideal_of(&v).ok()
    }

    /// Order of an element given by coordinates in the invariant basis.
    pub fn element_order(&self, coords: &[BigInt]) -> BigInt {
        coords.iter().zip(&self.invariants).fold(BigInt::one(), |acc, (c, d)| {
            let g = c.gcd(d);
            acc.lcm(&(d / g))
        })
    }

    /// Order of the subgroup generated by elements in invariant coordinates.
    pub fn subgroup_order(&self, elems: &[Vec<BigInt>]) -> BigInt {
        let r = self.invariants.len();
        if r == 0 {
            return BigInt::one();
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, d) in self.invariants.iter().enumerate() {
            let mut row = vec![BigInt::zero(); r];
            row[i] = d.clone();
            rows.push(row);
        }
        for e in elems {
            rows.push(e.iter().zip(&self.invariants).map(|(x, d)| x.mod_floor(d)).collect());
        }
        let quotient: BigInt = IntMatrix::from_rows(&rows)
            .snf_invariants()
            .iter()
            .filter(|x| !x.is_zero())
            .product();
        self.order() / quotient
    }

    /// Discrete logarithm of a vector over the presentation generators, in
    /// the invariant basis of this group (projected for a Sylow subgroup).
    pub fn dlog(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let p = self
            .presentation
            .as_ref()
            .ok_or_else(|| IflError::InvalidInput("group carries no presentation".into()))?;
        let full = p.coordinates(v);
        let Some(ell) = self.sylow else { return Ok(full) };
        let mut out = Vec::new();
        for (d, c) in p.invariants().iter().zip(full) {
            let k = valuation(d, ell);
            if k == 0 {
                continue;
            }
            let pp = BigInt::from(ell).pow(k);
            let u = mod_inverse(&(d / &pp), &pp).expect("coprime cofactor");
            out.push((c * u).mod_floor(&pp));
        }
        Ok(out)
    }

    pub fn describe(&self) -> String {
        if self.invariants.is_empty() {
            return "trivial".into();
        }
        self.invariants.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }

    pub fn invariants_u64(&self) -> Vec<u64> {
        self.invariants.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.abs().is_one() {
        Some((e.x * e.gcd.signum()).mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(g: &AbelianGroupSNF) -> Vec<i64> {
        g.invariants.iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn sylow_examples() {
        let g = AbelianGroupSNF::from_invariants(&[6]).unwrap();
        assert_eq!(inv(&g.sylow_p(3)), vec![3]);
        let g = AbelianGroupSNF::from_invariants(&[3, 3]).unwrap();
        assert_eq!(inv(&g.sylow_p(3)), vec![3, 3]);
        let g = AbelianGroupSNF::from_invariants(&[12, 36]).unwrap();
        assert_eq!(inv(&g.sylow_p(2)), vec![4, 4]);
        assert_eq!(inv(&g.sylow_p(3)), vec![3, 9]);
        assert_eq!(g.sylow_p(5).order(), BigInt::one());
    }

    #[test]
    fn normalisation() {
        let g = AbelianGroupSNF::from_invariants(&[2, 3, 1, 4]).unwrap();
        assert_eq!(inv(&g), vec![2, 12]);
        assert_eq!(g.order(), BigInt::from(24));
        assert_eq!(g.witnesses.len(), 2);
    }

    #[test]
    fn subgroups() {
        let g = AbelianGroupSNF::from_invariants(&[3, 9]).unwrap();
        let a = vec![BigInt::from(1), BigInt::from(0)];
        let b = vec![BigInt::from(0), BigInt::from(3)];
        assert_eq!(g.subgroup_order(&[a.clone()]), BigInt::from(3));
        assert_eq!(g.subgroup_order(&[a, b]), BigInt::from(9));
        assert_eq!(g.element_order(&[BigInt::from(0), BigInt::from(6)]), BigInt::from(3));
    }

    #[test]
    fn certification_serde() {
        for c in [Certification::Exact, Certification::MinkowskiComplete, Certification::Heuristic(4313)] {
            let s = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<Certification>(&s).unwrap(), c);
        }
        assert_eq!(Certification::Heuristic(12).to_string(), "heuristic(12)");
    }
}
