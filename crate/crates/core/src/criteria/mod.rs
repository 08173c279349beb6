//! Non-freeness criteria for the Galois group of the maximal unramified
//! pro-p extension of the cyclotomic Z_p-extension of an imaginary quadratic
//! field, and the analysis pipeline that feeds them.

pub mod cache;
pub mod report;
pub mod repro;

pub use report::{analyze, AnalyzeOptions, CriterionReport};

use crate::error::{IflError, Result};
use serde::{Deserialize, Serialize};

/// Three-valued outcome. `DoesNotFire` never means "free".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Fires { instance: String },
    DoesNotFire { reason: String },
    Inapplicable { reason: String },
}

impl Verdict {
    pub fn fires(&self) -> bool {
        matches!(self, Verdict::Fires { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Fires { .. } => "fires",
            Verdict::DoesNotFire { .. } => "does-not-fire",
            Verdict::Inapplicable { .. } => "inapplicable",
        }
    }

    fn fires_with(s: String) -> Self {
        Verdict::Fires { instance: s }
    }

    fn no(s: String) -> Self {
        Verdict::DoesNotFire { reason: s }
    }

    fn na(s: impl Into<String>) -> Self {
        Verdict::Inapplicable { reason: s.into() }
    }
}

/// Not free if `lambda(F) <= ((p-1) lambda(k) - p) / 2`, given `lambda(k) >= 2`.
pub fn thm11_check(lk: u32, lf: u32, p: u64) -> Verdict {
    if lk < 2 {
        return Verdict::na(format!("lambda(k) = {lk} < 2"));
    }
    let rhs = (p as i64 - 1) * lk as i64 - p as i64;
    let lhs = 2 * lf as i64;
    if lhs <= rhs {
        Verdict::fires_with(format!("2*lambda(F) = {lhs} <= (p-1)*lambda(k) - p = {rhs}"))
    } else {
        Verdict::no(format!("2*lambda(F) = {lhs} > (p-1)*lambda(k) - p = {rhs}"))
    }
}

/// Not free if some `D(F_n)` is nontrivial.
pub fn thm12_check(d_orders: &[Option<u64>]) -> Verdict {
    if let Some((n, d)) = d_orders.iter().enumerate().find_map(|(n, d)| d.filter(|&d| d > 1).map(|d| (n, d))) {
        return Verdict::fires_with(format!("|D(F_{n})| = {d} > 1"));
    }
    if d_orders.iter().all(|d| d.is_none()) {
        return Verdict::na("no D(F_n) computed");
    }
    let shown: Vec<String> = d_orders
        .iter()
        .enumerate()
        .filter_map(|(n, d)| d.map(|d| format!("|D(F_{n})| = {d}")))
        .collect();
    Verdict::no(shown.join(", "))
}

/// Not Demuskin if `lambda(k)` is odd, or `lambda(k) >= 4` and
/// `lambda(F) <= ((p-1) lambda(k) - 2p) / 2`.
pub fn thm26_check(lk: u32, lf: Option<u32>, p: u64) -> Verdict {
    if lk % 2 == 1 {
        return Verdict::fires_with(format!("lambda(k) = {lk} is odd; Demuskin groups have even rank"));
    }
    if lk < 4 {
        return Verdict::na(format!(
            "lambda(k) = {lk} < 4 (lambda(k) = 2 is covered by a separate criterion of Okano, not recomputed)"
        ));
    }
    let Some(lf) = lf else { return Verdict::na("lambda(F) unknown") };
    let rhs = (p as i64 - 1) * lk as i64 - 2 * p as i64;
    let lhs = 2 * lf as i64;
    if lhs <= rhs {
        Verdict::fires_with(format!("2*lambda(F) = {lhs} <= (p-1)*lambda(k) - 2p = {rhs}"))
    } else {
        Verdict::no(format!("2*lambda(F) = {lhs} > (p-1)*lambda(k) - 2p = {rhs}"))
    }
}

/// `lambda(F) = 0` if `|D(F_n)| = |A(F)| 3^(e(F)-1)` for some `n`. Every
/// order must satisfy the upper bound; a violation is an engine fault.
pub fn prop31_check(a_f: u64, e_f: u32, d_orders: &[Option<u64>]) -> Result<Verdict> {
    if e_f == 0 {
        return Err(IflError::InvalidInput("e(F) >= 1".into()));
    }
    let bound = a_f * 3u64.pow(e_f - 1);
    for (n, d) in d_orders.iter().enumerate() {
        if let Some(d) = d {
            if *d > bound {
                return Err(IflError::Integrity(format!(
                    "|D(F_{n})| = {d} exceeds |A(F)| 3^(e(F)-1) = {bound}"
                )));
            }
        }
    }
    for (n, d) in d_orders.iter().enumerate() {
        if *d == Some(bound) {
            return Ok(Verdict::fires_with(format!(
                "|D(F_{n})| = {bound} = |A(F)| * 3^(e(F)-1) = {a_f} * 3^{}",
                e_f - 1
            )));
        }
    }
    if d_orders.iter().all(|d| d.is_none()) {
        return Ok(Verdict::na("no D(F_n) computed"));
    }
    Ok(Verdict::no(format!("no level reaches |A(F)| * 3^(e(F)-1) = {bound}")))
}

/// `lambda(k) = 1` iff `e(F) = 1`, when `A(k)` is cyclic. `Fires` means
/// consistent; a mismatch is an error.
pub fn cor14_check(e_f: u32, lk: u32, c3: bool) -> Result<Verdict> {
    if !c3 {
        return Ok(Verdict::na("A(k) is not cyclic"));
    }
    if (lk == 1) == (e_f == 1) {
        Ok(Verdict::fires_with(format!("consistent: lambda(k) = {lk}, e(F) = {e_f}")))
    } else {
        Err(IflError::Integrity(format!(
            "lambda(k) = {lk} and e(F) = {e_f} violate lambda(k) = 1 <=> e(F) = 1"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Free,
    Demuskin,
}

/// Generator rank of an open subgroup of index `index`.
pub fn lemma19_rank(dg: u64, index: u64, kind: GroupKind) -> Result<u64> {
    let min = match kind {
        GroupKind::Free => 1,
        GroupKind::Demuskin => 2,
    };
    if dg < min {
        return Err(IflError::InvalidInput(format!("d(G) must be at least {min}")));
    }
    if index == 0 || crate::kernel::int::factor_u64(index).len() > 1 {
        return Err(IflError::InvalidInput(format!("index {index} is not a prime power")));
    }
    index
        .checked_mul(dg - min)
        .and_then(|x| x.checked_add(min))
        .ok_or_else(|| IflError::InvalidInput("rank overflows".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm11() {
        assert!(thm11_check(2, 0, 3).fires());
        assert_eq!(thm11_check(1, 0, 3).label(), "inapplicable");
        assert!(thm11_check(4, 2, 3).fires());
        assert_eq!(thm11_check(4, 3, 3).label(), "does-not-fire");
    }

    #[test]
    fn thm12() {
        assert!(thm12_check(&[Some(1), Some(3)]).fires());
        assert!(thm12_check(&[Some(3)]).fires());
        assert_eq!(thm12_check(&[Some(1), Some(1)]).label(), "does-not-fire");
        assert_eq!(thm12_check(&[None]).label(), "inapplicable");
        match thm12_check(&[Some(1), Some(3)]) {
            Verdict::Fires { instance } => assert!(instance.contains("F_1")),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn thm26() {
        assert!(thm26_check(4, Some(0), 3).fires());
        assert!(thm26_check(3, Some(5), 3).fires());
        assert_eq!(thm26_check(2, Some(0), 3).label(), "inapplicable");
        assert_eq!(thm26_check(4, None, 3).label(), "inapplicable");
        assert_eq!(thm26_check(4, Some(2), 3).label(), "does-not-fire");
    }

    #[test]
    fn prop31() {
        assert!(prop31_check(1, 2, &[Some(1), Some(3)]).unwrap().fires());
        assert!(!prop31_check(1, 2, &[Some(1), Some(1)]).unwrap().fires());
        assert!(!prop31_check(9, 1, &[Some(3)]).unwrap().fires());
        assert!(prop31_check(1, 1, &[Some(3)]).is_err());
    }

    #[test]
    fn cor14() {
        assert!(cor14_check(2, 2, true).unwrap().fires());
        assert!(cor14_check(2, 4, true).unwrap().fires());
        assert!(cor14_check(1, 2, true).is_err());
        assert_eq!(cor14_check(1, 2, false).unwrap().label(), "inapplicable");
    }

    #[test]
    fn lemma19() {
        assert_eq!(lemma19_rank(2, 3, GroupKind::Free).unwrap(), 4);
        assert_eq!(lemma19_rank(4, 3, GroupKind::Demuskin).unwrap(), 8);
        // hypothetical lambda(K) = p lambda(k) - p + 1
        assert_eq!(lemma19_rank(2, 3, GroupKind::Free).unwrap(), 3 * 2 - 3 + 1);
        assert!(lemma19_rank(0, 3, GroupKind::Free).is_err());
        assert!(lemma19_rank(1, 3, GroupKind::Demuskin).is_err());
        assert!(lemma19_rank(2, 6, GroupKind::Free).is_err());
    }
}
