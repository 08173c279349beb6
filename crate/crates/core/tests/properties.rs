//! Property tests for the exact kernel and the arithmetic built on it.

use ifl::classgroup::quadratic::{class_number_by_forms, BinaryQuadraticForm};
use ifl::criteria::{lemma19_rank, GroupKind};
use ifl::field::NumberField;
use ifl::kernel::int::{is_fundamental_discriminant, kronecker};
use ifl::kernel::lll::{is_lll_reduced, lll};
use ifl::kernel::matrix::IntMatrix;
use ifl::kernel::padic::{hensel_roots, is_root_mod, PadicNumber};
use ifl::kernel::poly::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn square(n: usize, b: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-b..=b, n), n)
}

fn matrices() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5).prop_flat_map(|n| square(n, 30))
}

fn neg_fundamental() -> impl Strategy<Value = i64> {
    (3i64..20_000).prop_map(|x| -x).prop_filter("fundamental", |&d| is_fundamental_discriminant(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hnf_is_idempotent_and_keeps_the_index(rows in matrices()) {
        let a = IntMatrix::from_rows(&rows);
        let h = a.hnf();
        prop_assert_eq!(h.hnf(), h.clone());
        let d = a.det();
        if !d.is_zero() {
            prop_assert_eq!(h.det().abs(), d.abs());
        }
        prop_assert_eq!(h.rank(), a.rank());
    }

    #[test]
    fn hnf_mod_det_agrees(rows in matrices()) {
        let a = IntMatrix::from_rows(&rows);
        let d = a.det().abs();
        prop_assume!(!d.is_zero());
        prop_assert_eq!(a.hnf_mod(&d), a.hnf());
    }

    #[test]
    fn smith_invariants_divide_and_multiply_to_det(rows in matrices()) {
        let a = IntMatrix::from_rows(&rows);
        let s = a.snf_invariants();
        prop_assert_eq!(s.len(), a.rank());
        for w in s.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        let d = a.det();
        if !d.is_zero() {
            prop_assert_eq!(s.iter().product::<BigInt>(), d.abs());
        }
        // invariant under transposition
        prop_assert_eq!(a.transpose().snf_invariants(), s);
    }

    #[test]
    fn lll_output_is_reduced_with_same_covolume(rows in (2usize..=5).prop_flat_map(|n| square(n, 60))) {
        let a = IntMatrix::from_rows(&rows);
        let d = a.det();
        prop_assume!(!d.is_zero());
        let r = lll(&a).unwrap();
        prop_assert!(is_lll_reduced(&r));
        prop_assert_eq!(r.det().abs(), d.abs());
        // same lattice: both HNFs of the row spans agree
        prop_assert_eq!(r.transpose().hnf(), a.transpose().hnf());
    }

    #[test]
    fn kronecker_is_multiplicative(d in neg_fundamental(), m in 1u64..500, n in 1u64..500) {
        prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
    }

    #[test]
    fn form_composition_is_a_group_law(d in neg_fundamental(), i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let forms = ifl::classgroup::quadratic::reduced_forms(d);
        let (f, g, h) = (&forms[i % forms.len()], &forms[j % forms.len()], &forms[k % forms.len()]);
        let e = BinaryQuadraticForm::identity(d);
        prop_assert_eq!(f.compose(&e).reduce(), f.clone().reduce());
        prop_assert_eq!(f.compose(&f.inverse()).reduce(), e.clone().reduce());
        prop_assert_eq!(f.compose(g).reduce(), g.compose(f).reduce());
        prop_assert_eq!(f.compose(g).compose(h).reduce(), f.compose(&g.compose(h)).reduce());
        let hn = class_number_by_forms(d) as i64;
        prop_assert_eq!(f.pow(hn).reduce(), e.reduce());
    }

    #[test]
    fn padic_inverse(a in 1i64..100_000, prec in 1u32..30) {
        prop_assume!(a % 3 != 0);
        let x = PadicNumber::from_i64(3, prec, a);
        let y = x.inverse().unwrap();
        prop_assert_eq!(x.mul(&y), PadicNumber::from_i64(3, prec, 1));
        prop_assert!(x.sub(&x).valuation().is_none());
    }

    #[test]
    fn hensel_roots_are_roots(c0 in -50i64..50, c1 in -50i64..50, c2 in -50i64..50, n in 1u32..25) {
        let f = IntPolynomial::from_i64(&[c0, c1, c2, 1]);
        if let Ok(h) = hensel_roots(&f, 3, n) {
            for r in &h.roots {
                prop_assert!(is_root_mod(&f, r.residue(), 3, n));
            }
        }
    }

    #[test]
    fn norm_is_multiplicative(a in prop::collection::vec(-40i64..40, 3), b in prop::collection::vec(-40i64..40, 3)) {
        let k = NumberField::parse("x^3 - x^2 - 39*x - 109").unwrap();
        let a: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
        let b: Vec<BigInt> = b.into_iter().map(BigInt::from).collect();
        let ab = k.mul_coords(&a, &b);
        prop_assert_eq!(k.norm_coords(&ab), k.norm_coords(&a) * k.norm_coords(&b));
        // the principal ideal of a nonzero element has norm |N(a)|
        prop_assume!(!k.norm_coords(&a).is_zero());
        let e = ifl::field::FieldElement::integral(a.clone());
        let i = k.ideal_principal(&e).unwrap();
        prop_assert_eq!(i.norm().clone(), k.norm_coords(&a).abs());
    }

    #[test]
    fn rank_formula_is_transitive(dg in 2u64..60, a in 0u32..5, b in 0u32..5, free in any::<bool>()) {
        let kind = if free { GroupKind::Free } else { GroupKind::Demuskin };
        let (ia, ib) = (3u64.pow(a), 3u64.pow(b));
        let step = lemma19_rank(lemma19_rank(dg, ia, kind).unwrap(), ib, kind).unwrap();
        prop_assert_eq!(step, lemma19_rank(dg, ia * ib, kind).unwrap());
        prop_assert_eq!(lemma19_rank(dg, 1, kind).unwrap(), dg);
    }
}

#[test]
fn class_number_one_list() {
    // the nine imaginary quadratic fields of class number one
    let ones: Vec<i64> = (3i64..200)
        .map(|x| -x)
        .filter(|&d| is_fundamental_discriminant(d) && class_number_by_forms(d) == 1)
        .collect();
    assert_eq!(ones, vec![-3, -4, -7, -8, -11, -19, -43, -67, -163]);
    assert!(BigInt::one() > BigInt::zero());
}
