//! The criterion checkers on hand-entered invariants.

use ifl::criteria::{cor14_check, lemma19_rank, prop31_check, thm11_check, thm12_check, thm26_check, GroupKind};

fn main() -> ifl::Result<()> {
    println!("thm11 (lambda(k) = 2, lambda(F) = 0): {:?}", thm11_check(2, 0, 3));
    println!("thm12 (|D(F_n)| = 1, 3):             {:?}", thm12_check(&[Some(1), Some(3)]));
    println!("thm26 (lambda(k) = 4, lambda(F) = 0): {:?}", thm26_check(4, Some(0), 3));
    println!("prop31 (|A(F)| = 1, e(F) = 2):        {:?}", prop31_check(1, 2, &[Some(1), Some(3)])?);
    println!("cor14 (e(F) = 2, lambda(k) = 2):      {:?}", cor14_check(2, 2, true)?);
    println!("free, d(G) = 2, index 3:              d(U) = {}", lemma19_rank(2, 3, GroupKind::Free)?);
    Ok(())
}
