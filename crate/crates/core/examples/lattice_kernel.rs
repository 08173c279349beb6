//! Hermite and Smith normal forms and LLL reduction on small integer matrices.

use ifl::kernel::lll::{is_lll_reduced, lll};
use ifl::kernel::matrix::IntMatrix;

fn main() -> ifl::Result<()> {
    let a = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    println!("A    = {:?}", a.to_i64_rows().unwrap());
    println!("HNF  = {:?}", a.hnf().to_i64_rows().unwrap());
    println!("SNF  = {:?}", a.snf_invariants().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("det  = {}", a.det());

    let b = IntMatrix::from_rows(&[vec![1i64, 1, 1], vec![-1, 0, 2], vec![3, 5, 6]]);
    let r = lll(&b)?;
    println!("LLL  = {:?}  reduced {}", r.to_i64_rows().unwrap(), is_lll_reduced(&r));
    Ok(())
}
