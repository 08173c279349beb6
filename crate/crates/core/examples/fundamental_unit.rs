//! Fundamental units of unit-rank-one fields: continued fractions for real
//! quadratic fields, weighted lattice search otherwise.
//!
//! cargo run --release --example fundamental_unit -- "x^3 - 7*x^2 - 10*x - 150"

use ifl::field::NumberField;
use ifl::units::{fundamental_unit, fundamental_unit_cf, real_quadratic};

fn main() -> ifl::Result<()> {
    for m in [2i64, 7, 94, 331] {
        let k = real_quadratic(m)?;
        let u = fundamental_unit_cf(&k)?;
        println!("Q(sqrt {m}): {}  R = {:.6}", k.format_element(&u.element), u.regulator);
    }
    let poly = std::env::args().nth(1).unwrap_or_else(|| "x^3 - 7*x^2 - 10*x - 150".into());
    let k = NumberField::parse(&poly)?;
    let u = fundamental_unit(&k)?;
    println!(
        "{}: eps = {}\n  R = {:.9} +- {:.1e}  (lower bound {:.4}, {:?}, {})",
        k.poly(),
        k.format_element(&u.element),
        u.regulator,
        u.regulator_error,
        u.regulator_lower_bound,
        u.certification,
        u.method
    );
    Ok(())
}
