//! Class group of a number field by the relation method.
//!
//! cargo run --release --example class_group -- "x^3 - x^2 - 39*x - 109"

use ifl::classgroup::{general_class_group, ClassGroupOptions};
use ifl::field::NumberField;

fn main() -> ifl::Result<()> {
    let poly = std::env::args().nth(1).unwrap_or_else(|| "x^3 - x^2 - 39*x - 109".into());
    let k = NumberField::parse(&poly)?;
    let (r1, r2) = k.signature();
    println!("K = Q[x]/({})  disc {}  signature ({r1}, {r2})", k.poly(), k.discriminant());
    let g = general_class_group(&k, &ClassGroupOptions::default())?;
    println!("Cl(K) = {}  [{}]", g.group.describe(), g.certification);
    println!(
        "factor base {} primes (bound {}), {} relations, {} trials, {:.2}s",
        g.factor_base.len(),
        g.factor_base.bound,
        g.relations.len(),
        g.trials,
        g.seconds
    );
    for pr in k.primes_above(3)? {
        let v = g.dlog(&pr.ideal)?;
        println!("  prime above 3 (e = {}, f = {}): class {:?}", pr.e, pr.f, v);
    }
    Ok(())
}
