//! Maximal order and the decomposition of small primes.
//!
//! cargo run --release --example prime_decomposition -- "x^3 - x^2 - 39*x - 109"

use ifl::field::NumberField;

fn main() -> ifl::Result<()> {
    let poly = std::env::args().nth(1).unwrap_or_else(|| "x^3 - x^2 - 39*x - 109".into());
    let k = NumberField::parse(&poly)?;
    println!("poly disc {}  field disc {}  index {}", k.poly_discriminant(), k.discriminant(), k.index());
    for p in [2u64, 3, 5, 7, 11, 13] {
        let parts: Vec<String> = k
            .primes_above(p)?
            .iter()
            .map(|pr| format!("P(e={}, f={})", pr.e, pr.f))
            .collect();
        println!("  {p:>2} = {}", parts.join(" * "));
    }
    Ok(())
}
