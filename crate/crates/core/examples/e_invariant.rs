//! e(F): how deep eps^2 - 1 sits at the degree-one prime above 3 of a complex
//! cubic field.
//!
//! cargo run --release --example e_invariant -- -9934

use ifl::cubic::enumerate_cubic_fields;
use ifl::units::e_of_f;

fn main() -> ifl::Result<()> {
    let d: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-211);
    for c in enumerate_cubic_fields(d)? {
        let k = &c.field;
        match e_of_f(k) {
            Ok(e) => println!("{}: e(F) = {}  (eps = {}, stable at 3^{})", k.poly(), e.e, k.format_element(&e.unit), e.precision),
            Err(err) => println!("{}: {err}", k.poly()),
        }
    }
    Ok(())
}
