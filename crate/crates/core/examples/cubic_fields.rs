//! Complex cubic fields whose discriminant is that of Q(sqrt D), from reduced
//! binary cubic forms.
//!
//! cargo run --release --example cubic_fields -- -9934

use ifl::cubic::enumerate_cubic_fields;

fn main() -> ifl::Result<()> {
    let d: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-9934);
    let fields = enumerate_cubic_fields(d)?;
    println!("{} cubic field(s) for D = {d}", fields.len());
    for c in &fields {
        let f = c.form;
        println!(
            "  ({}, {}, {}, {})  {}   disc {}  index {}",
            f.a,
            f.b,
            f.c,
            f.d,
            c.field.poly(),
            c.field.discriminant(),
            c.field.index()
        );
    }
    Ok(())
}
