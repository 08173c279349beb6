//! The three reference discriminants against the embedded table of expected
//! values. Takes a few minutes: two of them need degree-9 class groups.
//!
//! cargo run --release --example reproduce

use ifl::criteria::repro::paper_examples;

fn main() -> ifl::Result<()> {
    let out = paper_examples()?;
    for c in &out.checks {
        println!("{:<7} {:<13} {:<14} {:<14} {}", c.disc, c.item, c.expected, c.actual, if c.ok { "ok" } else { "MISMATCH" });
    }
    println!("all match: {}", out.all_ok());
    Ok(())
}
