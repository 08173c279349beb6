//! Class groups of imaginary quadratic fields by reduced binary quadratic forms.
//!
//! cargo run --release --example quadratic_class_group -- -39736

use ifl::classgroup::quad_class_group;
use ifl::classgroup::quadratic::reduced_forms;

fn main() -> ifl::Result<()> {
    let d: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-211);
    let g = quad_class_group(d)?;
    println!("Cl({d}) = {}   h = {}", g.describe(), g.order());
    println!("Sylow-3: {}", g.sylow_p(3).describe());
    let forms = reduced_forms(d);
    for f in forms.iter().take(12) {
        println!("  ({}, {}, {})", f.a, f.b, f.c);
    }
    if forms.len() > 12 {
        println!("  ... {} more", forms.len() - 12);
    }
    Ok(())
}
