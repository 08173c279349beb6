//! Lambda-invariant of an imaginary quadratic field at p = 3.
//!
//! cargo run --release --example lambda_invariant -- -211

use ifl::lambda::{lambda_invariant, stickelberger_series, Twist};

fn main() -> ifl::Result<()> {
    let d: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-211);
    for n in 2..=4 {
        let s = stickelberger_series(d, 3, n, 2 * n + 4, Twist::A)?;
        println!("n = {n}  N = {}  valuations {:?}", s.precision, s.valuations(8));
    }
    let r = lambda_invariant(d, 3)?;
    println!("lambda = {}  (steps {:?})", r.lambda, r.steps);
    Ok(())
}
