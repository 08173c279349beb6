//! S-ramified abelian 3-extensions of Q(sqrt 2) and the non-freeness check
//! for a set of inert primes.
//!
//! cargo run --release --example restricted_ramification -- 5 29 11

use ifl::ray::{check_thm16, x_q_trivial, xs_finite_level};
use ifl::units::{fundamental_unit_cf, real_quadratic, unit_order_mod_q};

fn main() -> ifl::Result<()> {
    let mut s: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if s.is_empty() {
        s = vec![5, 29, 11];
    }
    let k = real_quadratic(2)?;
    let eps = fundamental_unit_cf(&k)?.element;
    for &q in &s {
        let ord = unit_order_mod_q(&k, &eps, q)?;
        let triv = x_q_trivial(&k, q, 3).map(|b| b.to_string()).unwrap_or_else(|e| e.to_string());
        println!("q = {q:<4} order of eps mod q: {ord:<6} X_q trivial: {triv}");
    }
    println!("X_S = {}", xs_finite_level(&k, &s, 3)?.describe());
    if s.len() >= 3 {
        let r = check_thm16(&k, &s, 3)?;
        println!("pair {:?}  fires {}", r.pair, r.fires);
        for f in &r.failures {
            println!("  fails: {f}");
        }
        if let Some(c) = r.conclusion {
            println!("  {c}");
        }
    }
    Ok(())
}
