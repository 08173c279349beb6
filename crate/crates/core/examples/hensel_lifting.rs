//! 3-adic roots of a cubic by Hensel lifting, checked modulo 3^n.

use ifl::kernel::padic::{hensel_roots, is_root_mod};
use ifl::kernel::poly::IntPolynomial;

fn main() -> ifl::Result<()> {
    let f = IntPolynomial::parse("x^3 - 3*x^2 + x - 2")?;
    for n in [4u32, 8, 16] {
        let h = hensel_roots(&f, 3, n)?;
        for r in &h.roots {
            println!("n = {n:<2} root {} (mod 3^{n})  ok {}", r.residue(), is_root_mod(&f, r.residue(), 3, n));
        }
    }
    Ok(())
}
