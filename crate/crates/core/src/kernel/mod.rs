//! Exact arithmetic kernel: integers, matrices, polynomials, lattices, p-adics.

pub mod int;
pub mod enumerate;
pub mod lll;
pub mod matrix;
pub mod padic;
pub mod poly;
pub mod polymod;
pub mod zfactor;
