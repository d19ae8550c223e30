//! Exact scalar tower: GF(p), rationals and cyclotomic numbers.

pub mod cyclotomic;
pub mod fp;

pub use cyclotomic::{cyclotomic_poly, CycloOp, Cyclotomic, Rational};
pub use fp::{Fp, FpOp};
