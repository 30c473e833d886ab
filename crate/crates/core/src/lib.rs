//! Character sums, finite-field hypergeometric functions, point counts, L-polynomials and
//! high-precision periods for generalized Legendre curves `y^N = x^i (1-x)^j (1-λx)^k`.

pub mod arith;
pub mod charsums;
pub mod curves;
pub mod cyclotomic;
pub mod error;
pub mod ffield;
pub mod hgf;
pub mod parse;
pub mod periods;

pub use error::{Error, Result};
pub use ffield::{FieldElement, FieldSpec};
