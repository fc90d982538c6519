//! Permutation polynomials `f(x) = x(x^s - a)^t` over `F_{q^n}` with `st = q^m - 1`,
//! their permutation criterion, and closed-form compositional inverses checked
//! against brute-force oracles.

pub mod error;
pub mod field;
pub(crate) mod intmath;

pub use error::{Error, Result};
pub use field::{Elem, FieldCtx, FieldSpec};
pub mod cli;
pub mod family;
pub mod oracle;
pub mod poly;
pub mod special;

pub use family::{ClosedInverse, PPParams};
pub use poly::{DensePoly, SparsePoly};
