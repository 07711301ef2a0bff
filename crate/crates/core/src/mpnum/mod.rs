//! Multiprecision real and complex arithmetic.
//!
//! [`BigFloat`] is a binary floating-point value over a big-integer
//! mantissa. Precision lives in a [`PrecisionContext`] passed to each
//! operation rather than in the values themselves.

mod complex;
pub mod consts;
mod context;
mod decimal;
mod float;
mod transcendental;

pub use complex::{complex_abs, root_of_unity, BigComplex};
pub use consts::pi;
pub use context::{PrecisionContext, DEFAULT_GUARD_BITS, MIN_PREC_BITS};
pub use float::BigFloat;
pub use transcendental::{inv_root, EXP_ARG_LIMIT_BITS};
