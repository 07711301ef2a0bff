//! Prime recursion through Dirichlet L-functions.
//!
//! Given the first `n` primes and a Dirichlet character `chi`, the quantity
//!
//! ```text
//! | sum_{j=1}^{2p_n - 1} chi(j) j^-s  -  prod_{k=1}^{n} (1 - chi(p_k) p_k^-s)^-1 |^(-1/s)
//! ```
//!
//! converges to `p_{n+1}` as `s` grows. With the constant-one character this
//! is the zeta-function recursion; other characters give the L-function
//! generalization.
//!
//! Modules:
//! - [`mpnum`]: multiprecision floats, complex values, exp/ln/pi/roots of unity
//! - [`characters`]: exact Dirichlet characters and their groups
//! - [`primes`]: the first `n` primes
//! - [`recursion`]: residual, estimate and the error functionals `E`, `D`
//! - [`analysis`]: `-ln E` series, least-squares fits, error-difference tables
//! - [`export`]: CSV/JSON row types
//! - [`oracle`], [`verify`]: exact reference computations and self-checks
//!
//! ```
//! use keller_core::{characters::keller_one, recursion::estimate};
//!
//! let e = estimate(2, 50, &keller_one()).unwrap();
//! assert_eq!(e.target, 5);
//! assert!(e.recovers_target());
//! ```

pub mod analysis;
pub mod characters;
pub mod error;
pub mod export;
pub mod mpnum;
pub mod oracle;
pub mod primes;
pub mod recursion;
pub mod verify;

pub use characters::{
    char_product, chi_eval, enumerate_characters, keller_one, unit_group, CharValue,
    CharacterGroup, DirichletCharacter, UnitGroupStructure,
};
pub use error::{Error, Result};
pub use mpnum::{BigComplex, BigFloat, PrecisionContext};
pub use recursion::{
    error_diff_d, error_e, estimate, required_precision, residual, scaled_residual,
    EstimateResult, EstimateStatus,
};
