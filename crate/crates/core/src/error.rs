use thiserror::Error;

/// Errors raised by the numeric kernel and everything built on it.
///
/// There is no NaN or infinity anywhere in this crate: every domain
/// violation surfaces here instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("result exponent out of range: {0}")]
    Range(String),

    #[error("modulus {modulus} exceeds the supported cap of {cap}")]
    UnsupportedModulus { modulus: u64, cap: u64 },

    #[error(
        "residual vanished at {prec_bits} bits for n={n}, s={s}; retry with more guard bits"
    )]
    PrecisionExhausted { n: usize, s: u32, prec_bits: u32 },

    #[error("precision override of {requested} bits is below the {required} bits required for n={n}, s={s}")]
    InsufficientPrecision {
        requested: u32,
        required: u32,
        n: usize,
        s: u32,
    },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("empty series: {0}")]
    EmptySeries(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
