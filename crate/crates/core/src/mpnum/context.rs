use crate::error::{domain, Result};

/// Default number of extra bits carried beneath the requested precision.
pub const DEFAULT_GUARD_BITS: u32 = 96;

/// Smallest working precision accepted by [`PrecisionContext::new`].
pub const MIN_PREC_BITS: u32 = 64;

/// Working precision for a computation.
///
/// Every operation run under a context keeps `prec_bits + guard_bits`
/// mantissa bits and truncates beyond that, so results are faithful at
/// `prec_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    prec_bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub fn new(prec_bits: u32) -> Result<Self> {
        Self::with_guard(prec_bits, DEFAULT_GUARD_BITS)
    }

    pub fn with_guard(prec_bits: u32, guard_bits: u32) -> Result<Self> {
        if prec_bits < MIN_PREC_BITS {
            return domain(format!(
                "precision of {prec_bits} bits is below the minimum of {MIN_PREC_BITS}"
            ));
        }
        Ok(PrecisionContext {
            prec_bits,
            guard_bits,
        })
    }

    pub fn prec_bits(&self) -> u32 {
        self.prec_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Total mantissa width kept by operations under this context.
    pub fn working_bits(&self) -> u64 {
        self.prec_bits as u64 + self.guard_bits as u64
    }

    /// A context with `extra` more precision bits and the same guard.
    pub fn widened(&self, extra: u32) -> Self {
        PrecisionContext {
            prec_bits: self.prec_bits + extra,
            guard_bits: self.guard_bits,
        }
    }
}
