//! π and ln 2, memoized per precision.
//!
//! Both constants come from fixed-point arctangent-type series over small
//! reciprocals. Values are computed per 64-bit precision bucket and handed
//! out truncated, so the bits returned for a given width never depend on
//! which requests happened earlier (or on another thread).

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::{BigFloat, PrecisionContext};

/// Extra fixed-point bits absorbing the per-term truncation of the series.
const SERIES_GUARD: u64 = 32;

const BUCKET: u64 = 64;

type Cache = RwLock<HashMap<u64, BigFloat>>;

static PI: OnceLock<Cache> = OnceLock::new();
static LN2: OnceLock<Cache> = OnceLock::new();

fn cached(cell: &'static OnceLock<Cache>, bits: u64, compute: fn(u64) -> BigFloat) -> BigFloat {
    let cache = cell.get_or_init(|| RwLock::new(HashMap::new()));
    let bucket = bits.div_ceil(BUCKET) * BUCKET;
    let width = PrecisionContext::with_guard(bits as u32, 0).expect("width at least 64");
    if let Some(v) = cache.read().unwrap_or_else(|e| e.into_inner()).get(&bucket) {
        return v.round_to(&width);
    }
    let mut guard = cache.write().unwrap_or_else(|e| e.into_inner());
    let v = guard.entry(bucket).or_insert_with(|| compute(bucket));
    v.round_to(&width)
}

/// π at the working width of `ctx`, from Machin's formula.
pub fn pi(ctx: &PrecisionContext) -> BigFloat {
    cached(&PI, ctx.working_bits().max(64), pi_machin_bits)
}

/// ln 2 at the working width of `ctx`, as `2 atanh(1/3)`.
pub fn ln2(ctx: &PrecisionContext) -> BigFloat {
    cached(&LN2, ctx.working_bits().max(64), ln2_bits)
}

/// π = 16 atan(1/5) − 4 atan(1/239), uncached.
pub fn pi_machin(ctx: &PrecisionContext) -> BigFloat {
    pi_machin_bits(ctx.working_bits()).round_to(ctx)
}

/// π = 176 atan(1/57) + 28 atan(1/239) − 48 atan(1/682) + 96 atan(1/12943)
/// (Størmer), uncached. Shares no series with [`pi_machin`] except the 1/239
/// term, so agreement between the two is a meaningful check.
pub fn pi_stormer(ctx: &PrecisionContext) -> BigFloat {
    let bits = ctx.working_bits() + SERIES_GUARD;
    let sum = atan_inv_fixed(57, bits) * 176i32 + atan_inv_fixed(239, bits) * 28i32
        - atan_inv_fixed(682, bits) * 48i32
        + atan_inv_fixed(12943, bits) * 96i32;
    from_fixed(sum, bits).round_to(ctx)
}

fn pi_machin_bits(bits: u64) -> BigFloat {
    let fb = bits + SERIES_GUARD;
    let sum = atan_inv_fixed(5, fb) * 16i32 - atan_inv_fixed(239, fb) * 4i32;
    from_fixed(sum, fb)
}

fn ln2_bits(bits: u64) -> BigFloat {
    let fb = bits + SERIES_GUARD;
    from_fixed(atanh_inv_fixed(3, fb) * 2i32, fb)
}

fn from_fixed(v: BigInt, frac_bits: u64) -> BigFloat {
    let (sign, mag) = v.into_parts();
    BigFloat::from_parts(sign, mag, -(frac_bits as i64))
}

/// `atan(1/q) * 2^bits`, truncated term by term.
fn atan_inv_fixed(q: u64, bits: u64) -> BigInt {
    inv_series_fixed(q, bits, true)
}

/// `atanh(1/q) * 2^bits`, truncated term by term.
fn atanh_inv_fixed(q: u64, bits: u64) -> BigInt {
    inv_series_fixed(q, bits, false)
}

fn inv_series_fixed(q: u64, bits: u64, alternating: bool) -> BigInt {
    let q2 = BigUint::from(q) * BigUint::from(q);
    let mut power = (BigUint::one() << bits) / BigUint::from(q);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = BigInt::from_biguint(Sign::Plus, &power / BigUint::from(2 * k + 1));
        if alternating && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power /= &q2;
        k += 1;
    }
    sum
}
