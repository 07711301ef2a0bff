use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::PrecisionContext;
use crate::error::{domain, Error, Result};

/// Arbitrary-precision binary floating-point value, `sign * mantissa * 2^exponent`.
///
/// Values are kept canonical: zero has `Sign::NoSign` and a zero mantissa,
/// and a nonzero mantissa is odd. Two equal values therefore compare equal
/// structurally, which is what makes repeated runs bit-identical.
///
/// The value itself carries no precision. Each arithmetic method takes a
/// [`PrecisionContext`] and truncates its result to the context's working
/// width, which gives faithful (at most one ulp) rounding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigFloat {
    sign: Sign,
    mant: BigUint,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            sign: Sign::NoSign,
            mant: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_parts(Sign::Plus, BigUint::from(v), 0)
    }

    pub fn from_i64(v: i64) -> Self {
        let sign = if v < 0 { Sign::Minus } else { Sign::Plus };
        Self::from_parts(sign, BigUint::from(v.unsigned_abs()), 0)
    }

    pub fn from_biguint(v: BigUint) -> Self {
        Self::from_parts(Sign::Plus, v, 0)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::from_parts(v.sign(), v.magnitude().clone(), 0)
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return domain(format!("cannot represent non-finite value {v}"));
        }
        if v == 0.0 {
            return Ok(Self::zero());
        }
        let bits = v.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let sign = if v < 0.0 { Sign::Minus } else { Sign::Plus };
        Ok(Self::from_parts(sign, BigUint::from(m), e))
    }

    /// Exact value of `num / den` rounded under `ctx`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, ctx: &PrecisionContext) -> Result<Self> {
        Self::from_bigint(num).div(&Self::from_bigint(den), ctx)
    }

    /// Builds a canonical value without rounding.
    pub(crate) fn from_parts(sign: Sign, mant: BigUint, exp: i64) -> Self {
        Self::rounded(sign, mant, exp, None)
    }

    /// Truncates the mantissa to `bits` (when given) and strips trailing zeros.
    fn rounded(sign: Sign, mut mant: BigUint, mut exp: i64, bits: Option<u64>) -> Self {
        if mant.is_zero() || sign == Sign::NoSign {
            return Self::zero();
        }
        if let Some(width) = bits {
            let have = mant.bits();
            if have > width {
                let drop = have - width;
                mant >>= drop;
                exp += drop as i64;
            }
        }
        if let Some(tz) = mant.trailing_zeros() {
            if tz > 0 {
                mant >>= tz;
                exp += tz as i64;
            }
        }
        BigFloat { sign, mant, exp }
    }

    /// This value truncated to the working width of `ctx`.
    pub fn round_to(&self, ctx: &PrecisionContext) -> Self {
        Self::rounded(
            self.sign,
            self.mant.clone(),
            self.exp,
            Some(ctx.working_bits()),
        )
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::NoSign
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Plus
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// `floor(log2 |x|) + 1` for nonzero `x`; `None` for zero.
    pub fn magnitude_bits(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64)
        }
    }

    pub fn neg(&self) -> Self {
        let sign = match self.sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::NoSign => Sign::NoSign,
        };
        BigFloat {
            sign,
            mant: self.mant.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn ldexp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        BigFloat {
            sign: self.sign,
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add(&self, other: &Self, ctx: &PrecisionContext) -> Self {
        self.add_signed(other, false, Some(ctx.working_bits()))
    }

    pub fn sub(&self, other: &Self, ctx: &PrecisionContext) -> Self {
        self.add_signed(other, true, Some(ctx.working_bits()))
    }

    /// Exact sum; the result grows to whatever width the operands need.
    pub fn add_exact(&self, other: &Self) -> Self {
        self.add_signed(other, false, None)
    }

    /// Exact difference.
    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_signed(other, true, None)
    }

    fn add_signed(&self, other: &Self, negate: bool, bits: Option<u64>) -> Self {
        let other_sign = if negate {
            -other.sign
        } else {
            other.sign
        };
        if other.is_zero() {
            return Self::rounded(self.sign, self.mant.clone(), self.exp, bits);
        }
        if self.is_zero() {
            return Self::rounded(other_sign, other.mant.clone(), other.exp, bits);
        }

        let top = (self.exp + self.mant.bits() as i64).max(other.exp + other.mant.bits() as i64);
        let mut low = self.exp.min(other.exp);
        if let Some(width) = bits {
            // Bits this far below the leading bit cannot reach the kept mantissa.
            low = low.max(top - width as i64 - 8);
        }
        let a = BigInt::from_biguint(self.sign, align(&self.mant, self.exp, low));
        let b = BigInt::from_biguint(other_sign, align(&other.mant, other.exp, low));
        let sum = a + b;
        let (sign, mag) = sum.into_parts();
        Self::rounded(sign, mag, low, bits)
    }

    pub fn mul(&self, other: &Self, ctx: &PrecisionContext) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::rounded(
            self.sign * other.sign,
            &self.mant * &other.mant,
            self.exp + other.exp,
            Some(ctx.working_bits()),
        )
    }

    /// Exact product, no truncation.
    pub fn mul_exact(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::rounded(
            self.sign * other.sign,
            &self.mant * &other.mant,
            self.exp + other.exp,
            None,
        )
    }

    pub fn square(&self, ctx: &PrecisionContext) -> Self {
        self.mul(self, ctx)
    }

    pub fn mul_u64(&self, v: u64, ctx: &PrecisionContext) -> Self {
        if v == 0 || self.is_zero() {
            return Self::zero();
        }
        Self::rounded(
            self.sign,
            &self.mant * BigUint::from(v),
            self.exp,
            Some(ctx.working_bits()),
        )
    }

    pub fn div(&self, other: &Self, ctx: &PrecisionContext) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let want = ctx.working_bits() + 2 + other.mant.bits();
        let shift = want.saturating_sub(self.mant.bits());
        let q = (&self.mant << shift) / &other.mant;
        Ok(Self::rounded(
            self.sign * other.sign,
            q,
            self.exp - other.exp - shift as i64,
            Some(ctx.working_bits()),
        ))
    }

    pub fn div_u64(&self, d: u64, ctx: &PrecisionContext) -> Result<Self> {
        self.div(&Self::from_u64(d), ctx)
    }

    pub fn recip(&self, ctx: &PrecisionContext) -> Result<Self> {
        Self::one().div(self, ctx)
    }

    /// Square root via Newton iteration on the integer mantissa.
    pub fn sqrt(&self, ctx: &PrecisionContext) -> Result<Self> {
        if self.is_negative() {
            return domain("square root of a negative value");
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let want = 2 * ctx.working_bits() + 2;
        let mut shift = want.saturating_sub(self.mant.bits()) as i64;
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let root = (&self.mant << shift as u64).sqrt();
        Ok(Self::rounded(
            Sign::Plus,
            root,
            (self.exp - shift) / 2,
            Some(ctx.working_bits()),
        ))
    }

    /// Compares `|self|` with `|other|`.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let ta = self.exp + self.mant.bits() as i64;
        let tb = other.exp + other.mant.bits() as i64;
        if ta != tb {
            return ta.cmp(&tb);
        }
        let low = self.exp.min(other.exp);
        align(&self.mant, self.exp, low).cmp(&align(&other.mant, other.exp, low))
    }

    /// Nearest double. Magnitudes outside the double range saturate to zero
    /// or infinity; callers use this only for O(1)..O(1e4) quantities.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.mant.bits();
        let (top, mut e) = if b > 64 {
            ((&self.mant >> (b - 64)).to_u64().unwrap_or(u64::MAX), self.exp + (b - 64) as i64)
        } else {
            (self.mant.to_u64().unwrap_or(u64::MAX), self.exp)
        };
        let mut v = top as f64;
        while e > 0 {
            let step = e.min(1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(1000);
            v /= 2f64.powi(step as i32);
            e += step;
        }
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Nearest integer, ties rounded away from zero.
    pub fn round_half_away(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let mag = if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            let s = (-self.exp) as u64;
            let int = &self.mant >> s;
            let frac = &self.mant - (&int << s);
            let half = BigUint::one() << (s - 1);
            if frac >= half {
                int + 1u32
            } else {
                int
            }
        };
        BigInt::from_biguint(self.sign, mag)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        if self.exp >= 0 {
            return BigInt::from_biguint(self.sign, &self.mant << self.exp as u64);
        }
        let s = (-self.exp) as u64;
        let int = &self.mant >> s;
        let exact = (&int << s) == self.mant;
        match self.sign {
            Sign::Minus if !exact => -BigInt::from(int + 1u32),
            _ => BigInt::from_biguint(self.sign, int),
        }
    }

    /// The exact rational value.
    pub fn to_rational(&self) -> BigRational {
        let m = BigInt::from_biguint(self.sign, self.mant.clone());
        if self.exp >= 0 {
            BigRational::from_integer(m << self.exp as u64)
        } else {
            BigRational::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }
}

fn align(mant: &BigUint, exp: i64, low: i64) -> BigUint {
    if exp >= low {
        mant << (exp - low) as u64
    } else {
        mant >> (low - exp) as u64
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |s: Sign| match s {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        match rank(self.sign).cmp(&rank(other.sign)) {
            Ordering::Equal => match self.sign {
                Sign::Plus => self.cmp_abs(other),
                Sign::Minus => other.cmp_abs(self),
                Sign::NoSign => Ordering::Equal,
            },
            ord => ord,
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20).max(1);
        f.write_str(&self.to_sci_string(digits))
    }
}
