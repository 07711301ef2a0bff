//! Decimal rendering with an explicit number of significant digits.

use num_bigint::{BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::BigFloat;


impl BigFloat {
    /// Scientific notation with `digits` significant digits, rounded half to
    /// even from the exact binary value: `-1.2340e-7`.
    ///
    /// The layout matches Rust's `{:e}` formatting for `f64`, so the output
    /// parses back with `str::parse::<f64>`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format_digits("0".repeat(digits), 0, false);
        }
        let top = self.exponent() + self.mantissa().bits() as i64;
        let mut e10 = ((top - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let upper = BigUint::from(10u32).pow(digits as u32);
        let lower = BigUint::from(10u32).pow(digits as u32 - 1);
        let n = loop {
            let n = scaled_round_half_even(self.mantissa(), self.exponent(), digits as i64 - 1 - e10);
            if n >= upper {
                e10 += 1;
            } else if n < lower {
                e10 -= 1;
            } else {
                break n;
            }
        };
        format_digits(n.to_str_radix(10), e10, self.sign() == Sign::Minus)
    }
}

/// `round_half_even(mant * 2^exp * 10^k)`.
fn scaled_round_half_even(mant: &BigUint, exp: i64, k: i64) -> BigUint {
    let ten = BigUint::from(10u32);
    let mut num = mant.clone();
    let mut den = BigUint::one();
    if exp >= 0 {
        num <<= exp as u64;
    } else {
        den <<= (-exp) as u64;
    }
    if k >= 0 {
        num *= ten.pow(k as u32);
    } else {
        den *= ten.pow((-k) as u32);
    }
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        return q;
    }
    let twice = r << 1u32;
    if twice > den || (twice == den && q.is_odd()) {
        q + 1u32
    } else {
        q
    }
}

fn format_digits(s: String, e10: i64, negative: bool) -> String {
    let sign = if negative { "-" } else { "" };
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}
