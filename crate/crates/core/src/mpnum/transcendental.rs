//! exp, ln and the `x^(-1/s)` root used by the recursion.
//!
//! Argument reduction:
//! - `exp(x)`: write `x = k ln2 + r` with `|r| <= ln2/2`, scale `r` down by
//!   `2^t` with `t ~ sqrt(width)/2`, sum the Taylor series, square `t` times,
//!   then scale by `2^k`.
//! - `ln(x)`: write `x = m 2^e` with `m` in `[1/sqrt2, sqrt2)`, then
//!   `ln x = 2 atanh((m-1)/(m+1)) + e ln2`. The atanh argument is at most
//!   0.172, so each series term gains about five bits.
//!
//! Both run at widened precision and truncate to the caller's context at
//! the end.

use super::{consts, BigFloat, PrecisionContext};
use crate::error::{domain, Error, Result};

/// `exp` rejects arguments with `|x| >= 2^EXP_ARG_LIMIT_BITS`; the result
/// exponent would no longer be representable.
pub const EXP_ARG_LIMIT_BITS: i64 = 40;

fn widen(ctx: &PrecisionContext, extra: u64) -> PrecisionContext {
    ctx.widened(extra as u32)
}

fn bit_len(v: u64) -> u64 {
    (u64::BITS - v.leading_zeros()) as u64
}

impl BigFloat {
    pub fn exp(&self, ctx: &PrecisionContext) -> Result<BigFloat> {
        if self.is_zero() {
            return Ok(BigFloat::one());
        }
        let mag = self.magnitude_bits().unwrap_or(0);
        if mag > EXP_ARG_LIMIT_BITS {
            return Err(Error::Range(format!(
                "exp argument magnitude 2^{mag} exceeds 2^{EXP_ARG_LIMIT_BITS}"
            )));
        }
        let halvings = ((ctx.working_bits() as f64).sqrt() / 2.0).ceil() as u64 + 1;
        let k = (self.to_f64() / std::f64::consts::LN_2).round() as i64;
        let wctx = widen(ctx, halvings + 32 + bit_len(k.unsigned_abs()));

        let reduced = if k == 0 {
            self.clone()
        } else {
            let shift = consts::ln2(&wctx).mul(&BigFloat::from_i64(k), &wctx);
            self.sub(&shift, &wctx)
        };
        let r = reduced.ldexp(-(halvings as i64));

        let floor = -(wctx.working_bits() as i64) - 2;
        let mut sum = BigFloat::one();
        let mut term = BigFloat::one();
        let mut n = 1u64;
        loop {
            term = term.mul(&r, &wctx).div_u64(n, &wctx)?;
            if term.is_zero() || term.magnitude_bits().unwrap_or(i64::MIN) < floor {
                break;
            }
            sum = sum.add(&term, &wctx);
            n += 1;
        }
        for _ in 0..halvings {
            sum = sum.square(&wctx);
        }
        Ok(sum.ldexp(k).round_to(ctx))
    }

    pub fn ln(&self, ctx: &PrecisionContext) -> Result<BigFloat> {
        if !self.is_positive() {
            return domain("logarithm of a non-positive value");
        }
        let mut e = self.magnitude_bits().unwrap_or(0) - 1;
        let mut m = self.ldexp(-e);
        // m is in [1, 2); fold the top half down to [1/sqrt2, 1).
        if m.to_f64() > std::f64::consts::SQRT_2 {
            e += 1;
            m = m.ldexp(-1);
        }
        let wctx = widen(ctx, 32 + bit_len(e.unsigned_abs()));

        let one = BigFloat::one();
        let z = m.sub(&one, &wctx).div(&m.add(&one, &wctx), &wctx)?;
        let mut sum = z.clone();
        if !z.is_zero() {
            let z2 = z.square(&wctx);
            let floor = z.magnitude_bits().unwrap_or(0) - wctx.working_bits() as i64 - 2;
            let mut power = z.clone();
            let mut k = 1u64;
            loop {
                power = power.mul(&z2, &wctx);
                let term = power.div_u64(2 * k + 1, &wctx)?;
                if term.is_zero() || term.magnitude_bits().unwrap_or(i64::MIN) < floor {
                    break;
                }
                sum = sum.add(&term, &wctx);
                k += 1;
            }
        }
        let mut out = sum.ldexp(1);
        if e != 0 {
            let scaled = consts::ln2(&wctx).mul(&BigFloat::from_i64(e), &wctx);
            out = out.add(&scaled, &wctx);
        }
        Ok(out.round_to(ctx))
    }

    /// `x^(-1/s) = exp(-ln(x) / s)`.
    pub fn inv_root(&self, s: u32, ctx: &PrecisionContext) -> Result<BigFloat> {
        if s == 0 {
            return domain("root index must be positive");
        }
        if !self.is_positive() {
            return domain("inverse root of a non-positive value");
        }
        let wctx = widen(ctx, 16 + bit_len(s as u64));
        let l = self.ln(&wctx)?;
        let arg = l.div_u64(s as u64, &wctx)?.neg();
        Ok(arg.exp(&wctx)?.round_to(ctx))
    }

    /// `self^e` by binary exponentiation.
    pub fn pow_int(&self, e: u64, ctx: &PrecisionContext) -> Result<BigFloat> {
        if e == 0 {
            if self.is_zero() {
                return domain("0^0 is undefined");
            }
            return Ok(BigFloat::one());
        }
        let mut base = self.round_to(ctx);
        let mut acc = BigFloat::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            e >>= 1;
            if e > 0 {
                base = base.square(ctx);
            }
        }
        Ok(acc)
    }
}

/// `x^(-1/s)`.
pub fn inv_root(x: &BigFloat, s: u32, ctx: &PrecisionContext) -> Result<BigFloat> {
    x.inv_root(s, ctx)
}
