//! The prime recursion through a Dirichlet L-series and its error functionals.
//!
//! For the first `n` primes and a character `chi`, the residual
//!
//! ```text
//! R(n, s, chi) = sum_{j=1}^{2p_n - 1} chi(j) j^-s  -  prod_{k=1}^{n} (1 - chi(p_k) p_k^-s)^-1
//! ```
//!
//! behaves like `chi(p_{n+1}) p_{n+1}^-s` for large `s`, so `|R|^(-1/s)`
//! tends to `p_{n+1}`. The sum and product are both close to 1 and agree to
//! about `s log2(p_{n+1})` bits; [`required_precision`] sizes the working
//! precision so that at least 96 significant bits of `R` survive.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::characters::{keller_one, CharValue, DirichletCharacter};
use crate::error::{domain, Error, Result};
use crate::mpnum::{BigComplex, BigFloat, PrecisionContext};
use crate::primes::first_n_primes;

/// Significant bits of the residual preserved by [`required_precision`].
pub const RESIDUAL_BITS: u32 = 96;

fn check_args(n: usize, s: u32) -> Result<()> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    if s == 0 {
        return domain("s must be at least 1");
    }
    Ok(())
}

fn pow_u(base: u64, s: u32) -> BigUint {
    BigUint::from(base).pow(s)
}

/// `chi(j) * x` with quarter turns applied exactly.
fn times_char(
    v: CharValue,
    x: &BigFloat,
    cache: &mut HashMap<CharValue, BigComplex>,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    match v {
        CharValue::Zero => Ok(BigComplex::zero()),
        CharValue::Root { a, m } if 4 % m == 0 => {
            Ok(BigComplex::from_real(x.clone()).rotate_quarter(a * (4 / m)))
        }
        CharValue::Root { .. } => {
            let z = match cache.get(&v) {
                Some(z) => z.clone(),
                None => {
                    let z = v.to_complex(ctx)?;
                    cache.insert(v, z.clone());
                    z
                }
            };
            Ok(z.mul_real(x, ctx))
        }
    }
}

/// `sum_{j=1}^{j_max} chi(j) j^-s`, accumulated in increasing `j`.
pub fn l_partial_sum(
    chi: &DirichletCharacter,
    s: u32,
    j_max: u64,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    if s == 0 || j_max == 0 {
        return domain("partial sum needs s >= 1 and at least one term");
    }
    let mut cache = HashMap::new();
    let mut sum = BigComplex::zero();
    for j in 1..=j_max {
        let v = chi.eval_u64(j);
        if v.is_zero() {
            continue;
        }
        let inv = BigFloat::from_biguint(pow_u(j, s)).recip(ctx)?;
        let term = times_char(v, &inv, &mut cache, ctx)?;
        sum = sum.add(&term, ctx);
    }
    Ok(sum)
}

/// `prod_{p in primes} (1 - chi(p) p^-s)^-1`.
pub fn euler_product_over(
    chi: &DirichletCharacter,
    s: u32,
    primes: &[u64],
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    if s == 0 {
        return domain("s must be at least 1");
    }
    let mut cache = HashMap::new();
    let one = BigComplex::one();
    let mut acc = BigComplex::one();
    for &p in primes {
        let v = chi.eval_u64(p);
        if v.is_zero() {
            continue;
        }
        let inv = BigFloat::from_biguint(pow_u(p, s)).recip(ctx)?;
        let factor = one.sub(&times_char(v, &inv, &mut cache, ctx)?, ctx);
        acc = acc.div(&factor, ctx)?;
    }
    Ok(acc)
}

/// Euler product over the first `n` primes.
pub fn euler_product(
    chi: &DirichletCharacter,
    s: u32,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    check_args(n, s)?;
    euler_product_over(chi, s, &first_n_primes(n)?, ctx)
}

/// `ceil(s log2(2 p_n)) + 96` bits, computed exactly.
pub fn required_precision(n: usize, s: u32) -> Result<PrecisionContext> {
    check_args(n, s)?;
    let p_n = *first_n_primes(n)?.last().expect("n >= 1");
    let bits = (pow_u(2 * p_n, s) - 1u32).bits() as u32;
    PrecisionContext::new((bits + RESIDUAL_BITS).max(crate::mpnum::MIN_PREC_BITS))
}

/// A precision context for `(n, s)`, honouring an override of at least the
/// required number of bits.
pub fn precision_for(n: usize, s: u32, override_bits: Option<u32>) -> Result<PrecisionContext> {
    let need = required_precision(n, s)?;
    match override_bits {
        None => Ok(need),
        Some(b) if b >= need.prec_bits() => PrecisionContext::new(b),
        Some(b) => Err(Error::InsufficientPrecision {
            requested: b,
            required: need.prec_bits(),
            n,
            s,
        }),
    }
}

/// The residual under an explicit context.
pub fn residual_with(
    n: usize,
    s: u32,
    chi: &DirichletCharacter,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    check_args(n, s)?;
    let primes = first_n_primes(n)?;
    let j_max = 2 * primes[n - 1] - 1;
    let sum = l_partial_sum(chi, s, j_max, ctx)?;
    let prod = euler_product_over(chi, s, &primes, ctx)?;
    Ok(sum.sub(&prod, ctx))
}

/// The residual at [`required_precision`]. `s = 1` is accepted, but for the
/// constant-one character the value carries no information about `p_{n+1}`.
pub fn residual(n: usize, s: u32, chi: &DirichletCharacter) -> Result<BigComplex> {
    residual_with(n, s, chi, &required_precision(n, s)?)
}

/// `R(n, s, chi) p_{n+1}^s`, which tends to `chi(p_{n+1})`.
pub fn scaled_residual(n: usize, s: u32, chi: &DirichletCharacter) -> Result<BigComplex> {
    let ctx = required_precision(n, s)?;
    let r = residual_with(n, s, chi, &ctx)?;
    let target = first_n_primes(n + 1)?[n];
    Ok(r.mul_real(&BigFloat::from_biguint(pow_u(target, s)), &ctx))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateStatus {
    Ok,
    /// `chi(p_{n+1}) = 0`: the limit is not `p_{n+1}`.
    TargetCharacterZero,
}

impl EstimateStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            EstimateStatus::Ok => "ok",
            EstimateStatus::TargetCharacterZero => "chi_target_zero",
        }
    }
}

/// One evaluation of the recursion at `(n, s, chi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimateResult {
    pub n: usize,
    pub s: u32,
    pub modulus: u64,
    pub label: u64,
    pub residual: BigComplex,
    /// `|residual|^(-1/s)`.
    pub estimate: BigFloat,
    /// Nearest integer to `estimate`, ties away from zero.
    pub rounded: BigInt,
    /// `p_{n+1}`.
    pub target: u64,
    /// `|target - estimate|`, exact.
    pub error: BigFloat,
    /// `|estimate - rounded|`, exact.
    pub margin: BigFloat,
    pub prec_bits: u32,
    pub status: EstimateStatus,
}

impl EstimateResult {
    pub fn recovers_target(&self) -> bool {
        self.rounded.to_u64() == Some(self.target)
    }
}

pub fn estimate_with(
    n: usize,
    s: u32,
    chi: &DirichletCharacter,
    ctx: &PrecisionContext,
) -> Result<EstimateResult> {
    check_args(n, s)?;
    let target = first_n_primes(n + 1)?[n];
    let residual = residual_with(n, s, chi, ctx)?;
    if residual.is_zero() {
        return Err(Error::PrecisionExhausted {
            n,
            s,
            prec_bits: ctx.prec_bits(),
        });
    }
    let estimate = residual.abs(ctx).inv_root(s, ctx)?;
    let rounded = estimate.round_half_away();
    let error = BigFloat::from_u64(target).sub_exact(&estimate).abs();
    let margin = estimate.sub_exact(&BigFloat::from_bigint(&rounded)).abs();
    let status = if chi.eval_u64(target).is_zero() {
        EstimateStatus::TargetCharacterZero
    } else {
        EstimateStatus::Ok
    };
    Ok(EstimateResult {
        n,
        s,
        modulus: chi.modulus(),
        label: chi.label(),
        residual,
        estimate,
        rounded,
        target,
        error,
        margin,
        prec_bits: ctx.prec_bits(),
        status,
    })
}

/// `|R(n, s, chi)|^(-1/s)` at [`required_precision`].
pub fn estimate(n: usize, s: u32, chi: &DirichletCharacter) -> Result<EstimateResult> {
    estimate_with(n, s, chi, &required_precision(n, s)?)
}

/// `|p_{n+1} - |R(n, s, chi)|^(-1/s)|`. With [`keller_one`] this is the
/// classical error of the zeta-function recursion.
pub fn error_e(n: usize, s: u32, chi: &DirichletCharacter) -> Result<BigFloat> {
    Ok(estimate(n, s, chi)?.error)
}

/// Signed difference `E(n, s, 1) - E(n, s, chi)`; positive when `chi`
/// lands closer to `p_{n+1}` than the constant-one character.
pub fn error_diff_d(n: usize, s: u32, chi: &DirichletCharacter) -> Result<BigFloat> {
    let base = error_e(n, s, &keller_one())?;
    let other = error_e(n, s, chi)?;
    Ok(base.sub_exact(&other))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Signed;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn near(x: &BigFloat, want: &BigRational, rel_bits: i64) -> bool {
        let diff = (x.to_rational() - want).abs();
        let bound = want.abs() * BigRational::from_integer(BigInt::from(2)).pow(rel_bits as i32);
        diff <= bound
    }

    fn chi(k: u64, label: u64) -> DirichletCharacter {
        enumerate_characters(k).unwrap().get(label).unwrap().clone()
    }

    #[test]
    fn harmonic_partial_sum() {
        let v = l_partial_sum(&keller_one(), 1, 5, &ctx(128)).unwrap();
        assert!(v.im.is_zero());
        assert!(near(&v.re, &rat(137, 60), -128));
        let one = l_partial_sum(&chi(5, 3), 7, 1, &ctx(64)).unwrap();
        assert_eq!(one, BigComplex::one());
    }

    #[test]
    fn gaussian_partial_sum_mod_5() {
        // 1 + i/2 - i/3 - 1/4
        let v = l_partial_sum(&chi(5, 2), 1, 4, &ctx(128)).unwrap();
        assert!(near(&v.re, &rat(3, 4), -128));
        assert!(near(&v.im, &rat(1, 6), -128));
    }

    #[test]
    fn euler_product_examples() {
        let c = ctx(128);
        assert_eq!(euler_product(&keller_one(), 1, 1, &c).unwrap(), BigComplex::from_real(BigFloat::from_u64(2)));
        let v = euler_product(&keller_one(), 2, 2, &c).unwrap();
        assert!(near(&v.re, &rat(3, 2), -128));
        // (1 - i/4)^-1 = (16 + 4i)/17
        let v = euler_product(&chi(5, 2), 2, 1, &c).unwrap();
        assert!(near(&v.re, &rat(16, 17), -128));
        assert!(near(&v.im, &rat(4, 17), -128));
    }

    #[test]
    fn precision_sizes() {
        assert_eq!(required_precision(2, 50).unwrap().prec_bits(), 226);
        assert_eq!(required_precision(8, 500).unwrap().prec_bits(), 2720);
        assert_eq!(required_precision(2, 1).unwrap().prec_bits(), 99);
        // 2 p_1 = 4 is a power of two: ceil(s log2 4) = 2s exactly
        assert_eq!(required_precision(1, 10).unwrap().prec_bits(), 20 + 96);
        assert!(precision_for(2, 50, Some(200)).is_err());
        assert_eq!(precision_for(2, 50, Some(300)).unwrap().prec_bits(), 300);
    }

    #[test]
    fn residual_small_cases_against_rationals() {
        // n = 1, s = 4: (1 + 1/16 + 1/81) - 16/15 = 1393/1296 - 16/15
        let r = residual(1, 4, &keller_one()).unwrap();
        let want = rat(1393, 1296) - rat(16, 15);
        assert!(near(&r.re, &want, -96));
        assert!(r.re.is_positive());

        // n = 2, s = 10
        let mut want = BigRational::from_integer(BigInt::from(0));
        for j in 1..=5i64 {
            want += BigRational::new(BigInt::from(1), BigInt::from(j).pow(10));
        }
        let f = |p: i64| {
            let pp = BigInt::from(p).pow(10);
            BigRational::new(pp.clone(), pp - 1)
        };
        want -= f(2) * f(3);
        let r = residual(2, 10, &keller_one()).unwrap();
        assert!(near(&r.re, &want, -96));
        assert!(r.re.to_f64() > 8.46e-8 && r.re.to_f64() < 8.47e-8);
    }

    #[test]
    fn scaled_residual_tends_to_character_value() {
        let z = scaled_residual(2, 200, &keller_one()).unwrap();
        assert!(z.re.sub_exact(&BigFloat::one()).abs().to_f64() < 1e-10);
        assert!(z.im.is_zero());

        let z = scaled_residual(3, 200, &chi(5, 2)).unwrap();
        assert!(z.re.abs().to_f64() < 1e-10);
        assert!((z.im.to_f64() - 1.0).abs() < 1e-10);

        // p_3 = 5 divides the modulus: no unit limit
        let z = scaled_residual(2, 60, &chi(5, 2)).unwrap();
        let c = ctx(64);
        assert!(z.abs(&c).to_f64() < 1e-3);
    }

    #[test]
    fn estimate_recovers_next_prime() {
        let e = estimate(2, 50, &keller_one()).unwrap();
        assert_eq!(e.rounded, BigInt::from(5));
        assert_eq!(e.target, 5);
        assert!(e.recovers_target());
        assert!(e.error.to_f64() < 0.5);
        assert_eq!(e.error, BigFloat::from_u64(5).sub_exact(&e.estimate).abs());
        assert_eq!(e.status, EstimateStatus::Ok);

        let e4 = estimate(4, 50, &chi(4, 1)).unwrap();
        assert_eq!(e4.rounded, BigInt::from(11));
    }

    #[test]
    fn target_zero_is_flagged_not_fatal() {
        let e = estimate(2, 50, &chi(5, 2)).unwrap();
        assert_eq!(e.status, EstimateStatus::TargetCharacterZero);
        assert!(e.estimate.to_f64() > 5.5);
    }

    #[test]
    fn error_difference_signs() {
        let d = error_diff_d(3, 50, &chi(4, 1)).unwrap();
        assert!((d.to_f64() / 2.518e-9 - 1.0).abs() < 0.01);
        assert!(error_diff_d(5, 50, &keller_one()).unwrap().is_zero());
        let d = error_diff_d(4, 50, &chi(4, 1)).unwrap();
        assert!(d.is_negative());
    }

    #[test]
    fn bad_arguments() {
        assert!(residual(0, 5, &keller_one()).is_err());
        assert!(residual(2, 0, &keller_one()).is_err());
        assert!(required_precision(0, 3).is_err());
    }
}
