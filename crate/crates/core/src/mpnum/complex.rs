use num_integer::Integer;

use super::{consts, BigFloat, PrecisionContext};
use crate::error::{domain, Error, Result};

/// Complex value with [`BigFloat`] components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: BigFloat) -> Self {
        BigComplex {
            re,
            im: BigFloat::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_real(BigFloat::zero())
    }

    pub fn one() -> Self {
        Self::from_real(BigFloat::one())
    }

    pub fn i() -> Self {
        BigComplex::new(BigFloat::zero(), BigFloat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Self {
        BigComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), self.im.neg())
    }

    pub fn add(&self, o: &Self, ctx: &PrecisionContext) -> Self {
        BigComplex::new(self.re.add(&o.re, ctx), self.im.add(&o.im, ctx))
    }

    pub fn sub(&self, o: &Self, ctx: &PrecisionContext) -> Self {
        BigComplex::new(self.re.sub(&o.re, ctx), self.im.sub(&o.im, ctx))
    }

    /// Products are formed exactly and each component is rounded once.
    pub fn mul(&self, o: &Self, ctx: &PrecisionContext) -> Self {
        let re = self.re.mul_exact(&o.re).sub(&self.im.mul_exact(&o.im), ctx);
        let im = self.re.mul_exact(&o.im).add(&self.im.mul_exact(&o.re), ctx);
        BigComplex::new(re, im)
    }

    pub fn mul_real(&self, x: &BigFloat, ctx: &PrecisionContext) -> Self {
        BigComplex::new(self.re.mul(x, ctx), self.im.mul(x, ctx))
    }

    /// Exact multiplication by `i^q`.
    pub fn rotate_quarter(&self, q: u64) -> Self {
        match q % 4 {
            0 => self.clone(),
            1 => BigComplex::new(self.im.neg(), self.re.clone()),
            2 => self.neg(),
            _ => BigComplex::new(self.im.clone(), self.re.neg()),
        }
    }

    /// `re^2 + im^2`, exact.
    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul_exact(&self.re).add_exact(&self.im.mul_exact(&self.im))
    }

    /// `(a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)`.
    pub fn div(&self, o: &Self, ctx: &PrecisionContext) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if o.im.is_zero() {
            return Ok(BigComplex::new(self.re.div(&o.re, ctx)?, self.im.div(&o.re, ctx)?));
        }
        let den = o.norm_sqr();
        let re = self.re.mul_exact(&o.re).add_exact(&self.im.mul_exact(&o.im));
        let im = self.im.mul_exact(&o.re).sub_exact(&self.re.mul_exact(&o.im));
        Ok(BigComplex::new(re.div(&den, ctx)?, im.div(&den, ctx)?))
    }

    pub fn recip(&self, ctx: &PrecisionContext) -> Result<Self> {
        Self::one().div(self, ctx)
    }

    /// `|z| = sqrt(re^2 + im^2)`.
    pub fn abs(&self, ctx: &PrecisionContext) -> BigFloat {
        if self.im.is_zero() {
            return self.re.abs().round_to(ctx);
        }
        if self.re.is_zero() {
            return self.im.abs().round_to(ctx);
        }
        self.norm_sqr()
            .sqrt(ctx)
            .expect("sum of squares is non-negative")
    }

    /// `z^e` by binary exponentiation; `0^0` is a domain error.
    pub fn pow_int(&self, e: u64, ctx: &PrecisionContext) -> Result<Self> {
        if e == 0 {
            if self.is_zero() {
                return domain("0^0 is undefined");
            }
            return Ok(Self::one());
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ctx);
            }
        }
        Ok(acc)
    }
}

/// `|z|`.
pub fn complex_abs(z: &BigComplex, ctx: &PrecisionContext) -> BigFloat {
    z.abs(ctx)
}

/// `e^(2 pi i a/m)`.
///
/// Multiples of a quarter turn are exact. Otherwise the angle is folded
/// into `[0, pi/4]` by quadrant and complement symmetry before summing the
/// sine and cosine series.
pub fn root_of_unity(a: i64, m: u64, ctx: &PrecisionContext) -> Result<BigComplex> {
    if m == 0 {
        return domain("root of unity with zero order");
    }
    let a = a.rem_euclid(m as i64) as u64;
    let g = a.gcd(&m);
    let (a, m) = (a / g, m / g);

    // angle = (pi/2) (quadrant + r/m)
    let quadrant = (4 * a as u128 / m as u128) as u64;
    let r = (4 * a as u128 - quadrant as u128 * m as u128) as u64;
    if r == 0 {
        return Ok(BigComplex::one().rotate_quarter(quadrant));
    }
    let (num, swap) = if 2 * r > m { (m - r, true) } else { (r, false) };
    let wctx = ctx.widened(16);
    let phi = consts::pi(&wctx)
        .mul_u64(num, &wctx)
        .div_u64(2 * m, &wctx)?;
    let (c, s) = cos_sin_small(&phi, &wctx)?;
    let (c, s) = if swap { (s, c) } else { (c, s) };
    let base = BigComplex::new(c.round_to(ctx), s.round_to(ctx));
    Ok(base.rotate_quarter(quadrant))
}

/// Taylor series for cos and sin at `0 < phi <= pi/4`.
fn cos_sin_small(phi: &BigFloat, ctx: &PrecisionContext) -> Result<(BigFloat, BigFloat)> {
    let floor = -(ctx.working_bits() as i64) - 4;
    let mut cos = BigFloat::one();
    let mut sin = BigFloat::zero();
    let mut term = BigFloat::one();
    let mut n = 1u64;
    loop {
        term = term.mul(phi, ctx).div_u64(n, ctx)?;
        if term.is_zero() || term.magnitude_bits().unwrap_or(i64::MIN) < floor {
            break;
        }
        // term = phi^n / n!, sign pattern by n mod 4
        match n % 4 {
            1 => sin = sin.add(&term, ctx),
            2 => cos = cos.sub(&term, ctx),
            3 => sin = sin.sub(&term, ctx),
            _ => cos = cos.add(&term, ctx),
        }
        n += 1;
    }
    Ok((cos, sin))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    fn small(x: &BigFloat, bits: i64) -> bool {
        x.is_zero() || x.magnitude_bits().unwrap() <= bits
    }

    #[test]
    fn i_squared() {
        let c = ctx(64);
        assert_eq!(BigComplex::i().mul(&BigComplex::i(), &c), BigComplex::one().neg());
        assert_eq!(BigComplex::i().pow_int(2, &c).unwrap(), BigComplex::one().neg());
        assert!(BigComplex::zero().pow_int(0, &c).is_err());
    }

    #[test]
    fn division_matches_conjugate_formula() {
        let c = ctx(128);
        // (1 - i/4)^-1 = (16 + 4i)/17
        let z = BigComplex::new(BigFloat::one(), BigFloat::from_f64(-0.25).unwrap());
        let q = z.recip(&c).unwrap();
        let re = BigFloat::from_u64(16).div_u64(17, &c).unwrap();
        let im = BigFloat::from_u64(4).div_u64(17, &c).unwrap();
        assert!(small(&q.re.sub_exact(&re), -200));
        assert!(small(&q.im.sub_exact(&im), -200));
        assert_eq!(z.div(&BigComplex::zero(), &c), Err(Error::DivisionByZero));
    }

    #[test]
    fn abs_of_pythagorean_triple() {
        let c = ctx(64);
        let z = BigComplex::new(BigFloat::from_u64(3), BigFloat::from_u64(4));
        assert_eq!(complex_abs(&z, &c), BigFloat::from_u64(5));
        assert!(complex_abs(&BigComplex::zero(), &c).is_zero());
    }

    #[test]
    fn exact_quarter_turns() {
        let c = ctx(64);
        assert_eq!(root_of_unity(0, 1, &c).unwrap(), BigComplex::one());
        assert_eq!(root_of_unity(1, 4, &c).unwrap(), BigComplex::i());
        assert_eq!(root_of_unity(3, 4, &c).unwrap(), BigComplex::i().neg());
        assert_eq!(root_of_unity(1, 2, &c).unwrap(), BigComplex::one().neg());
        assert_eq!(root_of_unity(-1, 4, &c).unwrap(), BigComplex::i().neg());
        assert_eq!(root_of_unity(6, 8, &c).unwrap(), BigComplex::i().neg());
        assert!(root_of_unity(1, 0, &c).is_err());
    }

    #[test]
    fn sixth_root_against_sqrt_oracle() {
        let c = ctx(256);
        let z = root_of_unity(1, 6, &c).unwrap();
        let half = BigFloat::one().ldexp(-1);
        let s3 = BigFloat::from_u64(3).sqrt(&c).unwrap().ldexp(-1);
        assert!(small(&z.re.sub_exact(&half), -255));
        assert!(small(&z.im.sub_exact(&s3), -255));
        assert!(z.im.to_sci_string(9).starts_with("8.6602540"));
    }

    #[test]
    fn eighth_root_is_diagonal() {
        let c = ctx(256);
        let z = root_of_unity(3, 8, &c).unwrap();
        let h = BigFloat::from_u64(2).sqrt(&c).unwrap().ldexp(-1);
        assert!(small(&z.re.add_exact(&h), -255));
        assert!(small(&z.im.sub_exact(&h), -255));
    }
}
