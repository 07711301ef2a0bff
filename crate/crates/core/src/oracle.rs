//! Exact reference computations used to cross-check the multiprecision path.
//!
//! Everything here works over Gaussian rationals `Q(i)`, so it applies to
//! characters whose values are fourth roots of unity (every character mod
//! 1, 3, 4, 5, 8, among others). Nothing in this module touches `BigFloat`
//! arithmetic except the final comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::characters::{CharValue, DirichletCharacter};
use crate::error::{domain, Result};
use crate::mpnum::BigComplex;
use crate::primes::first_n_primes;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn zero() -> Self {
        GaussRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational {
            re,
            im: BigRational::zero(),
        }
    }

    /// `i^q` for the character value, or `None` if it is not a fourth root of unity.
    pub fn from_char(v: CharValue) -> Option<Self> {
        let (a, m) = match v {
            CharValue::Zero => return Some(Self::zero()),
            CharValue::Root { a, m } => (a, m),
        };
        if 4 % m != 0 {
            return None;
        }
        let one = BigRational::one();
        let z = BigRational::zero();
        Some(match a * (4 / m) % 4 {
            0 => GaussRational { re: one, im: z },
            1 => GaussRational { re: z, im: one },
            2 => GaussRational { re: -one, im: z },
            _ => GaussRational { re: z, im: -one },
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, x: &BigRational) -> Self {
        GaussRational {
            re: &self.re * x,
            im: &self.im * x,
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        let d = self.norm_sqr();
        if d.is_zero() {
            return None;
        }
        Some(GaussRational {
            re: &self.re / &d,
            im: -&self.im / &d,
        })
    }

    pub fn from_big_complex(z: &BigComplex) -> Self {
        GaussRational {
            re: z.re.to_rational(),
            im: z.im.to_rational(),
        }
    }
}

fn inv_pow(j: u64, s: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(j).pow(s))
}

fn gauss_value(chi: &DirichletCharacter, n: u64) -> Result<GaussRational> {
    match GaussRational::from_char(chi.eval_u64(n)) {
        Some(v) => Ok(v),
        None => domain(format!(
            "{} takes values outside the fourth roots of unity",
            chi.name()
        )),
    }
}

/// The residual `sum_{j < 2p_n} chi(j) j^-s - prod_{k<=n} (1 - chi(p_k) p_k^-s)^-1`
/// in exact arithmetic.
pub fn residual_exact(n: usize, s: u32, chi: &DirichletCharacter) -> Result<GaussRational> {
    if n == 0 || s == 0 {
        return domain("n and s must be positive");
    }
    let primes = first_n_primes(n)?;
    let j_max = 2 * primes[n - 1] - 1;
    let mut sum = GaussRational::zero();
    for j in 1..=j_max {
        sum = sum.add(&gauss_value(chi, j)?.scale(&inv_pow(j, s)));
    }
    let mut prod = GaussRational::one();
    for &p in primes.iter() {
        let factor = GaussRational::one().sub(&gauss_value(chi, p)?.scale(&inv_pow(p, s)));
        prod = prod.mul(&factor.recip().expect("|chi(p) p^-s| < 1"));
    }
    Ok(sum.sub(&prod))
}

/// `|approx - exact| <= 2^-rel_bits |exact|`, decided in exact arithmetic.
pub fn agrees(approx: &BigComplex, exact: &GaussRational, rel_bits: u32) -> bool {
    let diff = GaussRational::from_big_complex(approx).sub(exact).norm_sqr();
    let scale = BigRational::from_integer(BigInt::one() << (2 * rel_bits as usize));
    diff * scale <= exact.norm_sqr()
}

/// Relative error `|approx - exact| / |exact|` as a double, for reporting.
pub fn relative_error(approx: &BigComplex, exact: &GaussRational) -> f64 {
    let diff = GaussRational::from_big_complex(approx).sub(exact).norm_sqr();
    let den = exact.norm_sqr();
    if den.is_zero() {
        return if diff.is_zero() { 0.0 } else { f64::INFINITY };
    }
    let q = (diff / den).abs();
    // ratios can be far below the double range; go through the bit lengths
    let nb = q.numer().bits() as f64;
    let db = q.denom().bits() as f64;
    if q.is_zero() {
        0.0
    } else {
        2f64.powf((nb - db) / 2.0)
    }
}
