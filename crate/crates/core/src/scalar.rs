//! Scalar fields the algebra is generic over.
//!
//! Every algorithm in the crate is written against [`Scalar`]. Exact verdicts
//! (rank, semidefiniteness, congruence, synthesis) are only meaningful for the
//! exact implementations, i.e. [`Rational`] and `Ratio<i64>`; the float
//! implementations exist for quick numerical evaluation of parameters.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// A field with a total order, usable as the coefficient type of quantum graphs
/// and as the value type of graph parameters.
pub trait Scalar: Clone + Debug + Display + PartialOrd + Signed + FromPrimitive + Send + Sync + 'static {
    /// `true` when arithmetic is exact, so equality tests are decisions.
    const EXACT: bool;

    fn from_bigint(n: &BigInt) -> Self;

    /// Zero test used by pivoting. Exact types use `is_zero`; floats use a
    /// small absolute threshold.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("i64 fits every scalar type")
    }

    /// `self^e` for a nonnegative exponent.
    fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(n.to_i64().expect("integer overflows Ratio<i64>"))
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_bigint(n: &BigInt) -> Self {
                n.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn is_negligible(&self) -> bool {
                self.abs() <= $eps
            }
        }
    };
}

impl_float_scalar!(f64, 1e-9);
impl_float_scalar!(f32, 1e-4);

/// Parse an exact rational literal: `3`, `-5/2`, `0.25`, or `1e-3`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".to_string()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| Error::Parse(format!("bad numerator in `{t}`")))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| Error::Parse(format!("bad denominator in `{t}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{t}`")))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad rational literal `{t}`")));
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = match digits.as_str() {
        "" | "-" | "+" => return Err(Error::Parse(format!("bad rational literal `{t}`"))),
        d => d,
    };
    let n = BigInt::from_str(digits).map_err(|_| Error::Parse(format!("bad rational literal `{t}`")))?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Reduced-fraction string: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}
