//! Scalar abstraction over the two coefficient backends: exact big
//! rationals and `f64`.
//!
//! Polynomial identities (orthogonality, jumps, the p = 2 constants) are
//! verified in exact arithmetic; optimization loops run in floating point.
//! Everything generic in this crate is written against [`Scalar`] so the
//! same construction code serves both backends.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Coefficient type for polynomials and piecewise polynomials.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + Signed + fmt::Debug + fmt::Display + 'static
{
    /// True for backends with no rounding error.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// Build `num/den` from exact big integers. `den` must be nonzero.
    fn from_big_ratio(num: BigInt, den: BigInt) -> Self;

    fn to_f64(&self) -> f64;

    /// `self / 2`, used by bisection.
    fn half(&self) -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_big_ratio(num: BigInt, den: BigInt) -> Self {
        ToPrimitive::to_f64(&BigRational::new(num, den)).expect("ratio representable as f64")
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn half(&self) -> Self {
        0.5 * self
    }
}

/// Exact backend: arbitrary-precision rationals. Closed under all ring
/// and calculus operations used here, so identities hold bit-for-bit and
/// integer growth can never wrap silently.
pub type Rational = BigRational;

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_big_ratio(num: BigInt, den: BigInt) -> Self {
        BigRational::new(num, den)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn half(&self) -> Self {
        self / BigRational::from_integer(BigInt::from(2))
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Convert a big integer to a scalar.
pub fn scalar_from_bigint<T: Scalar>(v: BigInt) -> T {
    T::from_big_ratio(v, BigInt::one())
}

/// Rational scalar from small integers.
pub fn ratio<T: Scalar>(num: i64, den: i64) -> T {
    T::from_big_ratio(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion of a finite float into any backend.
pub fn scalar_from_f64<T: Scalar>(v: f64) -> T {
    let r = BigRational::from_float(v).expect("finite float");
    T::from_big_ratio(r.numer().clone(), r.denom().clone())
}
