//! Exact scalar types.
//!
//! Everything in this workspace is exact: the scalar abstraction is satisfied
//! by the rational types of `num-rational` (`Ratio<i64>`, `Ratio<i128>`,
//! `Ratio<BigInt>`).  The engine itself runs on `BigRational`; the small
//! machine-word variants exist for cheap property tests.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

/// An exact field element usable as a coefficient.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Zero + One + Signed + FromStr + Send + Sync + 'static
{
    /// Embeds a machine integer.
    fn from_i64(v: i64) -> Self;
    /// The reduced fraction `num/den`; panics if `den == 0`.
    fn from_frac(num: i64, den: i64) -> Self;
    /// `self + o` without consuming the operands.
    fn add_ref(&self, o: &Self) -> Self;
    /// `self - o` without consuming the operands.
    fn sub_ref(&self, o: &Self) -> Self;
    /// `self * o` without consuming the operands.
    fn mul_ref(&self, o: &Self) -> Self;
    /// `self / o`; panics on division by zero.
    fn div_ref(&self, o: &Self) -> Self;
    /// Whether the value is an integer.
    fn is_integral(&self) -> bool;
    /// Lossless conversion to an arbitrary-precision rational.
    fn to_big_rational(&self) -> BigRational;
    /// Conversion from an arbitrary-precision rational, if it fits.
    fn from_big_rational(v: &BigRational) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Display
        + Debug
        + FromStr
        + From<i64>
        + Into<BigInt>
        + TryFrom<BigInt>
        + Send
        + Sync
        + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Ratio::new(T::from(num), T::from(den))
    }

    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }

    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_big_rational(&self) -> BigRational {
        BigRational::new(self.numer().clone().into(), self.denom().clone().into())
    }

    fn from_big_rational(v: &BigRational) -> Option<Self> {
        let num = T::try_from(v.numer().clone()).ok()?;
        let den = T::try_from(v.denom().clone()).ok()?;
        Some(Ratio::new(num, den))
    }
}

/// Binomial coefficient `C(a, b)` as a scalar; zero when `b < 0` or `b > a` for `a >= 0`.
pub fn binomial<S: Scalar>(a: i64, b: i64) -> S {
    if b < 0 {
        return S::zero();
    }
    if a >= 0 && b > a {
        return S::zero();
    }
    let mut acc = S::one();
    for i in 0..b {
        acc = acc.mul_ref(&S::from_i64(a - i)).div_ref(&S::from_i64(i + 1));
    }
    acc
}

/// Binomial coefficient over machine integers for non-negative arguments.
pub fn binomial_u64(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}
