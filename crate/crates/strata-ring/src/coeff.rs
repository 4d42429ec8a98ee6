//! Coefficient rings for classes.
//!
//! A class either has plain exact scalars as coefficients (a numeric class,
//! typically in a relative basis where `d` has been absorbed) or polynomials
//! in `d` (a symbolic class).  [`Coeff`] abstracts over both.

use std::fmt::Debug;

use num_rational::Ratio;

use crate::dpoly::DPoly;
use crate::error::{RingError, RingResult};
use crate::scalar::Scalar;

/// Operations a class coefficient must support.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// The underlying exact field.
    type Scalar: Scalar;
    /// Whether coefficients of this type may depend on `d`.
    const SYMBOLIC_D: bool;

    /// Additive identity.
    fn zero() -> Self;
    /// Multiplicative identity.
    fn one() -> Self;
    /// Whether this is zero.
    fn is_zero(&self) -> bool;
    /// Embeds a scalar.
    fn from_scalar(s: Self::Scalar) -> Self;
    /// `self += o`.
    fn add_assign_ref(&mut self, o: &Self);
    /// `self -= o`.
    fn sub_assign_ref(&mut self, o: &Self);
    /// `self * o`.
    fn mul_ref(&self, o: &Self) -> Self;
    /// `-self`.
    fn neg_ref(&self) -> Self;
    /// `s * self` for a scalar `s`.
    fn scale(&self, s: &Self::Scalar) -> Self;
    /// The value as a scalar if it does not depend on `d`.
    fn as_scalar(&self) -> Option<Self::Scalar>;
    /// Value at `d = v`.
    fn eval_d(&self, v: &Self::Scalar) -> Self::Scalar;
    /// The coefficient `d - k`, if this coefficient type can express it.
    fn d_minus(k: i64) -> Option<Self>;
    /// Whether every rational number inside is an integer.
    fn is_integral(&self) -> bool;
    /// Canonical text (a polynomial in `d` for symbolic coefficients).
    fn to_text(&self) -> String;
    /// Parses [`Coeff::to_text`] output.
    fn parse_text(text: &str) -> RingResult<Self>;
}

impl<T> Coeff for Ratio<T>
where
    Ratio<T>: Scalar,
{
    type Scalar = Ratio<T>;
    const SYMBOLIC_D: bool = false;

    fn zero() -> Self {
        <Self as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <Self as num_traits::One>::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn from_scalar(s: Self) -> Self {
        s
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self = Scalar::add_ref(self, o);
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self = Scalar::sub_ref(self, o);
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Scalar::mul_ref(self, o)
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn scale(&self, s: &Self) -> Self {
        Scalar::mul_ref(self, s)
    }
    fn as_scalar(&self) -> Option<Self> {
        Some(self.clone())
    }
    fn eval_d(&self, _v: &Self) -> Self {
        self.clone()
    }
    fn d_minus(_k: i64) -> Option<Self> {
        None
    }
    fn is_integral(&self) -> bool {
        Scalar::is_integral(self)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(text: &str) -> RingResult<Self> {
        text.trim()
            .parse::<Self>()
            .map_err(|_| RingError::Parse(format!("bad rational {text:?}")))
    }
}

impl<S: Scalar> Coeff for DPoly<S> {
    type Scalar = S;
    const SYMBOLIC_D: bool = true;

    fn zero() -> Self {
        DPoly::zero()
    }
    fn one() -> Self {
        DPoly::one()
    }
    fn is_zero(&self) -> bool {
        DPoly::is_zero(self)
    }
    fn from_scalar(s: S) -> Self {
        DPoly::constant(s)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self = &*self + o;
    }
    fn sub_assign_ref(&mut self, o: &Self) {
        *self = &*self - o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, s: &S) -> Self {
        DPoly::scale(self, s)
    }
    fn as_scalar(&self) -> Option<S> {
        self.as_constant()
    }
    fn eval_d(&self, v: &S) -> S {
        self.eval(v)
    }
    fn d_minus(k: i64) -> Option<Self> {
        Some(DPoly::d_minus(k))
    }
    fn is_integral(&self) -> bool {
        DPoly::is_integral(self)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(text: &str) -> RingResult<Self> {
        DPoly::parse(text)
    }
}
