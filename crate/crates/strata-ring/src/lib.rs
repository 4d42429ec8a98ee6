//! Exact arithmetic in truncated multi-graded cohomology rings
//! `Z[d][X, Y_1..Y_r, F] / (X^{n+1}, Y_i^{n+1})`.
//!
//! Classes ([`ClassPoly`]) are sparse polynomials whose coefficients are either
//! exact scalars or polynomials in the hypersurface degree `d` ([`DPoly`]).  The
//! hyperplane generator is `F`, or a relative generator `Q_k = (d - k) X + F`
//! in which the classes of singular strata no longer depend on `d`.
//!
//! The core is generic over the exact scalar type (any `num_rational::Ratio`);
//! the aliases below fix it to arbitrary precision rationals.

mod class;
mod coeff;
mod dpoly;
mod error;
pub mod expr;
mod json;
mod scalar;
mod spec;

pub use class::ClassPoly;
pub use coeff::Coeff;
pub use dpoly::DPoly;
pub use error::{RingError, RingResult};
pub use scalar::{binomial, binomial_u64, Scalar};
pub use spec::{Basis, Mono, RingSpec, Var, MAX_CAP, MAX_Y};

/// Arbitrary precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Word-sized rationals, handy for cheap tests.
pub type Rational64 = num_rational::Rational64;
/// Polynomials in `d` over [`Rational`].
pub type DPolyQ = DPoly<Rational>;
/// Classes with polynomial-in-`d` coefficients.
pub type Class = ClassPoly<DPolyQ>;
/// Classes with plain rational coefficients.
pub type NumClass = ClassPoly<Rational>;

/// Shorthand for a rational from an integer.
pub fn rat(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Shorthand for the rational `num/den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::from_frac(num, den)
}

/// Builds a class from explicit terms, rejecting exponents beyond the caps.
pub fn make_poly<C: Coeff>(spec: RingSpec, terms: Vec<(Vec<u32>, C)>) -> RingResult<ClassPoly<C>> {
    ClassPoly::from_terms(spec, terms)
}

/// Product of two classes of the same ring.
pub fn mul<C: Coeff>(a: &ClassPoly<C>, b: &ClassPoly<C>) -> RingResult<ClassPoly<C>> {
    a.try_mul(b)
}

/// Coefficient of the given monomial, as a class in the remaining generators.
pub fn gysin_extract<C: Coeff>(a: &ClassPoly<C>, which: &[(Var, u32)]) -> RingResult<ClassPoly<C>> {
    a.gysin_extract(which)
}

/// Substitutes `d` (when given) and expands a relative generator into `F` (when
/// `expand_q` is set).
pub fn specialize<C: Coeff>(a: &ClassPoly<C>, d_value: Option<&C::Scalar>, expand_q: bool) -> RingResult<ClassPoly<C>> {
    let mut out = match d_value {
        Some(d) if expand_q => a.rebase_at(Basis::F, d)?.specialize_d(d),
        Some(d) => a.specialize_d(d),
        None if expand_q => a.rebase(Basis::F)?,
        None => a.clone(),
    };
    if let Some(d) = d_value {
        out = out.specialize_d(d);
    }
    Ok(out)
}

/// Formal partial derivative.
pub fn derivative<C: Coeff>(a: &ClassPoly<C>, v: Var, order: u32) -> RingResult<ClassPoly<C>> {
    a.derivative(v, order)
}

/// The unique `P` with `P * c = r`.
pub fn divide_exact<C: Coeff>(r: &ClassPoly<C>, c: &ClassPoly<C>) -> RingResult<ClassPoly<C>> {
    r.divide_exact(c)
}

/// Invariance under every listed permutation of the point generators.
pub fn check_symmetry<C: Coeff>(a: &ClassPoly<C>, group: &[Vec<usize>]) -> bool {
    a.check_symmetry(group)
}
