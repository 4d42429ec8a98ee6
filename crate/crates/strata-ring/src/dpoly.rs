//! Univariate polynomials in the hypersurface degree `d`.
//!
//! Coefficients of classes are polynomials in `d` with exact rational
//! coefficients.  The canonical text form lists powers in descending order,
//! e.g. `3*d^2 - 9*d + 6` or `1/2*d - 3/2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::RingError;
use crate::scalar::Scalar;

/// A polynomial `c_0 + c_1 d + ... + c_k d^k`, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> DPoly<S> {
    /// Builds a polynomial from ascending coefficients.
    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        DPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// A constant polynomial.
    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `d`.
    pub fn d() -> Self {
        Self::from_coeffs(vec![S::zero(), S::one()])
    }

    /// The polynomial `d - k`.
    pub fn d_minus(k: i64) -> Self {
        Self::from_coeffs(vec![S::from_i64(-k), S::one()])
    }

    /// Ascending coefficients (no trailing zeros).
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `d^k`.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The constant value if the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<S> {
        match self.coeffs.len() {
            0 => Some(S::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Horner evaluation at `d = x`.
    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        DPoly { coeffs: self.coeffs.iter().map(|c| c.mul_ref(s)).collect() }
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integral())
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Canonical text with a caller-chosen variable name.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Parses the canonical text form (variable `d`).  Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self, RingError> {
        Self::parse_in(text, 'd')
    }

    /// Parses the canonical text form with a caller-chosen one-letter variable.
    pub fn parse_in(text: &str, var: char) -> Result<Self, RingError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(RingError::Parse("empty polynomial".into()));
        }
        let bytes: Vec<char> = s.chars().collect();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (i, &ch) in bytes.iter().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && bytes[i - 1] != '^' {
                terms.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((negative, cur));
        let mut coeffs: Vec<S> = Vec::new();
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(RingError::Parse(format!("dangling sign in {text:?}")));
            }
            let (coef_text, power) = match body.find(var) {
                None => (body.as_str(), 0usize),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let tail = &body[pos + var.len_utf8()..];
                    let power = if tail.is_empty() {
                        1
                    } else if let Some(p) = tail.strip_prefix('^') {
                        p.parse::<usize>()
                            .map_err(|_| RingError::Parse(format!("bad exponent in {body:?}")))?
                    } else {
                        return Err(RingError::Parse(format!("unexpected text after {var} in {body:?}")));
                    };
                    (head, power)
                }
            };
            let mut c = if coef_text.is_empty() {
                S::one()
            } else {
                coef_text
                    .parse::<S>()
                    .map_err(|_| RingError::Parse(format!("bad coefficient {coef_text:?}")))?
            };
            if neg {
                c = -c;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, S::zero());
            }
            coeffs[power] = coeffs[power].add_ref(&c);
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

impl<S: Scalar> fmt::Display for DPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("d"))
    }
}

impl<'a, S: Scalar> Add<&'a DPoly<S>> for &'a DPoly<S> {
    type Output = DPoly<S>;
    fn add(self, o: &DPoly<S>) -> DPoly<S> {
        let len = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k).add_ref(&o.coeff(k))).collect();
        DPoly::from_coeffs(coeffs)
    }
}

impl<'a, S: Scalar> Sub<&'a DPoly<S>> for &'a DPoly<S> {
    type Output = DPoly<S>;
    fn sub(self, o: &DPoly<S>) -> DPoly<S> {
        let len = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k).sub_ref(&o.coeff(k))).collect();
        DPoly::from_coeffs(coeffs)
    }
}

impl<'a, S: Scalar> Mul<&'a DPoly<S>> for &'a DPoly<S> {
    type Output = DPoly<S>;
    fn mul(self, o: &DPoly<S>) -> DPoly<S> {
        if self.is_zero() || o.is_zero() {
            return DPoly::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        DPoly::from_coeffs(coeffs)
    }
}

impl<S: Scalar> Neg for &DPoly<S> {
    type Output = DPoly<S>;
    fn neg(self) -> DPoly<S> {
        DPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr<DPoly<S>> for DPoly<S> {
            type Output = DPoly<S>;
            fn $m(self, o: DPoly<S>) -> DPoly<S> {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> Neg for DPoly<S> {
    type Output = DPoly<S>;
    fn neg(self) -> DPoly<S> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = DPoly<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_frac(n, d)
    }

    #[test]
    fn display_is_canonical_descending() {
        let p = P::from_coeffs(vec![q(6, 1), q(-9, 1), q(3, 1)]);
        assert_eq!(p.to_string(), "3*d^2 - 9*d + 6");
        let p = P::from_coeffs(vec![q(-3, 2), q(1, 2)]);
        assert_eq!(p.to_string(), "1/2*d - 3/2");
        assert_eq!(P::from_coeffs(vec![q(1, 1), q(-1, 1)]).to_string(), "-d + 1");
        assert_eq!(P::zero().to_string(), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for text in ["3*d^2 - 9*d + 6", "1/2*d - 3/2", "-d + 1", "0", "7", "-d^3"] {
            let p = P::parse(text).unwrap();
            assert_eq!(p.to_string(), text);
        }
        assert_eq!(P::parse("d - 2 + d").unwrap().to_string(), "2*d - 2");
        assert!(P::parse("3*x").is_err());
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = P::d_minus(1);
        let b = P::d_minus(2);
        let prod = &a * &b;
        assert_eq!(prod.to_string(), "d^2 - 3*d + 2");
        assert_eq!(prod.eval(&q(3, 1)), q(2, 1));
        assert_eq!((&prod - &prod), P::zero());
        assert_eq!(a.pow(3).degree(), Some(3));
    }
}
