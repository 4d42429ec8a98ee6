//! Exact interpolation of polynomials from samples at integer points.
//!
//! Stratum degrees are polynomials in `d` of bounded degree, so a handful of
//! exact evaluations determine them.  [`interpolate_exact`] fits in Newton form
//! over exact rationals and uses every surplus sample as a consistency check;
//! [`sweep`] batches evaluations over ranges of `n` and `d`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use strata_ring::{DPoly, DPolyQ, Rational, Scalar};
use thiserror::Error;

/// Interpolation failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    /// Fewer distinct samples than `degree_bound + 1`.
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    /// The same point was sampled twice.
    #[error("sample point {0} appears more than once")]
    DuplicatePoint(String),
    /// A surplus sample disagrees with the fitted polynomial.
    #[error("sample at {point} (n = {n:?}) has value {got}, the fit predicts {expected}")]
    InconsistentSamples { n: Option<u32>, point: String, expected: String, got: String },
    /// The evaluator itself failed.
    #[error("evaluation failed at n = {n}, d = {d}: {message}")]
    Evaluator { n: u32, d: i64, message: String },
    /// Empty ranges.
    #[error("empty sweep range")]
    EmptyRange,
}

/// The unique polynomial of degree at most `degree_bound` through the samples.
///
/// The first `degree_bound + 1` samples (in the given order) determine the fit;
/// every further sample must lie on it.
pub fn interpolate_exact<S: Scalar>(samples: &[(S, S)], degree_bound: usize) -> Result<DPoly<S>, InterpError> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(InterpError::InsufficientSamples { needed, got: samples.len() });
    }
    for (i, (x, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(y, _)| y == x) {
            return Err(InterpError::DuplicatePoint(x.to_string()));
        }
    }
    let (fit, surplus) = samples.split_at(needed);
    let poly = newton_fit(fit);
    for (x, y) in surplus {
        let v = poly.eval(x);
        if &v != y {
            return Err(InterpError::InconsistentSamples {
                n: None,
                point: x.to_string(),
                expected: v.to_string(),
                got: y.to_string(),
            });
        }
    }
    Ok(poly)
}

/// Newton divided differences, expanded to the monomial basis.
fn newton_fit<S: Scalar>(samples: &[(S, S)]) -> DPoly<S> {
    let xs: Vec<S> = samples.iter().map(|(x, _)| x.clone()).collect();
    let mut coef: Vec<S> = samples.iter().map(|(_, y)| y.clone()).collect();
    let m = xs.len();
    for j in 1..m {
        for i in (j..m).rev() {
            coef[i] = coef[i].sub_ref(&coef[i - 1]).div_ref(&xs[i].sub_ref(&xs[i - j]));
        }
    }
    // Horner in Newton form: p = c0 + (x - x0)(c1 + (x - x1)(c2 + ...))
    let mut poly = DPoly::<S>::zero();
    for i in (0..m).rev() {
        let shift = DPoly::from_coeffs(vec![-xs[i].clone(), S::one()]);
        poly = &(&poly * &shift) + &DPoly::constant(coef[i].clone());
    }
    poly
}

/// One surplus check of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCheck {
    /// The sample point.
    pub d: i64,
    /// Whether the fitted polynomial reproduces the sample.
    pub ok: bool,
}

/// The fit for one value of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    /// Name of the evaluated quantity.
    #[serde(rename = "type")]
    pub type_name: String,
    /// Ambient dimension.
    pub n: u32,
    /// Fitted polynomial in canonical text.
    pub poly_in_d: String,
    /// One entry per sample point.
    pub checks: Vec<SweepCheck>,
}

/// Result of a sweep: per-`n` fits plus optional cross-`n` fits.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    /// Per-`n` fitted polynomials, ordered by `n`.
    pub fits: Vec<(u32, DPolyQ)>,
    /// Per-`n` reports.
    pub reports: Vec<SweepReport>,
}

/// Evaluates on every `(n, d)` pair (in parallel), fits a polynomial in `d` of
/// degree at most `degree_bound(n)` for each `n`, and checks every sample.
pub fn sweep<E, B>(
    type_name: &str,
    evaluator: E,
    n_range: &[u32],
    d_range: &[i64],
    degree_bound: B,
) -> Result<SweepTable, InterpError>
where
    E: Fn(u32, i64) -> Result<Rational, String> + Sync,
    B: Fn(u32) -> usize,
{
    if n_range.is_empty() || d_range.is_empty() {
        return Err(InterpError::EmptyRange);
    }
    let distinct: BTreeSet<i64> = d_range.iter().copied().collect();
    if distinct.len() != d_range.len() {
        let dup = d_range.iter().find(|d| d_range.iter().filter(|e| e == d).count() > 1).expect("duplicate exists");
        return Err(InterpError::DuplicatePoint(dup.to_string()));
    }
    let pairs: Vec<(u32, i64)> = n_range.iter().flat_map(|&n| d_range.iter().map(move |&d| (n, d))).collect();
    let values: Vec<Result<Rational, InterpError>> = pairs
        .par_iter()
        .map(|&(n, d)| evaluator(n, d).map_err(|message| InterpError::Evaluator { n, d, message }))
        .collect();
    let mut fits = Vec::new();
    let mut reports = Vec::new();
    for (idx, &n) in n_range.iter().enumerate() {
        let row = &values[idx * d_range.len()..(idx + 1) * d_range.len()];
        let mut samples = Vec::with_capacity(d_range.len());
        for (v, &d) in row.iter().zip(d_range) {
            samples.push((Rational::from_i64(d), v.clone()?));
        }
        let bound = degree_bound(n);
        let needed = bound + 1;
        if samples.len() < needed {
            return Err(InterpError::InsufficientSamples { needed, got: samples.len() });
        }
        let poly = newton_fit(&samples[..needed]);
        let mut checks = Vec::with_capacity(samples.len());
        for (x, y) in &samples {
            let expected = poly.eval(x);
            let ok = &expected == y;
            if !ok {
                return Err(InterpError::InconsistentSamples {
                    n: Some(n),
                    point: x.to_string(),
                    expected: expected.to_string(),
                    got: y.to_string(),
                });
            }
            checks.push(SweepCheck { d: x.to_string().parse().expect("integer sample point"), ok });
        }
        reports.push(SweepReport { type_name: type_name.to_string(), n, poly_in_d: poly.to_string(), checks });
        fits.push((n, poly));
    }
    Ok(SweepTable { fits, reports })
}

/// Fits each coefficient of `d^k` across `n` by a polynomial in `n` of degree at
/// most `n_degree_bound`; entry `k` of the result is the fit for `d^k`.
pub fn fit_across_n(fits: &[(u32, DPolyQ)], n_degree_bound: usize) -> Result<Vec<DPolyQ>, InterpError> {
    let top = fits.iter().filter_map(|(_, p)| p.degree()).max().unwrap_or(0);
    (0..=top)
        .map(|k| {
            let samples: Vec<(Rational, Rational)> =
                fits.iter().map(|(n, p)| (Rational::from_i64(i64::from(*n)), p.coeff(k))).collect();
            interpolate_exact(&samples, n_degree_bound)
        })
        .collect()
}
