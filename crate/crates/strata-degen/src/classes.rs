//! Elementary classes and the basic degeneration step.

use strata_ring::{ClassPoly, Coeff, RingSpec, Scalar, Var};

use crate::error::{DegenError, DegenResult};

/// Class of the locus where `k` points lie in a common `(k-2)`-plane:
/// the complete homogeneous polynomial of degree `n + 2 - k` in their generators.
///
/// For `k = 2` this is the diagonal `[p_1 = p_2]`; for `k = n + 2` every
/// configuration is dependent and the class is `1`.
pub fn diagonal_class<C: Coeff>(k: u32, points: &[Var], ring: RingSpec) -> DegenResult<ClassPoly<C>> {
    if k > ring.n + 2 {
        return Err(DegenError::TooManyPoints { k, n: ring.n });
    }
    if k < 2 || points.len() != k as usize {
        return Err(DegenError::Recipe(format!("diagonal_class needs exactly k >= 2 points, got k = {k} and {} points", points.len())));
    }
    for (i, p) in points.iter().enumerate() {
        if !matches!(p, Var::X | Var::Y(_)) || points[..i].contains(p) {
            return Err(DegenError::Recipe(format!("diagonal_class points must be distinct point generators, got {points:?}")));
        }
    }
    Ok(ClassPoly::complete_homogeneous(ring, ring.n + 2 - k, points)?)
}

/// Class of the proportionality of two tensors with `components` entries whose
/// line bundles have classes `a` and `b`: `Σ_{i < M} a^i b^{M-1-i}`.
pub fn proportionality_class<C: Coeff>(components: u32, a: &ClassPoly<C>, b: &ClassPoly<C>) -> DegenResult<ClassPoly<C>> {
    if components == 0 {
        return Err(DegenError::Recipe("proportionality needs at least one component".into()));
    }
    let spec = *a.spec();
    let mut out = ClassPoly::zero(spec)?;
    let mut apow = ClassPoly::one(spec)?;
    for i in 0..components {
        out = out.try_add(&apow.try_mul(&b.try_pow(components - 1 - i)?)?)?;
        apow = apow.try_mul(a)?;
    }
    Ok(out)
}

/// Vanishing order of a degenerating condition of order `p` with `k`
/// contracted copies of the moving point along the residual variety of a
/// stratum whose derivatives vanish up to order `m`: `k + m + 1 - p`.
pub fn intersection_multiplicity(m: u32, p: u32, k: u32) -> DegenResult<u32> {
    if p < m + 1 || p > m + k {
        return Err(DegenError::OutOfRange { m, p, k });
    }
    Ok(k + m + 1 - p)
}

/// Class of the restriction of a lifted stratum to the diagonal `keep = eliminate`
/// when the generic fibre of the moving point `eliminate` is `P^r`:
/// `[keep = eliminate] · (1/(n-r)!) ∂^{n-r} class / ∂eliminate^{n-r}`.
pub fn residual_over_diagonal<C: Coeff>(class: &ClassPoly<C>, keep: Var, eliminate: Var, fiber_dim: u32) -> DegenResult<ClassPoly<C>> {
    let spec = *class.spec();
    if fiber_dim >= spec.n {
        return Err(DegenError::Recipe(format!("fibre dimension {fiber_dim} must be below n = {}", spec.n)));
    }
    let order = spec.n - fiber_dim;
    let fact: i64 = (1..=i64::from(order)).product();
    let scaled = class
        .derivative(eliminate, order)?
        .scale(&C::Scalar::from_frac(1, fact));
    if class.is_integral() && !scaled.is_integral() {
        return Err(DegenError::NonIntegral);
    }
    let diag = diagonal_class::<C>(2, &[keep, eliminate], spec)?;
    Ok(diag.try_mul(&scaled)?)
}

/// One degeneration: `current · condition - Σ multiplicity · residual`.
pub fn degenerate_step<C: Coeff>(
    current: &ClassPoly<C>,
    condition_component: &ClassPoly<C>,
    residuals: &[(u32, ClassPoly<C>)],
) -> DegenResult<ClassPoly<C>> {
    let mut out = current.try_mul(condition_component)?;
    for (mult, class) in residuals {
        if *mult == 0 {
            return Err(DegenError::Recipe("residual multiplicities must be at least 1".into()));
        }
        out = out.try_sub(&class.scale(&C::Scalar::from_i64(i64::from(*mult))))?;
    }
    Ok(out)
}
