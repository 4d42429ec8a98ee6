//! Chern classes of the bundles cut out by tensor conditions with free slots.
//!
//! A condition `f^{(p)}(P, ·^q) = 0` whose lower-order parts already vanish on
//! the span `W` of some points is a section of `Sym^q (C^{n+1}/W)^* ⊗ L`.  Its
//! top Chern class is the naive class of the condition; when the moving point
//! enters `span W` the section vanishes identically, and the excess locus is
//! removed with the excess intersection formula.

use strata_ring::{binomial, ClassPoly, NumClass, Rational, RingSpec, Var};

use crate::error::DegenResult;

/// Truncated total Chern class of `Sym^q (C^{n+1}/W)^* ⊗ L` and its rank.
///
/// `w` lists the generators of the points spanning `W` (assumed independent).
pub fn symmetric_quotient_chern(spec: RingSpec, q: u32, w: &[Var], twist: &NumClass) -> DegenResult<(NumClass, u32)> {
    let n = i64::from(spec.n);
    let q = i64::from(q);
    let mut rank: i64 = 0;
    let mut exps: Vec<(Vec<Var>, i64)> = Vec::new();
    for mask in 0u32..(1 << w.len()) {
        let subset: Vec<Var> = (0..w.len()).filter(|i| mask & (1 << i) != 0).map(|i| w[i]).collect();
        let i = subset.len() as i64;
        let mult = binomial::<Rational>(n + q - i, q - i);
        let mult = mult.to_integer();
        let mult: i64 = mult.try_into().expect("small multiplicity");
        if mult == 0 {
            continue;
        }
        let signed = if i % 2 == 0 { mult } else { -mult };
        rank += signed;
        exps.push((subset, signed));
    }
    let rank = u32::try_from(rank).expect("non-negative rank");
    let mut total = NumClass::one(spec)?;
    for (subset, e) in exps {
        let mut root = twist.clone();
        for v in subset {
            root = root.try_add(&NumClass::var(spec, v)?)?;
        }
        total = total.try_mul(&power_series(&root, e, rank)?)?.truncate_degree(rank);
    }
    Ok((total, rank))
}

/// `(1 + a)^e` truncated above degree `max`, for a homogeneous degree-one `a`.
pub fn power_series(a: &NumClass, e: i64, max: u32) -> DegenResult<NumClass> {
    let spec = *a.spec();
    let mut out = NumClass::zero(spec)?;
    let mut apow = NumClass::one(spec)?;
    for j in 0..=max {
        let c = binomial::<Rational>(e, i64::from(j));
        out = out.try_add(&apow.scale(&c))?;
        apow = apow.try_mul(a)?;
        if apow.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// Class of a kernel-type condition on the moving point `y`: the top Chern
/// class of `Sym^q (C^{n+1}/W)^* ⊗ L` minus the excess contribution of the
/// locus `y ∈ span W`, `[Z] · {c(E) s(N_Z)}_{rank - codim Z}`.
pub fn kernel_condition_class(spec: RingSpec, q: u32, w: &[Var], y: Var, twist: &NumClass) -> DegenResult<NumClass> {
    let (total, rank) = symmetric_quotient_chern(spec, q, w, twist)?;
    let top = total.homogeneous_part(rank);
    let codim = spec.n + 1 - w.len() as u32;
    if codim > rank {
        return Ok(top);
    }
    let yv = NumClass::var(spec, y)?;
    let excess_deg = rank - codim;
    // s(N) = Π_w (1 + Y - X_w) · (1 + Y)^{-(n+1)}
    let mut segre = power_series(&yv, -(i64::from(spec.n) + 1), excess_deg)?;
    for v in w {
        let root = yv.try_sub(&NumClass::var(spec, *v)?)?;
        segre = segre.try_mul(&NumClass::one(spec)?.try_add(&root)?)?.truncate_degree(excess_deg);
    }
    let mut pts: Vec<Var> = w.to_vec();
    pts.push(y);
    let z = ClassPoly::complete_homogeneous(spec, codim, &pts)?;
    let excess = z.try_mul(&total.try_mul(&segre)?.homogeneous_part(excess_deg))?;
    Ok(top.try_sub(&excess)?)
}
