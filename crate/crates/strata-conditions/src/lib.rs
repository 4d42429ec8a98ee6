//! Covariant defining conditions read off a Newton diagram.
//!
//! Every lattice point strictly below the diagram is a vanishing derivative.
//! Mapping each axis to its associated space in the facet flag turns the
//! point into a condition `f|_x^{(p)}(y_{i_1}, .., y_{i_s}, ·, .., ·) = 0` with
//! some auxiliary points contracted and the remaining slots free.  Conditions
//! implied by others (via the Euler identity or by specialising free slots) are
//! merged, and each surviving condition contributes one hypersurface per
//! component, of class `F + (d - p) X + Σ (contracted generators)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use strata_diagram::{face_flag, is_linear_type, monomial_compare, NewtonDiagram, Space};
use strata_ring::{binomial_u64, Basis, Coeff, DPolyQ, NumClass, Rational, RingError, RingSpec, Scalar, Var};
use thiserror::Error;

/// Failures while deriving conditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    /// The diagram fails the slope criterion; its stratum needs a degeneration recipe.
    #[error("the diagram is not of linear type")]
    NotLinear,
    /// The stratum needs more auxiliary points or a larger cap than the ring supports.
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A point of the auxiliary space: the singular point `x` or an auxiliary point `y_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// The singular point.
    X,
    /// The auxiliary point `y_i` (1-based).
    Y(u32),
}

impl Label {
    /// The ring generator of this point.
    pub fn var(self) -> Var {
        match self {
            Label::X => Var::X,
            Label::Y(i) => Var::Y(i),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::X => f.write_str("x"),
            Label::Y(i) => write!(f, "y{i}"),
        }
    }
}

/// An auxiliary point `y_i` together with the flag space it ranges over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxPoint {
    /// Its label.
    pub label: Label,
    /// The coordinate space it spans together with the other points of that space.
    pub space: Space,
    /// The axis it stands for.
    pub axis: usize,
}

/// `f|_x^{(order)}(contractions, free slots) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantCondition {
    /// Derivative order `p`.
    pub order: u32,
    /// Contracted points with multiplicities.
    pub contractions: BTreeMap<Label, u32>,
    /// Number of free tensor slots.
    pub free_indices: u32,
    /// Number of component hypersurfaces, `C(q + n, q)` for `q` free slots.
    pub components: u64,
    /// Lattice points (vanishing monomials) this condition accounts for.
    pub points: Vec<Vec<u32>>,
    /// The lattice point the condition was read from.
    pub source: Vec<u32>,
}

impl CovariantCondition {
    /// Multiplicity of a label among the contractions.
    pub fn mult(&self, l: Label) -> u32 {
        self.contractions.get(&l).copied().unwrap_or(0)
    }

    /// Contractions with the auxiliary points only.
    fn y_part(&self) -> BTreeMap<Label, u32> {
        self.contractions.iter().filter(|(l, _)| **l != Label::X).map(|(l, m)| (*l, *m)).collect()
    }

    /// Whether this condition implies `other`: `other` has no larger order and
    /// contracts at least the same auxiliary points.
    pub fn subsumes(&self, other: &CovariantCondition) -> bool {
        let mine = self.y_part();
        let theirs = other.y_part();
        other.order <= self.order && mine.iter().all(|(l, m)| theirs.get(l).copied().unwrap_or(0) >= *m)
    }
}

impl fmt::Display for CovariantCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut args: Vec<String> = Vec::new();
        for (l, m) in &self.contractions {
            for _ in 0..*m {
                args.push(l.to_string());
            }
        }
        for _ in 0..self.free_indices {
            args.push("·".into());
        }
        write!(f, "f^({})({}) = 0", self.order, args.join(","))
    }
}

/// The auxiliary layout, conditions and (once computed) the class of a lifted stratum.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedStratumSpec {
    /// Ring the class lives in: relative basis `Q_k`, numeric coefficients.
    pub ring: RingSpec,
    /// The auxiliary points `y_1..y_r`.
    pub aux_layout: Vec<AuxPoint>,
    /// Conditions in increasing order of their source points.
    pub conditions: Vec<CovariantCondition>,
    /// The lifted class, once computed.
    pub class: Option<NumClass>,
}

impl LiftedStratumSpec {
    /// The `k` of the relative basis.
    pub fn basis_k(&self) -> i64 {
        match self.ring.basis {
            Basis::Q(k) => k,
            Basis::F => 0,
        }
    }

    /// Dimension of the space of an auxiliary point.
    pub fn space_dim(&self, y: u32) -> usize {
        self.aux_layout[y as usize - 1].space.dim()
    }

    /// Total number of component hypersurfaces.
    pub fn total_components(&self) -> u64 {
        self.conditions.iter().map(|c| c.components).sum()
    }

    /// Codimension of the lifted stratum in `Aux × P^N`: the number of
    /// independent equations.
    pub fn codimension(&self) -> usize {
        self.conditions.iter().map(|c| c.points.len()).sum()
    }
}

/// Condition list report entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// Derivative order.
    pub order: u32,
    /// Label to multiplicity.
    pub contractions: BTreeMap<String, u32>,
    /// Free tensor slots.
    pub free_indices: u32,
    /// Component hypersurfaces.
    pub components: u64,
}

/// The JSON report: an ordered array of conditions.
pub fn condition_report(spec: &LiftedStratumSpec) -> Vec<ConditionReport> {
    spec.conditions
        .iter()
        .map(|c| ConditionReport {
            order: c.order,
            contractions: c.contractions.iter().map(|(l, m)| (l.to_string(), *m)).collect(),
            free_indices: c.free_indices,
            components: c.components,
        })
        .collect()
}

fn components(q: u32, n: usize) -> u64 {
    binomial_u64(u64::from(q) + n as u64, u64::from(q))
}

/// Derives the covariant conditions of a linear type.
pub fn covariant_conditions(diagram: &NewtonDiagram) -> Result<LiftedStratumSpec, ConditionError> {
    if !is_linear_type(diagram) {
        return Err(ConditionError::NotLinear);
    }
    let n = diagram.n();
    let full = Space::span(0..n);

    // One auxiliary point per (proper associated space, axis) over all facets.
    let mut keys: Vec<(Space, usize)> = Vec::new();
    let flags: Vec<_> = diagram.facets().iter().map(|f| face_flag(f, n)).collect();
    for flag in &flags {
        for axis in 0..n {
            let s = flag.associated_space(axis);
            if *s != full && !keys.iter().any(|(k, a)| k == s && *a == axis) {
                keys.push((s.clone(), axis));
            }
        }
    }
    keys.sort_by(|(s1, a1), (s2, a2)| s1.label_cmp(s2).then(a1.cmp(a2)));
    let aux_layout: Vec<AuxPoint> = keys
        .iter()
        .enumerate()
        .map(|(i, (s, a))| AuxPoint { label: Label::Y(i as u32 + 1), space: s.clone(), axis: *a })
        .collect();
    let label_of = |space: &Space, axis: usize| {
        keys.iter().position(|(s, a)| s == space && *a == axis).map(|i| Label::Y(i as u32 + 1))
    };

    // Raw conditions: one per lattice point under some facet, read with that facet's flag.
    let mut raw: Vec<CovariantCondition> = Vec::new();
    for m in diagram.all_points_under() {
        for (facet, flag) in diagram.facets().iter().zip(&flags) {
            if facet.level(&m) >= Rational::from_i64(1) {
                continue;
            }
            let order: u32 = m.iter().sum();
            let mut contractions = BTreeMap::new();
            let mut contracted = 0;
            for (axis, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(l) = label_of(flag.associated_space(axis), axis) {
                    *contractions.entry(l).or_insert(0) += e;
                    contracted += e;
                }
            }
            let free = order - contracted;
            let c = CovariantCondition {
                order,
                contractions,
                free_indices: free,
                components: components(free, n),
                points: Vec::new(),
                source: m.clone(),
            };
            match raw.iter_mut().find(|r| r.order == c.order && r.contractions == c.contractions) {
                Some(r) => {
                    if monomial_compare(&c.source, &r.source) == Ordering::Greater {
                        r.source = c.source.clone();
                    }
                    if !r.points.contains(&m) {
                        r.points.push(m.clone());
                    }
                }
                None => {
                    let mut c = c;
                    c.points.push(m.clone());
                    raw.push(c);
                }
            }
        }
    }

    // Keep the conditions not implied by another one.
    let maximal: Vec<CovariantCondition> = raw
        .iter()
        .filter(|c| !raw.iter().any(|o| !std::ptr::eq(*c, o) && o.subsumes(c) && !c.subsumes(o)))
        .cloned()
        .map(|mut c| {
            c.points.clear();
            c
        })
        .collect();
    let mut conditions = maximal;
    conditions.sort_by(|a, b| monomial_compare(&a.source, &b.source));

    // Each lattice point is accounted for by the lowest-order condition implying it.
    for r in &raw {
        for p in &r.points {
            let target = conditions
                .iter()
                .enumerate()
                .filter(|(_, c)| c.subsumes(r))
                .min_by_key(|(i, c)| (c.order, *i))
                .map(|(i, _)| i)
                .expect("every raw condition is implied by a maximal one");
            if !conditions[target].points.contains(p) {
                conditions[target].points.push(p.clone());
            }
        }
    }
    for c in &mut conditions {
        c.points.sort_by(|a, b| monomial_compare(a, b));
    }

    // Reference order k: the lowest order involving an auxiliary point (the
    // multiplicity), or the only order for ordinary points.  Lower orders are
    // rewritten with x-contractions through the Euler identity.
    let k = conditions
        .iter()
        .filter(|c| !c.contractions.is_empty())
        .map(|c| c.order)
        .min()
        .unwrap_or_else(|| conditions.iter().map(|c| c.order).max().unwrap_or(1));
    for c in &mut conditions {
        if c.order < k {
            let lift = k - c.order;
            *c.contractions.entry(Label::X).or_insert(0) += lift;
            c.order = k;
        }
    }

    let total: u64 = conditions.iter().map(|c| c.components).sum();
    let f_cap = u32::try_from(total + 2).unwrap_or(u32::MAX);
    let ring = RingSpec::new(n as u32, aux_layout.len() as u32, f_cap, false, Basis::Q(i64::from(k)))?;
    Ok(LiftedStratumSpec { ring, aux_layout, conditions, class: None })
}

/// Class of one component hypersurface of a condition:
/// `F + (d - p) X + Σ (contracted generators)`, written in the ring's basis
/// (`Q_k + (k - p) X + Σ ...` in a relative basis).
pub fn condition_class<C: Coeff>(c: &CovariantCondition, ring: RingSpec) -> Result<strata_ring::ClassPoly<C>, ConditionError> {
    let p = i64::from(c.order);
    let mut parts: Vec<(Var, C)> = Vec::new();
    let int = |v: i64| C::from_scalar(C::Scalar::from_i64(v));
    match ring.basis {
        Basis::Q(k) => {
            parts.push((Var::Q, C::one()));
            parts.push((Var::X, int(k - p)));
        }
        Basis::F => {
            parts.push((Var::F, C::one()));
            let dm = C::d_minus(p).ok_or(RingError::NeedsD { from: "F".into(), to: "F".into() })?;
            parts.push((Var::X, dm));
        }
    }
    for (l, m) in &c.contractions {
        parts.push((l.var(), int(i64::from(*m))));
    }
    let mut merged: Vec<(Var, C)> = Vec::new();
    for (v, coef) in parts {
        match merged.iter_mut().find(|(w, _)| *w == v) {
            Some((_, acc)) => acc.add_assign_ref(&coef),
            None => merged.push((v, coef)),
        }
    }
    Ok(strata_ring::ClassPoly::linear(ring, &merged)?)
}

/// `[Σ̃(x)] = Q_p^{C(n+p, p)}` for the ordinary point cut out by `f|_x^{(p)} = 0`.
pub fn ordinary_point_class(n: u32, p: u32) -> Result<NumClass, ConditionError> {
    let count = binomial_u64(u64::from(n + p), u64::from(p));
    let f_cap = u32::try_from(count + 2).unwrap_or(u32::MAX);
    let ring = RingSpec::new(n, 0, f_cap, false, Basis::Q(i64::from(p)))?;
    Ok(NumClass::var(ring, Var::Q)?.try_pow(count as u32)?)
}

/// Degree of the stratum from a relative-basis class of the minimal lifting
/// (auxiliary generators already extracted): expand `Q_k = (d - k) X + F`
/// and take the coefficient of `X^n F^{codim - n}`.
pub fn degree_of_minimal_class(min_class: &NumClass) -> Result<DPolyQ, ConditionError> {
    let spec = *min_class.spec();
    let expanded = min_class.lift().rebase(Basis::F)?;
    let top = expanded.gysin_extract(&[(Var::X, spec.n)])?;
    // What remains is a pure power of F (all Y exponents are zero by construction).
    let mut acc = DPolyQ::zero();
    for (_, c) in top.terms() {
        acc = &acc + c;
    }
    Ok(acc)
}
