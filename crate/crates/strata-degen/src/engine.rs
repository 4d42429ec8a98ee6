//! The chain of degenerations for linear types.
//!
//! Starting from the transversal conditions at the singular point, the
//! conditions involving auxiliary points are imposed one at a time.  Each step
//! multiplies by the class of the condition (a top Chern class with an excess
//! correction for kernel conditions) and subtracts residual pieces supported on
//! cycles where the singular point and some auxiliary points become dependent;
//! the unknown residual factors are fixed by the consistency conditions.

use std::collections::{BTreeMap, BTreeSet};

use strata_conditions::{
    condition_class, covariant_conditions, degree_of_minimal_class, AuxPoint, CovariantCondition, Label,
    LiftedStratumSpec,
};
use strata_diagram::{NewtonDiagram, Space};
use strata_ring::{binomial_u64, Basis, ClassPoly, DPolyQ, NumClass, RingSpec, Var};

use crate::chern::{kernel_condition_class, symmetric_quotient_chern};
use crate::classes::{degenerate_step, intersection_multiplicity, residual_over_diagonal};
use crate::cycles::{enumerate_cycles, CycleOfJump};
use crate::error::{DegenError, DegenResult};
use crate::solve::{consistency_solve, Constraints, Unknown};

/// How a condition enters the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Contracted with the singular point only: globally transversal.
    Base,
    /// `f^{(p)}(y, ·, ..) = 0`: the moving point lies in a kernel.
    Kernel,
    /// No free slots.
    Scalar,
    /// Several contractions and free slots.
    Mixed,
}

/// Classifies a condition.
pub fn step_kind(c: &CovariantCondition) -> StepKind {
    let ys: Vec<u32> = c.contractions.iter().filter(|(l, _)| **l != Label::X).map(|(_, m)| *m).collect();
    if ys.is_empty() {
        StepKind::Base
    } else if c.free_indices == 0 {
        StepKind::Scalar
    } else if ys == [1] {
        StepKind::Kernel
    } else {
        StepKind::Mixed
    }
}

/// One step of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    /// The condition imposed.
    pub condition: String,
    /// Its kind.
    pub kind: StepKind,
    /// Codimension of the class after the step.
    pub codim: u32,
    /// Residual cycles whose factors were solved for.
    pub residual_cycles: Vec<String>,
    /// Number of unknown coefficients.
    pub unknowns: usize,
}

/// Result of a chain of degenerations.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRun {
    /// The stratum specification, with the lifted class filled in.
    pub spec: LiftedStratumSpec,
    /// The lifted class in `X, Y_i, Q_k`.
    pub lifted: NumClass,
    /// The consistency conditions the lifted class satisfies.
    pub constraints: Constraints,
    /// The class of the minimal lifting (auxiliary generators extracted).
    pub minimal: NumClass,
    /// The steps.
    pub steps: Vec<StepReport>,
    /// The cycles of jump of the final condition list.
    pub cycles: Vec<CycleOfJump>,
}

impl LinearRun {
    /// Degree of the stratum as a polynomial in `d`.
    pub fn degree(&self) -> DegenResult<DPolyQ> {
        Ok(degree_of_minimal_class(&self.minimal)?)
    }
}

/// Runs the chain of degenerations for a linear type.
pub fn chain_linear(diagram: &NewtonDiagram) -> DegenResult<LinearRun> {
    chain_from_spec(covariant_conditions(diagram)?)
}

fn contraction_multiset(c: &CovariantCondition) -> BTreeMap<Label, u32> {
    c.contractions.clone()
}

fn y_points(c: &CovariantCondition) -> Vec<u32> {
    c.contractions
        .keys()
        .filter_map(|l| match l {
            Label::Y(j) => Some(*j),
            Label::X => None,
        })
        .collect()
}

/// Points `w` for which `f^{(p)}(P, w, ·, ..) = 0` already follows from an
/// earlier condition of the same order: their span is the `W` of the
/// condition's bundle.
fn vanishing_span(c: &CovariantCondition, earlier: &[&CovariantCondition], num_y: u32) -> Vec<Var> {
    let base: BTreeMap<Label, u32> = contraction_multiset(c);
    let mut out = Vec::new();
    let candidates = std::iter::once(Label::X).chain((1..=num_y).map(Label::Y));
    for w in candidates {
        let mut with_w = base.clone();
        *with_w.entry(w).or_insert(0) += 1;
        let implied = earlier.iter().any(|e| {
            e.order == c.order
                && e.contractions.iter().all(|(l, m)| with_w.get(l).copied().unwrap_or(0) >= *m)
        });
        if implied {
            out.push(w.var());
        }
    }
    out
}

fn relabel(c: &CovariantCondition, a: Label, b: Label) -> BTreeMap<Label, u32> {
    c.contractions
        .iter()
        .map(|(l, m)| {
            let l = if *l == a {
                b
            } else if *l == b {
                a
            } else {
                *l
            };
            (l, *m)
        })
        .collect()
}

/// Transpositions of points that map the condition set to itself.
fn symmetric_pairs(conds: &[&CovariantCondition], points: &[Label]) -> Vec<(Label, Label)> {
    let key = |c: &CovariantCondition, m: BTreeMap<Label, u32>| (c.order, c.free_indices, m.into_iter().collect::<Vec<_>>());
    let original: BTreeSet<_> = conds.iter().map(|c| key(c, c.contractions.clone())).collect();
    let mut out = Vec::new();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let swapped: BTreeSet<_> = conds.iter().map(|c| key(c, relabel(c, *a, *b))).collect();
            if swapped == original {
                out.push((*a, *b));
            }
        }
    }
    out
}

struct ChainState<'a> {
    spec: &'a LiftedStratumSpec,
    ring: RingSpec,
    processed: Vec<&'a CovariantCondition>,
    kernel: Vec<u32>,
    order: Vec<u32>,
}

impl<'a> ChainState<'a> {
    fn note_points(&mut self, c: &CovariantCondition) {
        for j in y_points(c) {
            if !self.order.contains(&j) {
                self.order.push(j);
            }
        }
    }

    fn in_non_kernel(&self, j: u32) -> bool {
        self.processed
            .iter()
            .any(|c| matches!(step_kind(c), StepKind::Scalar | StepKind::Mixed) && c.mult(Label::Y(j)) > 0)
    }

    /// Power bound of `Y_j` for the conditions imposed so far.
    fn bound(&self, j: u32) -> u32 {
        if self.in_non_kernel(j) {
            self.ring.n - self.spec.space_dim(j) as u32
        } else {
            self.ring.n.saturating_sub(self.kernel.len() as u32)
        }
    }

    fn constraints(&self) -> Constraints {
        let mut points = vec![Label::X];
        points.extend(self.order.iter().map(|j| Label::Y(*j)));
        // The singular point is interchangeable with kernel points only while
        // every condition is a kernel condition; auxiliary points must in
        // addition range over the same space.
        let kernel_only = self.processed.iter().all(|c| matches!(step_kind(c), StepKind::Base | StepKind::Kernel));
        let pairs: Vec<(Label, Label)> = symmetric_pairs(&self.processed, &points)
            .into_iter()
            .filter(|(a, b)| match (a, b) {
                (Label::X, _) | (_, Label::X) => kernel_only,
                (Label::Y(i), Label::Y(j)) => {
                    kernel_only || self.spec.aux_layout[*i as usize - 1].space == self.spec.aux_layout[*j as usize - 1].space
                }
            })
            .collect();
        Constraints {
            symmetric: pairs.into_iter().map(|(a, b)| vec![a.var(), b.var()]).collect(),
            max_power: self.order.iter().map(|j| (Var::Y(*j), self.bound(*j))).collect(),
        }
    }

    fn active_vars(&self) -> Vec<Var> {
        let mut v = vec![Var::Q, Var::X];
        let mut ys = self.order.clone();
        ys.sort_unstable();
        v.extend(ys.into_iter().map(Var::Y));
        v
    }

    fn unknown_for(&self, set: &[Var], codim: u32) -> DegenResult<Option<Unknown>> {
        let n = self.ring.n;
        if set.len() as u32 > n + 1 {
            return Ok(None);
        }
        let cyc_codim = n + 2 - set.len() as u32;
        if codim < cyc_codim {
            return Ok(None);
        }
        let cycle = ClassPoly::complete_homogeneous(self.ring, cyc_codim, set)?;
        let mut vars = self.active_vars();
        if set.len() == 2 {
            vars.retain(|v| *v != set[1]);
        }
        let names: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        Ok(Some(Unknown { label: format!("dep({})", names.join(",")), cycle, vars, degree: codim - cyc_codim }))
    }
}

fn swap_var(v: Var, a: Var, b: Var) -> Var {
    if v == a {
        b
    } else if v == b {
        a
    } else {
        v
    }
}

fn canonical(set: &[Var]) -> Vec<Var> {
    let mut s = set.to_vec();
    s.sort_by_key(|v| match v {
        Var::X => 0,
        Var::Y(j) => *j,
        _ => u32::MAX,
    });
    s
}

fn condition_factor(st: &ChainState<'_>, c: &CovariantCondition) -> DegenResult<NumClass> {
    let ring = st.ring;
    let twist = condition_class::<strata_ring::Rational>(c, ring)?;
    let w = vanishing_span(c, &st.processed, ring.num_y);
    Ok(match step_kind(c) {
        StepKind::Scalar | StepKind::Base => twist,
        StepKind::Kernel => {
            let y = Var::Y(y_points(c)[0]);
            let w: Vec<Var> = w.into_iter().filter(|v| *v != y).collect();
            kernel_condition_class(ring, c.free_indices, &w, y, &twist)?
        }
        StepKind::Mixed => {
            let (total, rank) = symmetric_quotient_chern(ring, c.free_indices, &w, &twist)?;
            total.homogeneous_part(rank)
        }
    })
}

/// Imposes a group of conditions and solves for the residual factors.
fn impose<'a>(st: &mut ChainState<'a>, class: &NumClass, group: &[&'a CovariantCondition]) -> DegenResult<(NumClass, StepReport)> {
    let kind = step_kind(group[0]);
    let previous_kernel = st.kernel.clone();
    let mut expr = class.clone();
    for c in group {
        expr = expr.try_mul(&condition_factor(st, c)?)?;
        st.processed.push(c);
        st.note_points(c);
        if step_kind(c) == StepKind::Kernel {
            st.kernel.push(y_points(c)[0]);
        }
    }
    let codim = expr.homogeneous_degree().unwrap_or(0);
    let mut sets: Vec<Vec<Var>> = Vec::new();
    if kind == StepKind::Kernel {
        let mut s = vec![Var::X];
        for j in &previous_kernel {
            s.push(Var::Y(*j));
            sets.push(s.clone());
        }
    } else {
        let mut s = vec![Var::X];
        for j in &st.order {
            s.push(Var::Y(*j));
            sets.push(canonical(&s));
        }
        let constraints = st.constraints();
        let mut i = 0;
        while i < sets.len() {
            for g in &constraints.symmetric {
                let img = canonical(&sets[i].iter().map(|v| swap_var(*v, g[0], g[1])).collect::<Vec<_>>());
                if !sets.contains(&img) {
                    sets.push(img);
                }
            }
            i += 1;
        }
    }
    let mut unknowns = Vec::new();
    for s in &sets {
        if let Some(u) = st.unknown_for(s, codim)? {
            unknowns.push(u);
        }
    }
    let solved = consistency_solve(&expr, &unknowns, &st.constraints())?;
    let names: Vec<String> = group.iter().map(|c| c.to_string()).collect();
    Ok((
        solved.class,
        StepReport {
            condition: names.join("; "),
            kind,
            codim,
            residual_cycles: unknowns.iter().map(|u| u.label.clone()).collect(),
            unknowns: solved.unknowns,
        },
    ))
}

/// Runs the chain for an explicit stratum specification.
pub fn chain_from_spec(spec: LiftedStratumSpec) -> DegenResult<LinearRun> {
    let ring = spec.ring;
    let mut st = ChainState { spec: &spec, ring, processed: Vec::new(), kernel: Vec::new(), order: Vec::new() };
    let mut class = NumClass::one(ring)?;
    let mut steps = Vec::new();
    let (base, rest): (Vec<&CovariantCondition>, Vec<&CovariantCondition>) =
        spec.conditions.iter().partition(|c| step_kind(c) == StepKind::Base);
    for c in base {
        let comp = condition_class::<strata_ring::Rational>(c, ring)?;
        let count = u32::try_from(c.components).map_err(|_| DegenError::Unsupported("too many components".into()))?;
        class = class.try_mul(&comp.try_pow(count)?)?;
        st.processed.push(c);
        steps.push(StepReport {
            condition: c.to_string(),
            kind: StepKind::Base,
            codim: class.homogeneous_degree().unwrap_or(0),
            residual_cycles: Vec::new(),
            unknowns: 0,
        });
    }
    // Kernel conditions are imposed one at a time; consecutive scalar and mixed
    // conditions of the same order form one group, since the power bounds only
    // hold once the whole group is imposed.  A group whose residual factors are
    // not determined is retried one condition at a time.
    let mut groups: Vec<Vec<&CovariantCondition>> = Vec::new();
    for c in rest {
        let kind = step_kind(c);
        match groups.last_mut() {
            Some(g)
                if kind != StepKind::Kernel
                    && step_kind(g[0]) != StepKind::Kernel
                    && g[0].order == c.order =>
            {
                g.push(c)
            }
            _ => groups.push(vec![c]),
        }
    }
    for group in groups {
        let saved = (st.processed.clone(), st.kernel.clone(), st.order.clone());
        match impose(&mut st, &class, &group) {
            Ok((next, report)) => {
                class = next;
                steps.push(report);
            }
            Err(DegenError::NonUnique { .. }) if group.len() > 1 => {
                (st.processed, st.kernel, st.order) = saved;
                for c in group {
                    let (next, report) = impose(&mut st, &class, &[c])?;
                    class = next;
                    steps.push(report);
                }
            }
            Err(e) => return Err(e),
        }
    }
    let constraints = st.constraints();
    constraints.check(&class).map_err(|constraint| DegenError::NoSolution { constraint })?;
    let bounds: Vec<(Var, u32)> = (1..=ring.num_y).map(|j| (Var::Y(j), st.bound(j))).collect();
    let minimal = minimal_class(&class, &bounds)?;
    let cycles = enumerate_cycles(ring.n, &spec.aux_layout, &spec.conditions);
    let mut spec = spec.clone();
    spec.class = Some(class.clone());
    Ok(LinearRun { spec, lifted: class, constraints, minimal, steps, cycles })
}

/// Extracts the coefficient of `Π Y_j^{b_j}` and drops the auxiliary generators.
pub fn minimal_class(lifted: &NumClass, bounds: &[(Var, u32)]) -> DegenResult<NumClass> {
    Ok(lifted.gysin_extract(bounds)?.restrict_points(&[])?)
}

/// Condition list of the corank-`r` stratum (`f^{(2)}` has an `r`-dimensional
/// kernel at `x`): the singular point and `r` kernel points.
pub fn corank_spec(n: u32, r: u32) -> DegenResult<LiftedStratumSpec> {
    if r == 0 || r > n {
        return Err(DegenError::Unsupported(format!("corank {r} needs 1 <= r <= n = {n}")));
    }
    let comps = binomial_u64(u64::from(n) + 1, 1);
    let ring = RingSpec::new(n, r, (comps * u64::from(r + 1) + 2) as u32, false, Basis::Q(2))?;
    let kernel = Space::span(0..r as usize);
    let aux_layout = (1..=r)
        .map(|j| AuxPoint { label: Label::Y(j), space: kernel.clone(), axis: j as usize - 1 })
        .collect();
    let mut conditions = vec![CovariantCondition {
        order: 2,
        contractions: [(Label::X, 1)].into_iter().collect(),
        free_indices: 1,
        components: comps,
        points: Vec::new(),
        source: Vec::new(),
    }];
    for j in 1..=r {
        conditions.push(CovariantCondition {
            order: 2,
            contractions: [(Label::Y(j), 1)].into_iter().collect(),
            free_indices: 1,
            components: comps,
            points: Vec::new(),
            source: Vec::new(),
        });
    }
    Ok(LiftedStratumSpec { ring, aux_layout, conditions, class: None })
}

/// Corank-`r` lifted class by successive kernel degenerations.
pub fn corank_chain(n: u32, r: u32) -> DegenResult<LinearRun> {
    chain_from_spec(corank_spec(n, r)?)
}

/// The cusp computed one component at a time.
///
/// Impose the kernel components `f^{(2)}(y, e_m) = 0` one after the other on
/// the ordinary double point.  The naive intersection of `m` components
/// contains, besides the wanted locus, the piece where `x` lies in the
/// coordinate hyperplane of the `m`-th direction; that piece is the same
/// problem with one direction less, so `P_m = (Q + Y)^m - X P_{m-1}`
/// (multiplicity one).  The last step also removes the diagonal `x = y`, over
/// which every component vanishes identically.
pub fn cusp_by_components(n: u32) -> DegenResult<NumClass> {
    let ring = RingSpec::new(n, 1, 2 * n + 4, false, Basis::Q(2))?;
    let x = NumClass::var(ring, Var::X)?;
    let qx = NumClass::linear_int(ring, &[(Var::Q, 1), (Var::X, 1)])?;
    let qy = NumClass::linear_int(ring, &[(Var::Q, 1), (Var::Y(1), 1)])?;
    let base = qx.try_pow(n + 1)?;
    let diag = crate::classes::diagonal_class::<strata_ring::Rational>(2, &[Var::X, Var::Y(1)], ring)?;
    let mut naive = base.clone();
    let mut prev = base.clone();
    for m in 1..=n {
        let mut residuals = vec![(1, x.try_mul(&prev)?)];
        if m == n {
            residuals.push((1, diag.try_mul(&base)?));
        }
        prev = degenerate_step(&naive, &qy, &residuals)?;
        naive = naive.try_mul(&qy)?;
    }
    Ok(prev)
}

/// The tacnode from the cusp: `[A_2] · [f^{(3)}(y,y,y) = 0]` minus the
/// diagonal residual `x = y`.  The cubic condition vanishes to order 3 along
/// the diagonal, and the cusp restricted to the diagonal is read off from the
/// derivative of order `n - 1` in `Y` (the kernel point has fibre `P^1` there).
pub fn tacnode_step(cusp: &NumClass) -> DegenResult<NumClass> {
    let ring = *cusp.spec();
    let mult = intersection_multiplicity(2, 3, 3)?;
    let condition = NumClass::linear_int(ring, &[(Var::Q, 1), (Var::X, -1), (Var::Y(1), 3)])?;
    let residual = residual_over_diagonal(cusp, Var::X, Var::Y(1), 1)?;
    degenerate_step(cusp, &condition, &[(mult, residual)])
}
