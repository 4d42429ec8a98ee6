//! Exact linear algebra for consistency solving.
//!
//! Unknown residual classes are homogeneous polynomials with undetermined
//! coefficients.  The lifted class is affine in those coefficients, and the
//! two consistency conditions (symmetry under the flag-preserving permutations
//! and bounded powers of the auxiliary generators) are linear equations on
//! them.  The system is solved exactly over the rationals; a solution is
//! accepted only if every solution yields the same class.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use strata_ring::{Mono, NumClass, Rational, RingSpec, Var};

use crate::error::{DegenError, DegenResult};

/// An unknown residual piece `cycle · U` with `U` homogeneous of `degree` in `vars`.
#[derive(Clone, Debug, PartialEq)]
pub struct Unknown {
    /// Human-readable name of the cycle.
    pub label: String,
    /// Class of the cycle of jump.
    pub cycle: NumClass,
    /// Generators `U` may depend on.
    pub vars: Vec<Var>,
    /// Total degree of `U`.
    pub degree: u32,
}

/// The consistency conditions imposed on a class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    /// Groups of generators the class must be symmetric in.
    pub symmetric: Vec<Vec<Var>>,
    /// Upper bounds on exponents.
    pub max_power: Vec<(Var, u32)>,
}

impl Constraints {
    /// Checks a class against the constraints, naming the first violation.
    pub fn check(&self, class: &NumClass) -> Result<(), String> {
        let spec = *class.spec();
        for (v, cap) in &self.max_power {
            let slot = spec.slot(*v).map_err(|e| e.to_string())?;
            if let Some((m, _)) = class.terms().find(|(m, _)| m.exp(slot) > *cap) {
                return Err(format!("{v}^{} appears (bound {cap}) in {:?}", m.exp(slot), m.exps(spec.num_vars())));
            }
        }
        for perm in self.permutations(&spec).map_err(|e| e.to_string())? {
            let p = class.permute(&perm).map_err(|e| e.to_string())?;
            if &p != class {
                return Err(format!("not symmetric under slot permutation {perm:?}"));
            }
        }
        Ok(())
    }

    /// Adjacent transpositions generating each symmetry group, as slot permutations.
    pub fn permutations(&self, spec: &RingSpec) -> DegenResult<Vec<Vec<usize>>> {
        let points = spec.num_y as usize + 1;
        let mut out = Vec::new();
        for group in &self.symmetric {
            let slots: Vec<usize> = group.iter().map(|v| spec.slot(*v)).collect::<Result<_, _>>()?;
            for w in slots.windows(2) {
                if w[0] >= points || w[1] >= points {
                    return Err(DegenError::Recipe("symmetry groups may only contain point generators".into()));
                }
                let mut perm: Vec<usize> = (0..points).collect();
                perm.swap(w[0], w[1]);
                out.push(perm);
            }
        }
        Ok(out)
    }
}

/// What a tracked component of an affine family must satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Every coefficient vanishes.
    Vanish,
    /// The consistency conditions hold.
    Consistent(Constraints),
}

/// An affine family of tuples of classes `base + Σ a_j cols[j]`.
#[derive(Clone, Debug)]
pub struct AffineFamily {
    /// Value at `a = 0`, one class per tracked component.
    pub base: Vec<NumClass>,
    /// Direction of each unknown coefficient, one class per tracked component.
    pub cols: Vec<Vec<NumClass>>,
}

/// Outcome of a solve.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    /// The tracked components at the solution.
    pub values: Vec<NumClass>,
    /// The solved coefficients.
    pub coeffs: Vec<Rational>,
    /// Number of unknown coefficients.
    pub unknowns: usize,
    /// Rank of the constraint system.
    pub rank: usize,
}

/// Incremental row echelon form over the rationals.
#[derive(Default)]
struct Echelon {
    // pivot column -> (entries right of the pivot, rhs); the pivot entry is 1.
    pivots: BTreeMap<usize, (BTreeMap<usize, Rational>, Rational)>,
}

impl Echelon {
    /// Adds an equation; returns `false` if it is inconsistent with the others.
    fn insert(&mut self, mut row: BTreeMap<usize, Rational>, mut rhs: Rational) -> bool {
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).next().map(|(c, _)| *c);
            let Some(c) = next else { break };
            if let Some((prow, prhs)) = self.pivots.get(&c) {
                let f = row.remove(&c).expect("present");
                for (k, v) in prow {
                    let e = row.entry(*k).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
                rhs -= &f * prhs;
                cursor = c + 1;
            } else {
                let lead = row.remove(&c).expect("present");
                let inv = Rational::one() / lead;
                for v in row.values_mut() {
                    *v *= &inv;
                }
                rhs *= &inv;
                self.pivots.insert(c, (row, rhs));
                return true;
            }
        }
        rhs.is_zero()
    }

    /// Particular solution with all free coefficients zero.
    fn particular(&self, ncols: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); ncols];
        for (c, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (k, a) in row {
                v -= a * &x[*k];
            }
            x[*c] = v;
        }
        x
    }

    /// Null vector with free coefficient `f` set to one.
    fn null_vector(&self, f: usize, ncols: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); ncols];
        x[f] = Rational::one();
        for (c, (row, _)) in self.pivots.iter().rev() {
            let mut v = Rational::zero();
            for (k, a) in row {
                v -= a * &x[*k];
            }
            x[*c] = v;
        }
        x
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum RowKey {
    Vanish { comp: usize, mono: Mono },
    Power { comp: usize, mono: Mono },
    Swap { comp: usize, perm: usize, mono: Mono },
}

impl RowKey {
    fn describe(&self, spec: &RingSpec) -> String {
        let nv = spec.num_vars();
        match self {
            RowKey::Vanish { comp, mono } => format!("component {comp} must vanish at {:?}", mono.exps(nv)),
            RowKey::Power { comp, mono } => format!("component {comp}: exponent bound violated at {:?}", mono.exps(nv)),
            RowKey::Swap { comp, perm, mono } => {
                format!("component {comp}: symmetry {perm} violated at {:?}", mono.exps(nv))
            }
        }
    }
}

struct RuleData {
    bounds: Vec<(usize, u32)>,
    perms: Vec<Vec<usize>>,
}

fn functional(comp: usize, rule: &Rule, data: &RuleData, class: &NumClass, out: &mut Vec<(RowKey, Rational)>) {
    match rule {
        Rule::Vanish => {
            for (m, c) in class.terms() {
                out.push((RowKey::Vanish { comp, mono: m }, c.clone()));
            }
        }
        Rule::Consistent(_) => {
            for (m, c) in class.terms() {
                if data.bounds.iter().any(|&(s, cap)| m.exp(s) > cap) {
                    out.push((RowKey::Power { comp, mono: m }, c.clone()));
                }
                for (pi, perm) in data.perms.iter().enumerate() {
                    let pm = permute_mono(m, perm, class.spec().hyper_slot());
                    if m < pm {
                        out.push((RowKey::Swap { comp, perm: pi, mono: m }, c.clone()));
                    } else if pm < m {
                        out.push((RowKey::Swap { comp, perm: pi, mono: pm }, -c.clone()));
                    }
                }
            }
        }
    }
}

fn permute_mono(m: Mono, perm: &[usize], hyper_slot: usize) -> Mono {
    let mut out = Mono::ONE.with_exp(hyper_slot, m.exp(hyper_slot));
    for (i, &p) in perm.iter().enumerate() {
        out = out.with_exp(p, m.exp(i));
    }
    out
}

/// Solves for the unknown coefficients so that every component obeys its rule,
/// and checks that component `result` is the same for every solution.
pub fn solve_affine(family: &AffineFamily, rules: &[Rule], result: usize) -> DegenResult<AffineSolution> {
    if family.base.len() != rules.len() || family.cols.iter().any(|c| c.len() != rules.len()) {
        return Err(DegenError::Recipe("affine family and rules disagree in length".into()));
    }
    let spec = *family.base[result].spec();
    let mut data = Vec::with_capacity(rules.len());
    for (rule, base) in rules.iter().zip(&family.base) {
        let s = *base.spec();
        data.push(match rule {
            Rule::Vanish => RuleData { bounds: Vec::new(), perms: Vec::new() },
            Rule::Consistent(c) => RuleData {
                bounds: c.max_power.iter().map(|(v, b)| Ok((s.slot(*v)?, *b))).collect::<DegenResult<_>>()?,
                perms: c.permutations(&s)?,
            },
        });
    }
    let ncols = family.cols.len();
    let mut rows: HashMap<RowKey, (BTreeMap<usize, Rational>, Rational)> = HashMap::new();
    let mut order: Vec<RowKey> = Vec::new();
    let mut buf = Vec::new();
    for (comp, rule) in rules.iter().enumerate() {
        buf.clear();
        functional(comp, rule, &data[comp], &family.base[comp], &mut buf);
        for (key, v) in buf.drain(..) {
            let e = rows.entry(key).or_insert_with(|| {
                order.push(key);
                (BTreeMap::new(), Rational::zero())
            });
            // base + Σ a cols satisfies f(.) = 0  <=>  Σ a f(cols) = -f(base)
            e.1 -= v;
        }
        for (j, col) in family.cols.iter().enumerate() {
            functional(comp, rule, &data[comp], &col[comp], &mut buf);
            for (key, v) in buf.drain(..) {
                let e = rows.entry(key).or_insert_with(|| {
                    order.push(key);
                    (BTreeMap::new(), Rational::zero())
                });
                let slot = e.0.entry(j).or_insert_with(Rational::zero);
                *slot += v;
                if slot.is_zero() {
                    e.0.remove(&j);
                }
            }
        }
    }
    let mut ech = Echelon::default();
    for key in &order {
        let (row, rhs) = rows.remove(key).expect("row present");
        if !ech.insert(row, rhs) {
            return Err(DegenError::NoSolution { constraint: key.describe(&spec) });
        }
    }
    let coeffs = ech.particular(ncols);
    let values = evaluate(family, &coeffs)?;
    // Every free direction must leave the result component unchanged.
    let mut kernel_dim = 0;
    for f in 0..ncols {
        if ech.pivots.contains_key(&f) {
            continue;
        }
        let v = ech.null_vector(f, ncols);
        let mut image = NumClass::zero(*family.base[result].spec())?;
        for (j, a) in v.iter().enumerate() {
            if !a.is_zero() {
                image = image.try_add(&family.cols[j][result].scale(a))?;
            }
        }
        if !image.is_zero() {
            kernel_dim += 1;
        }
    }
    if kernel_dim > 0 {
        return Err(DegenError::NonUnique { kernel_dim });
    }
    Ok(AffineSolution { values, coeffs, unknowns: ncols, rank: ech.pivots.len() })
}

fn evaluate(family: &AffineFamily, coeffs: &[Rational]) -> DegenResult<Vec<NumClass>> {
    let mut values = family.base.clone();
    for (j, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, v) in values.iter_mut().enumerate() {
            *v = v.try_add(&family.cols[j][k].scale(a))?;
        }
    }
    Ok(values)
}

/// Monomials of total degree `degree` in `vars`, respecting the ring caps.
pub fn monomials(spec: &RingSpec, vars: &[Var], degree: u32) -> DegenResult<Vec<Mono>> {
    let slots: Vec<usize> = vars.iter().map(|v| spec.slot(*v)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    fn rec(spec: &RingSpec, slots: &[usize], i: usize, rem: u32, m: Mono, out: &mut Vec<Mono>) {
        if i == slots.len() {
            if rem == 0 {
                out.push(m);
            }
            return;
        }
        let s = slots[i];
        let top = rem.min(spec.cap(s).saturating_sub(m.exp(s)));
        for e in 0..=top {
            rec(spec, slots, i + 1, rem - e, m.with_exp(s, m.exp(s) + e), out);
        }
    }
    rec(spec, &slots, 0, degree, Mono::ONE, &mut out);
    Ok(out)
}

/// Result of [`consistency_solve`].
#[derive(Clone, Debug, PartialEq)]
pub struct Solved {
    /// The lifted class `known - Σ cycle_i U_i`.
    pub class: NumClass,
    /// The solved residual factors `U_i`.
    pub residuals: Vec<NumClass>,
    /// Number of unknown coefficients.
    pub unknowns: usize,
}

/// Finds residual factors `U_i` such that `known - Σ cycle_i U_i` satisfies the
/// consistency conditions, and verifies that the resulting class is unique.
pub fn consistency_solve(known: &NumClass, unknowns: &[Unknown], constraints: &Constraints) -> DegenResult<Solved> {
    let spec = *known.spec();
    let mut cols = Vec::new();
    let mut owner = Vec::new();
    for (i, u) in unknowns.iter().enumerate() {
        for m in monomials(&spec, &u.vars, u.degree)? {
            let mono = NumClass::from_terms(spec, [(m.exps(spec.num_vars()), Rational::one())])?;
            let col = u.cycle.try_mul(&mono)?;
            cols.push(vec![-&col, mono]);
            owner.push(i);
        }
    }
    let family = AffineFamily { base: vec![known.clone(), NumClass::zero(spec)?], cols };
    let rules = [Rule::Consistent(constraints.clone()), Rule::Vanish];
    // The second component only tracks U; it must not be constrained.
    let sol = solve_affine_tracked(&family, &rules[..1], 0)?;
    let mut residuals = vec![NumClass::zero(spec)?; unknowns.len()];
    for (j, a) in sol.coeffs.iter().enumerate() {
        if !a.is_zero() {
            residuals[owner[j]] = residuals[owner[j]].try_add(&family.cols[j][1].scale(a))?;
        }
    }
    Ok(Solved { class: sol.values[0].clone(), residuals, unknowns: sol.unknowns })
}

/// Like [`solve_affine`] but only the first `rules.len()` components are constrained.
fn solve_affine_tracked(family: &AffineFamily, rules: &[Rule], result: usize) -> DegenResult<AffineSolution> {
    let k = rules.len();
    let trimmed = AffineFamily {
        base: family.base[..k].to_vec(),
        cols: family.cols.iter().map(|c| c[..k].to_vec()).collect(),
    };
    solve_affine(&trimmed, rules, result)
}
