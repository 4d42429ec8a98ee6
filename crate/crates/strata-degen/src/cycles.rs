//! Cycles of jump: loci of the auxiliary space over which the fibre of a
//! lifted stratum jumps in dimension.
//!
//! Every such locus is of the form "the projections `π_I(x)`, `π_I(y_j)`
//! (`j ∈ J`) are linearly dependent" for a coordinate index set `I`.  Two
//! families matter for the linear types handled here: dependence of the
//! singular point with some of the auxiliary points (`I` = all coordinates),
//! and `π_I(x) = 0` for the trailing coordinate blocks, which arise from the
//! coordinate recursion of the conditions contracted with `x`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use strata_conditions::{AuxPoint, CovariantCondition, Label};
use strata_ring::{ClassPoly, Coeff, RingSpec, Var};

use crate::classes::diagonal_class;
use crate::error::DegenResult;

/// The shape of a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleKind {
    /// The projected points are linearly dependent.
    Dependent,
    /// All listed points coincide.
    Coincident,
}

/// `(π_I(x), π_I(y_j))_{j ∈ J}` linearly dependent (or coincident).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleOfJump {
    /// Projection coordinates `I ⊆ {0..n}`.
    pub projection: Vec<u32>,
    /// Whether `x` is among the points.
    pub with_x: bool,
    /// Auxiliary points `J` (1-based).
    pub points: Vec<u32>,
    /// Dependence or coincidence.
    pub kind: CycleKind,
    /// Codimension in the auxiliary space.
    pub codim: u32,
    /// Jump of the fibre dimension of the lifted stratum over the cycle, when known.
    pub jump: Option<u32>,
    /// 1 for minimal cycles, otherwise one more than the largest grading of a contained cycle.
    pub grading: u32,
}

impl CycleOfJump {
    fn vars(&self) -> Vec<Var> {
        let mut v = Vec::new();
        if self.with_x {
            v.push(Var::X);
        }
        v.extend(self.points.iter().map(|j| Var::Y(*j)));
        v
    }

    /// Human-readable description, e.g. `dep(x,y1)` or `pi[2](x)=0`.
    pub fn label(&self, n: u32) -> String {
        let names: Vec<String> = self
            .vars()
            .iter()
            .map(|v| match v {
                Var::X => "x".to_string(),
                Var::Y(j) => format!("y{j}"),
                _ => unreachable!(),
            })
            .collect();
        let full = self.projection.len() as u32 == n + 1;
        match (&self.kind, full) {
            (CycleKind::Coincident, _) => format!("eq({})", names.join(",")),
            (CycleKind::Dependent, true) => format!("dep({})", names.join(",")),
            (CycleKind::Dependent, false) if names.len() == 1 => {
                format!("pi{:?}({})=0", self.projection, names[0])
            }
            (CycleKind::Dependent, false) => format!("dep_pi{:?}({})", self.projection, names.join(",")),
        }
    }

    /// Class of the cycle: `h_{|I|+1-|S|}` of its point generators for
    /// dependence (Porteous), the product of diagonals for coincidence.
    pub fn class<C: Coeff>(&self, ring: RingSpec) -> DegenResult<ClassPoly<C>> {
        let vars = self.vars();
        match self.kind {
            CycleKind::Dependent => {
                let deg = (self.projection.len() + 1).saturating_sub(vars.len()) as u32;
                Ok(ClassPoly::complete_homogeneous(ring, deg, &vars)?)
            }
            CycleKind::Coincident => {
                let mut out = ClassPoly::one(ring)?;
                for w in vars.windows(2) {
                    out = out.try_mul(&diagonal_class(2, w, ring)?)?;
                }
                Ok(out)
            }
        }
    }

    fn point_set(&self) -> BTreeSet<Label> {
        let mut s: BTreeSet<Label> = self.points.iter().map(|j| Label::Y(*j)).collect();
        if self.with_x {
            s.insert(Label::X);
        }
        s
    }

    /// Whether this cycle is contained in `other`.
    pub fn is_contained_in(&self, other: &CycleOfJump) -> bool {
        if self == other {
            return false;
        }
        let mine = self.point_set();
        let theirs = other.point_set();
        let proj_mine: BTreeSet<u32> = self.projection.iter().copied().collect();
        let proj_theirs: BTreeSet<u32> = other.projection.iter().copied().collect();
        match (&self.kind, &other.kind) {
            // Dependence persists under adding points or dropping coordinates.
            (CycleKind::Dependent, CycleKind::Dependent) => mine.is_subset(&theirs) && proj_theirs.is_subset(&proj_mine),
            // Two coinciding points make every set containing them dependent.
            (CycleKind::Coincident, CycleKind::Dependent) => mine.intersection(&theirs).count() >= 2,
            (CycleKind::Coincident, CycleKind::Coincident) => theirs.is_subset(&mine),
            (CycleKind::Dependent, CycleKind::Coincident) => false,
        }
    }
}

/// Enumerates the cycles of jump relevant to a condition list.
///
/// Points taking part in kernel conditions (`f^{(p)}(y, ·, ..) = 0` with one
/// contraction) get the dependence cycles `{x} ∪ T` and the total coincidence
/// cycle, with fibre jumps computed from the rank count of quadratic forms;
/// `π_I(x) = 0` cycles appear when some condition is contracted with `x`.
/// Conditions that only involve full tensors are globally transversal and give
/// no cycles.
pub fn enumerate_cycles(n: u32, aux_layout: &[AuxPoint], conditions: &[CovariantCondition]) -> Vec<CycleOfJump> {
    let all: Vec<u32> = (0..=n).collect();
    let mut involved: BTreeSet<u32> = BTreeSet::new();
    let mut has_x = false;
    for c in conditions {
        for l in c.contractions.keys() {
            match l {
                Label::X => has_x = true,
                Label::Y(j) if aux_layout.iter().any(|a| a.label == Label::Y(*j)) => {
                    involved.insert(*j);
                }
                Label::Y(_) => {}
            }
        }
    }
    let kernel_only = conditions.iter().filter(|c| c.contractions.keys().any(|l| *l != Label::X)).all(|c| {
        c.contractions.iter().filter(|(l, _)| **l != Label::X).map(|(_, m)| *m).sum::<u32>() == 1
    });
    let involved: Vec<u32> = involved.into_iter().collect();
    // Points spanning the kernel: x and the kernel points.
    let s = involved.len() as u32 + 1;
    let mut out = Vec::new();
    if has_x {
        for i in 1..=n {
            out.push(CycleOfJump {
                projection: ((n + 1 - i)..=n).collect(),
                with_x: true,
                points: Vec::new(),
                kind: CycleKind::Dependent,
                codim: i,
                jump: Some(0),
                grading: 1,
            });
        }
    }
    for mask in 1u32..(1 << involved.len()) {
        let t: Vec<u32> = (0..involved.len()).filter(|i| mask & (1 << i) != 0).map(|i| involved[i]).collect();
        let size = t.len() as u32 + 1;
        if size > n + 1 {
            continue;
        }
        out.push(CycleOfJump {
            projection: all.clone(),
            with_x: true,
            points: t,
            kind: CycleKind::Dependent,
            codim: n + 2 - size,
            // The span of the kernel points drops by one.
            jump: kernel_only.then(|| n + 1 - s),
            grading: 1,
        });
    }
    if s >= 3 {
        out.push(CycleOfJump {
            projection: all.clone(),
            with_x: true,
            points: involved.clone(),
            kind: CycleKind::Coincident,
            codim: n * (s - 1),
            jump: kernel_only.then(|| ((2 * n + 2 - s) * (s - 1) / 2).saturating_sub(1)),
            grading: 1,
        });
    }
    assign_gradings(&mut out);
    out
}

fn assign_gradings(cycles: &mut [CycleOfJump]) {
    // Longest chain of proper containments ending at each cycle.
    let len = cycles.len();
    let mut grading = vec![1u32; len];
    for _ in 0..len {
        let mut changed = false;
        for a in 0..len {
            for b in 0..len {
                if cycles[b].is_contained_in(&cycles[a]) && grading[a] < grading[b] + 1 {
                    grading[a] = grading[b] + 1;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for (c, g) in cycles.iter_mut().zip(grading) {
        c.grading = g;
    }
}
