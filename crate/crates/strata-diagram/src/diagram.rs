//! Newton diagrams and the data read off them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use strata_ring::{Rational, Scalar};

use crate::error::DiagramError;
use crate::hull::{compact_facets, pairing};

/// A top-dimensional compact face `Σ m_i / k_i = 1` of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Axis intercepts `k_i`, indexed by axis.
    pub intercepts: Vec<Rational>,
    /// Support points lying on the facet.
    pub vertices: Vec<Vec<u32>>,
}

impl Facet {
    fn from_normal(normal: Vec<Rational>, vertices: Vec<Vec<u32>>) -> Self {
        let intercepts = normal.iter().map(|a| Rational::one().div_ref(a)).collect();
        Facet { intercepts, vertices }
    }

    /// `Σ m_i / k_i`.
    pub fn level(&self, m: &[u32]) -> Rational {
        let normal: Vec<Rational> = self.intercepts.iter().map(|k| Rational::one().div_ref(k)).collect();
        pairing(&normal, m)
    }

    /// Intercepts sorted in descending order.
    pub fn sorted_intercepts(&self) -> Vec<Rational> {
        let mut v = self.intercepts.clone();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    /// Largest intercept.
    pub fn max_intercept(&self) -> Rational {
        self.intercepts.iter().max().cloned().expect("facets have at least one axis")
    }

    /// Smallest intercept.
    pub fn min_intercept(&self) -> Rational {
        self.intercepts.iter().min().cloned().expect("facets have at least one axis")
    }

    /// One text line: intercepts as exact fractions `a/b`.
    pub fn report_line(&self) -> String {
        self.intercepts.iter().map(|k| format!("{}/{}", k.numer(), k.denom())).collect::<Vec<_>>().join(" ")
    }
}

/// A coordinate subspace of `C^n`, given by the (0-based) axes spanning it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    axes: BTreeSet<usize>,
}

impl Space {
    /// Span of the given axes.
    pub fn span<I: IntoIterator<Item = usize>>(axes: I) -> Self {
        Space { axes: axes.into_iter().collect() }
    }

    /// The spanning axes in increasing order.
    pub fn axes(&self) -> Vec<usize> {
        self.axes.iter().copied().collect()
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Whether `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Space) -> bool {
        self.axes.is_subset(&other.axes)
    }

    /// Whether the axis lies in the space.
    pub fn contains_axis(&self, axis: usize) -> bool {
        self.axes.contains(&axis)
    }

    /// The homogeneous lift `span(V, ê_0)` in `C^{n+1}`: index 0 is `ê_0`, axis `i` becomes `i + 1`.
    pub fn homogeneous_lift(&self) -> Vec<usize> {
        std::iter::once(0).chain(self.axes.iter().map(|a| a + 1)).collect()
    }

    /// Total order used for labelling: by dimension, then by axes.
    pub fn label_cmp(&self, other: &Space) -> Ordering {
        (self.dim(), self.axes()).cmp(&(other.dim(), other.axes()))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.axes.iter().map(|a| format!("e{}", a + 1)).collect();
        write!(f, "span({})", names.join(","))
    }
}

/// The flag `V_1 ⊆ ... ⊆ V_n` of a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSpec {
    /// `spaces[i]` is `V_{i+1}`.
    pub spaces: Vec<Space>,
}

impl FlagSpec {
    /// The homogeneous lifts `𝕍_i = span(V_i, ê_0)`.
    pub fn homogeneous_lifts(&self) -> Vec<Vec<usize>> {
        self.spaces.iter().map(Space::homogeneous_lift).collect()
    }

    /// The smallest flag member containing an axis.
    pub fn associated_space(&self, axis: usize) -> &Space {
        self.spaces.iter().find(|s| s.contains_axis(axis)).expect("V_n is the whole space")
    }
}

/// Distinct spaces collected from all facet flags, with their inclusion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpaceCollection {
    /// Spaces sorted by dimension, then axes.
    pub spaces: Vec<Space>,
    /// `inclusion[i][j]` is true iff `spaces[i] ⊆ spaces[j]`.
    pub inclusion: Vec<Vec<bool>>,
}

impl VectorSpaceCollection {
    fn new(mut spaces: Vec<Space>) -> Self {
        spaces.sort_by(Space::label_cmp);
        spaces.dedup();
        let inclusion = spaces.iter().map(|a| spaces.iter().map(|b| a.is_subspace_of(b)).collect()).collect();
        VectorSpaceCollection { spaces, inclusion }
    }
}

/// Diagram input: `{"n": int, "support": [[int, ...], ...], "name": optional string}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramInput {
    /// Number of local variables.
    pub n: usize,
    /// Exponent vectors of a representative.
    pub support: Vec<Vec<u32>>,
    /// Optional display name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// The Newton diagram of a representative germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonDiagram {
    n: usize,
    support: Vec<Vec<u32>>,
    facets: Vec<Facet>,
    commode: bool,
    name: Option<String>,
}

fn check_support(n: usize, support: &[Vec<u32>]) -> Result<Vec<Vec<u32>>, DiagramError> {
    if n == 0 {
        return Err(DiagramError::InvalidSupport("n must be at least 1".into()));
    }
    if support.is_empty() {
        return Err(DiagramError::InvalidSupport("empty support".into()));
    }
    if let Some(bad) = support.iter().find(|m| m.len() != n) {
        return Err(DiagramError::InvalidSupport(format!("{bad:?} does not have {n} entries")));
    }
    if support.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return Err(DiagramError::InvalidSupport("the constant monomial cannot be in the support of a singular germ".into()));
    }
    let mut s: Vec<Vec<u32>> = support.to_vec();
    s.sort();
    s.dedup();
    Ok(s)
}

fn axis_without_point(n: usize, support: &[Vec<u32>]) -> Option<usize> {
    (0..n).find(|&i| !support.iter().any(|m| m[i] > 0 && m.iter().enumerate().all(|(j, &e)| j == i || e == 0)))
}

impl NewtonDiagram {
    /// Builds a commode diagram; fails if an axis carries no support point.
    pub fn build(n: usize, support: &[Vec<u32>]) -> Result<Self, DiagramError> {
        let support = check_support(n, support)?;
        if let Some(axis) = axis_without_point(n, &support) {
            return Err(DiagramError::NotCommode { axis: axis + 1 });
        }
        Self::from_checked(n, support, true)
    }

    /// Builds the compact facets of a possibly non-commode support (for
    /// example `z1^2 z2 + z2^4`).  Lattice-point queries then refer to the
    /// compact facets only.
    pub fn build_lenient(n: usize, support: &[Vec<u32>]) -> Result<Self, DiagramError> {
        let support = check_support(n, support)?;
        let commode = axis_without_point(n, &support).is_none();
        Self::from_checked(n, support, commode)
    }

    fn from_checked(n: usize, support: Vec<Vec<u32>>, commode: bool) -> Result<Self, DiagramError> {
        let mut facets: Vec<Facet> =
            compact_facets(n, &support).into_iter().map(|(a, on)| Facet::from_normal(a, on)).collect();
        if facets.is_empty() {
            return Err(DiagramError::NoFacets);
        }
        facets.sort_by(|a, b| a.intercepts.cmp(&b.intercepts));
        Ok(NewtonDiagram { n, support, facets, commode, name: None })
    }

    /// Builds from the JSON input format.
    pub fn from_input(input: &DiagramInput) -> Result<Self, DiagramError> {
        let mut d = Self::build(input.n, &input.support)?;
        d.name = input.name.clone();
        Ok(d)
    }

    /// Parses and builds from JSON text.
    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let input: DiagramInput = serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        Self::from_input(&input)
    }

    /// Attaches a display name.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Display name, if any.
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of local variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted, deduplicated support.
    pub fn support(&self) -> &[Vec<u32>] {
        &self.support
    }

    /// Compact top-dimensional facets.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Whether every axis carries a support point.
    pub fn is_commode(&self) -> bool {
        self.commode
    }

    /// Whether `m` lies strictly below the diagram (outside `Γ_+`).
    pub fn is_under(&self, m: &[u32]) -> bool {
        self.facets.iter().any(|f| f.level(m) < Rational::one())
    }

    /// Whether `m` lies on the diagram `Γ_f`.
    pub fn is_on(&self, m: &[u32]) -> bool {
        !self.is_under(m) && self.facets.iter().any(|f| f.level(m) == Rational::one())
    }

    /// The lattice points of total degree `r` strictly below the diagram,
    /// in decreasing [`monomial_compare`] order.
    pub fn points_under(&self, r: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.n];
        fn rec(d: &NewtonDiagram, i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == cur.len() {
                cur[i] = rem;
                if d.is_under(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            for e in (0..=rem).rev() {
                cur[i] = e;
                rec(d, i + 1, rem - e, cur, out);
            }
        }
        rec(self, 0, r, &mut cur, &mut out);
        out
    }

    /// All points strictly below the diagram, by increasing total degree.
    pub fn all_points_under(&self) -> Vec<Vec<u32>> {
        let top = self.max_intercept().ceil().to_u32().expect("intercepts are small");
        (0..=top).flat_map(|r| self.points_under(r)).collect()
    }

    /// Largest intercept over all facets.
    pub fn max_intercept(&self) -> Rational {
        self.facets.iter().map(Facet::max_intercept).max().expect("at least one facet")
    }

    /// The flag of each facet.
    pub fn flags(&self) -> Vec<FlagSpec> {
        self.facets.iter().map(|f| face_flag(f, self.n)).collect()
    }

    /// Human-readable facet report, one line per facet.
    pub fn facet_report(&self) -> String {
        self.facets.iter().map(|f| f.report_line() + "\n").collect()
    }
}

/// Builds a commode diagram from its support.
pub fn build_diagram(n: usize, support: &[Vec<u32>]) -> Result<NewtonDiagram, DiagramError> {
    NewtonDiagram::build(n, support)
}

/// Lattice points of total degree `r` strictly below the diagram.
pub fn points_under(diagram: &NewtonDiagram, r: u32) -> Vec<Vec<u32>> {
    diagram.points_under(r)
}

/// The flag of a facet: with intercepts sorted in descending order,
/// `V_{i-1} = V_i` when the intercepts agree and otherwise `V_{i-1}` is the span
/// of the axes with the `i - 1` largest intercepts.
pub fn face_flag(facet: &Facet, n: usize) -> FlagSpec {
    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps ties in axis order, which makes the result equivariant.
    order.sort_by(|&a, &b| facet.intercepts[b].cmp(&facet.intercepts[a]));
    let mut spaces = vec![Space::span(0..n); n];
    for i in (1..n).rev() {
        // spaces[i] is V_{i+1}; decide V_i = spaces[i-1]
        if facet.intercepts[order[i - 1]] == facet.intercepts[order[i]] {
            spaces[i - 1] = spaces[i].clone();
        } else {
            spaces[i - 1] = Space::span(order[..i].iter().copied());
        }
    }
    FlagSpec { spaces }
}

/// All distinct spaces appearing in the facet flags.
pub fn vector_space_collection(diagram: &NewtonDiagram) -> VectorSpaceCollection {
    VectorSpaceCollection::new(diagram.flags().into_iter().flat_map(|f| f.spaces).collect())
}

/// The slope criterion: every facet has `max k_i <= 2 min k_i`.
pub fn is_linear_type(diagram: &NewtonDiagram) -> bool {
    diagram.facets.iter().all(|f| f.max_intercept() <= f.min_intercept().mul_ref(&Rational::from_i64(2)))
}

/// The diagram of `f + z_{n+1}^2 + ... + z_{n+extra}^2`.
pub fn stable_extension(diagram: &NewtonDiagram, extra: usize) -> Result<NewtonDiagram, DiagramError> {
    if extra == 0 {
        return Ok(diagram.clone());
    }
    let n = diagram.n + extra;
    let mut support: Vec<Vec<u32>> = diagram
        .support
        .iter()
        .map(|m| m.iter().copied().chain(std::iter::repeat_n(0, extra)).collect())
        .collect();
    for j in diagram.n..n {
        let mut m = vec![0; n];
        m[j] = 2;
        support.push(m);
    }
    let mut out = if diagram.commode { NewtonDiagram::build(n, &support)? } else { NewtonDiagram::build_lenient(n, &support)? };
    out.name = diagram.name.clone();
    Ok(out)
}

/// Total degree first, then lexicographic with `z_1` the largest variable.
pub fn monomial_compare(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Multiplicity `p` (lowest total degree on the diagram) and determinacy `k`
/// (largest intercept, rounded up).
pub fn multiplicity_and_determinacy(diagram: &NewtonDiagram) -> (u32, u32) {
    let p = diagram
        .facets
        .iter()
        .flat_map(|f| f.vertices.iter())
        .map(|m| m.iter().sum::<u32>())
        .min()
        .expect("facets have vertices");
    let k = diagram.max_intercept().ceil().to_u32().expect("intercepts are small");
    (p, k)
}
