//! Non-linear types reached through shipped degeneration recipes.

use strata_diagram::NormalForm;
use strata_ring::{NumClass, RingSpec, Var};

use crate::engine::{chain_linear, corank_chain, minimal_class, LinearRun};
use crate::error::{DegenError, DegenResult};
use crate::recipe::{invert_division, Inverted, RecipeFile};

/// The `A_4` recipe: degenerating the quadratic part along the kernel point of
/// an `A_4` germ leads to `D_5` and `P_8` points.
pub const A4_RECIPE: &str = include_str!("../data/a4.json");

/// Pushes a lifted class forward to its first `keep` auxiliary points: every
/// later point is extracted at its largest allowed power.
pub fn push_to_points(run: &LinearRun, keep: u32) -> DegenResult<NumClass> {
    let ring = *run.lifted.spec();
    let targets: Vec<(Var, u32)> = run
        .constraints
        .max_power
        .iter()
        .filter(|(v, _)| matches!(v, Var::Y(j) if *j > keep))
        .copied()
        .collect();
    let extracted = run.lifted.gysin_extract(&targets)?;
    let kept: Vec<u32> = (1..=keep.min(ring.num_y)).collect();
    Ok(extracted.restrict_points(&kept)?)
}

/// Moves a class into `ring` (same dimension, basis and points; any cap).
fn into_ring(class: &NumClass, ring: RingSpec) -> DegenResult<NumClass> {
    let c = class.rebase(ring.basis)?.with_f_cap(ring.f_cap)?;
    if c.spec() != &ring {
        return Err(DegenError::Recipe(format!("class lives in {} but {} was requested", c.spec(), ring)));
    }
    Ok(c)
}

/// Classes of linear strata by name: the stratum lifted with its first
/// `points` auxiliary points, pushed forward to the points of `ring`.
///
/// `P8` names the corank-3 stratum lifted with kernel points; it is empty
/// (class zero) when `n < 3`.  Integrating out a point `y_j` is the Gysin map:
/// the coefficient of `Y_j^n`.
pub fn resolve_stratum(name: &str, points: u32, ring: RingSpec) -> DegenResult<NumClass> {
    if name == "P8" && ring.n < 3 {
        return Ok(NumClass::zero(ring)?);
    }
    let run = match name {
        "P8" => corank_chain(ring.n, 3)?,
        other => {
            let nf: NormalForm =
                other.parse().map_err(|_| DegenError::Recipe(format!("unknown stratum {other:?}")))?;
            chain_linear(&nf.diagram(ring.n as usize).map_err(|e| DegenError::Recipe(e.to_string()))?)?
        }
    };
    let lifted = push_to_points(&run, points)?;
    if points < ring.num_y {
        return Err(DegenError::Recipe(format!("{name} lifted with {points} points cannot enter a ring with {}", ring.num_y)));
    }
    let extra: Vec<(Var, u32)> = (ring.num_y + 1..=points).map(|j| (Var::Y(j), ring.n)).collect();
    let kept: Vec<u32> = (1..=ring.num_y).collect();
    let pushed = lifted.gysin_extract(&extra)?.restrict_points(&kept)?;
    into_ring(&pushed, ring)
}

/// Result of running a shipped recipe.
#[derive(Clone, Debug, PartialEq)]
pub struct RecipeRun {
    /// Solution of the recipe (lifted class and residuals).
    pub inverted: Inverted,
    /// Class of the minimal lifting.
    pub minimal: NumClass,
}

/// Runs a recipe file in dimension `n` with the built-in resolver.
pub fn run_recipe(file: &RecipeFile, n: u32) -> DegenResult<RecipeRun> {
    let recipe = file.instantiate(n, resolve_stratum)?;
    let inverted = invert_division(&recipe)?;
    let minimal = minimal_class(&inverted.class, &recipe.constraints.max_power)?;
    Ok(RecipeRun { inverted, minimal })
}

/// The `A_4` stratum from its recipe.
pub fn a4_by_recipe(n: u32) -> DegenResult<RecipeRun> {
    run_recipe(&RecipeFile::from_json(A4_RECIPE)?, n)
}
