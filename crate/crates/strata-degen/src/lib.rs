//! The degeneration engine.
//!
//! Lifted strata are intersected with the hypersurfaces of their remaining
//! conditions; residual pieces over cycles of jump are subtracted, with their
//! unknown factors fixed by the consistency conditions (symmetry and bounded
//! powers of the auxiliary generators).  Non-linear types are reached by
//! inverting a degeneration recipe.

mod chern;
mod classes;
mod cycles;
mod engine;
mod error;
mod nonlinear;
mod recipe;
mod solve;

pub use chern::{kernel_condition_class, power_series, symmetric_quotient_chern};
pub use classes::{degenerate_step, diagonal_class, intersection_multiplicity, proportionality_class, residual_over_diagonal};
pub use cycles::{enumerate_cycles, CycleKind, CycleOfJump};
pub use engine::{
    chain_from_spec, chain_linear, corank_chain, corank_spec, cusp_by_components, minimal_class, step_kind,
    tacnode_step, LinearRun, StepKind, StepReport,
};
pub use error::{DegenError, DegenResult};
pub use nonlinear::{a4_by_recipe, push_to_points, resolve_stratum, run_recipe, RecipeRun, A4_RECIPE};
pub use recipe::{
    invert_division, BoundRef, CycleRef, DegenerationRecipe, Inverted, RecipeFile, ResidualClass, ResidualRef, ResidualSpec, RhsRef,
};
pub use solve::{consistency_solve, monomials, solve_affine, AffineFamily, AffineSolution, Constraints, Rule, Solved, Unknown};
