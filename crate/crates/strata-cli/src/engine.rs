//! Dispatch from a type name to the engine run that computes its class.

use strata_closedforms::{basis_k, TypeId};
use strata_conditions::ordinary_point_class;
use strata_degen::{a4_by_recipe, chain_linear, corank_chain, DegenError};
use strata_diagram::NormalForm;
use strata_ring::{Basis, NumClass, MAX_CAP};

use crate::CliError;

/// Classes produced by the engine for one type.
#[derive(Clone, Debug, PartialEq)]
pub struct EngineClasses {
    /// Class of the lifted stratum (auxiliary points kept).
    pub lifted: NumClass,
    /// Class of the minimal lifting, in the type's reference basis.
    pub minimal: NumClass,
}

/// Brings a minimal class into the reference basis of `t`, with the full
/// hyperplane truncation, so it compares exactly with the closed forms.
pub fn normalize(t: &TypeId, class: &NumClass) -> Result<NumClass, CliError> {
    let k = basis_k(t)?;
    Ok(class.rebase(Basis::Q(k))?.with_f_cap(MAX_CAP)?)
}

/// Runs the engine for `t` in `P^n`.
pub fn engine_classes(t: &TypeId, n: u32) -> Result<EngineClasses, CliError> {
    let (lifted, minimal) = match t {
        TypeId::A1 | TypeId::Discriminant => {
            let c = ordinary_point_class(n, 1).map_err(DegenError::from)?;
            (c.clone(), c)
        }
        TypeId::Ordinary(p) => {
            let c = ordinary_point_class(n, *p).map_err(DegenError::from)?;
            (c.clone(), c)
        }
        TypeId::Corank(r) => {
            let run = corank_chain(n, *r)?;
            (run.lifted, run.minimal)
        }
        TypeId::P8 => {
            let run = corank_chain(n, 3)?;
            (run.lifted, run.minimal)
        }
        TypeId::A4 => {
            let run = a4_by_recipe(n)?;
            (run.inverted.class, run.minimal)
        }
        TypeId::Reducible(form) => {
            return Err(DegenError::Unsupported(format!("{form} has no engine run; use --source closed-form")).into())
        }
        named => {
            let form: NormalForm = named.to_string().parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let diagram = form.diagram(n as usize).map_err(|e| CliError::Usage(format!("{e}")))?;
            let run = chain_linear(&diagram)?;
            (run.lifted, run.minimal)
        }
    };
    Ok(EngineClasses { minimal: normalize(t, &minimal)?, lifted })
}
