//! Recipe inversion: forward/backward round trips and the recipe file format.

use proptest::prelude::*;
use strata_degen::*;
use strata_ring::{rat, Basis, NumClass, RingSpec, Var};

fn ring() -> RingSpec {
    RingSpec::new(2, 1, 10, false, Basis::Q(2)).unwrap()
}

fn class_strategy() -> impl Strategy<Value = NumClass> {
    prop::collection::vec(((0u32..=2, 0u32..=2, 0u32..=4), -6i64..=6), 1..8).prop_map(|terms| {
        let r = ring();
        NumClass::from_terms(r, terms.into_iter().map(|((x, y, q), c)| (vec![x, y, q], rat(c)))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn forward_then_invert_round_trips(p in class_strategy(), lead in 1i64..=3, a in -3i64..=3, b in -3i64..=3) {
        let r = ring();
        let divisor = NumClass::linear_int(r, &[(Var::Q, lead), (Var::X, a), (Var::Y(1), b)]).unwrap();
        let rhs = p.try_mul(&divisor).unwrap();
        let recipe = DegenerationRecipe {
            source: "P".into(),
            divisor,
            rhs: vec![("D".into(), rhs, 1)],
            residuals: vec![],
            constraints: Constraints::default(),
        };
        prop_assert_eq!(invert_division(&recipe).unwrap().class, p);
    }

    #[test]
    fn multiplicities_scale_the_source(p in class_strategy(), mult in 1u32..=4) {
        let r = ring();
        let divisor = NumClass::linear_int(r, &[(Var::Q, 1), (Var::Y(1), -2)]).unwrap();
        let recipe = DegenerationRecipe {
            source: "P".into(),
            divisor: divisor.clone(),
            rhs: vec![("D".into(), p.try_mul(&divisor).unwrap(), mult)],
            residuals: vec![],
            constraints: Constraints::default(),
        };
        prop_assert_eq!(invert_division(&recipe).unwrap().class, p.scale(&rat(i64::from(mult))));
    }
}

#[test]
fn shipped_recipe_parses() {
    let file = RecipeFile::from_json(A4_RECIPE).unwrap();
    assert_eq!(file.source, "A4");
    assert_eq!(file.rhs.len(), 2);
    assert_eq!(file.residuals.len(), 1);
    let ring = file.ring(3).unwrap();
    assert_eq!((ring.n, ring.num_y, ring.basis), (3, 1, Basis::Q(2)));
}

#[test]
fn unknown_strata_are_rejected() {
    let text = A4_RECIPE.replace("\"D5\"", "\"B7\"");
    let file = RecipeFile::from_json(&text).unwrap();
    assert!(matches!(run_recipe(&file, 3), Err(DegenError::Recipe(_))));
}

#[test]
fn malformed_recipes_are_rejected() {
    assert!(RecipeFile::from_json("{\"source\": 3}").is_err());
    let zero = A4_RECIPE.replacen("\"mult\": 2", "\"mult\": 0", 1);
    let file = RecipeFile::from_json(&zero).unwrap();
    assert!(run_recipe(&file, 3).is_err());
}

#[test]
fn p8_is_empty_for_curves() {
    let r = RingSpec::new(2, 1, 30, false, Basis::Q(2)).unwrap();
    assert!(resolve_stratum("P8", 2, r).unwrap().is_zero());
    let r3 = RingSpec::new(3, 1, 30, false, Basis::Q(2)).unwrap();
    assert!(!resolve_stratum("D5", 1, r3).unwrap().is_zero());
}
