//! The degeneration engine against the closed-form library and hand-derived
//! identities.

use strata_closedforms::{closed_form_class, corank_class, lifted_class, TypeId};
use strata_degen::*;
use strata_diagram::NormalForm;
use strata_ring::{rat, Basis, NumClass, RingSpec, Var, MAX_CAP};

fn ring(n: u32, num_y: u32) -> RingSpec {
    RingSpec::new(n, num_y, 40, false, Basis::Q(2)).unwrap()
}

fn lin(r: RingSpec, parts: &[(Var, i64)]) -> NumClass {
    NumClass::linear_int(r, parts).unwrap()
}

/// A class moved to the closed-form library's ring shape (basis Q2, maximal cap).
fn normalized(c: &NumClass) -> NumClass {
    c.rebase(Basis::Q(2)).unwrap().with_f_cap(MAX_CAP).unwrap()
}

fn run_named(name: &str, n: u32) -> LinearRun {
    let nf: NormalForm = name.parse().unwrap();
    chain_linear(&nf.diagram(n as usize).unwrap()).unwrap()
}

fn assert_consistent(run: &LinearRun, what: &str) {
    run.constraints.check(&run.lifted).unwrap_or_else(|e| panic!("{what}: {e}"));
    let deg = run.degree().unwrap();
    assert_eq!(deg.degree(), Some(run.spec.ring.n as usize), "{what}: degree in d");
    assert!(deg.is_integral(), "{what}: integral degree");
}

#[test]
fn diagonal_class_examples() {
    let r = ring(2, 1);
    let expected = NumClass::complete_homogeneous(r, 2, &[Var::X, Var::Y(1)]).unwrap();
    assert_eq!(diagonal_class::<strata_ring::Rational>(2, &[Var::X, Var::Y(1)], r).unwrap(), expected);
    // X^2 + XY + Y^2, spelled out.
    let x = NumClass::var(r, Var::X).unwrap();
    let y = NumClass::var(r, Var::Y(1)).unwrap();
    let spelled = x.try_pow(2).unwrap().try_add(&x.try_mul(&y).unwrap()).unwrap().try_add(&y.try_pow(2).unwrap()).unwrap();
    assert_eq!(expected, spelled);

    let r3 = ring(3, 2);
    let y1 = NumClass::var(r3, Var::Y(1)).unwrap();
    let y2 = NumClass::var(r3, Var::Y(2)).unwrap();
    let spelled = y1.try_pow(2).unwrap().try_add(&y1.try_mul(&y2).unwrap()).unwrap().try_add(&y2.try_pow(2).unwrap()).unwrap();
    // Two points in P^3 coincide: codimension 3 — the (Y1, Y2) line class of degree n-1 = 2
    // appears as the k = 3 locus with x.
    let three = diagonal_class::<strata_ring::Rational>(3, &[Var::X, Var::Y(1), Var::Y(2)], r3).unwrap();
    assert_eq!(three.homogeneous_degree(), Some(2));
    assert_eq!(diagonal_class::<strata_ring::Rational>(2, &[Var::Y(1), Var::Y(2)], r3).unwrap().homogeneous_degree(), Some(3));
    assert!(spelled.homogeneous_degree() == Some(2));

    // n + 2 points are always dependent.
    let all = diagonal_class::<strata_ring::Rational>(3, &[Var::X, Var::Y(1), Var::Y(2)], ring(1, 2)).unwrap();
    assert_eq!(all, NumClass::one(ring(1, 2)).unwrap());
    assert_eq!(
        diagonal_class::<strata_ring::Rational>(4, &[Var::X, Var::Y(1), Var::Y(2), Var::Y(3)], ring(1, 3)).unwrap_err(),
        DegenError::TooManyPoints { k: 4, n: 1 }
    );
}

#[test]
fn diagonal_telescoping_identity() {
    for n in 1..=5 {
        let r = ring(n, 2);
        let diag = diagonal_class::<strata_ring::Rational>(2, &[Var::Y(1), Var::Y(2)], r).unwrap();
        let diff = lin(r, &[(Var::Y(1), 1), (Var::Y(2), -1)]);
        assert!(diag.try_mul(&diff).unwrap().is_zero(), "n={n}");
    }
}

#[test]
fn proportionality_examples() {
    let r = ring(2, 1);
    let a = NumClass::var(r, Var::X).unwrap();
    let b = NumClass::var(r, Var::Y(1)).unwrap();
    assert_eq!(proportionality_class(1, &a, &b).unwrap(), NumClass::one(r).unwrap());
    let expected = NumClass::complete_homogeneous(r, 2, &[Var::X, Var::Y(1)]).unwrap();
    assert_eq!(proportionality_class(3, &a, &b).unwrap(), expected);
}

#[test]
fn multiplicity_examples() {
    assert_eq!(intersection_multiplicity(2, 3, 3).unwrap(), 3);
    assert_eq!(intersection_multiplicity(1, 2, 1).unwrap(), 1);
    for (m, k) in [(1, 1), (2, 4), (3, 2)] {
        assert_eq!(intersection_multiplicity(m, m + k, k).unwrap(), 1);
    }
    assert_eq!(intersection_multiplicity(2, 2, 3).unwrap_err(), DegenError::OutOfRange { m: 2, p: 2, k: 3 });
    assert!(intersection_multiplicity(1, 5, 2).is_err());
}

#[test]
fn residual_over_diagonal_examples() {
    let r = ring(3, 2);
    // Independent of the eliminated point: the derivative kills it.
    let g = lin(r, &[(Var::Q, 1), (Var::X, 2)]).try_pow(3).unwrap();
    assert!(residual_over_diagonal(&g, Var::Y(1), Var::Y(2), 1).unwrap().is_zero());
    // Y2^n g with fibre dimension 0 gives [y1 = y2] g.
    let y2n = NumClass::var(r, Var::Y(2)).unwrap().try_pow(3).unwrap();
    let diag = diagonal_class::<strata_ring::Rational>(2, &[Var::Y(1), Var::Y(2)], r).unwrap();
    assert_eq!(
        residual_over_diagonal(&y2n.try_mul(&g).unwrap(), Var::Y(1), Var::Y(2), 0).unwrap(),
        diag.try_mul(&g).unwrap()
    );
    // Fibre P^1 in P^3: the second derivative over 2!, 3 Y2.
    let y2cube = NumClass::var(r, Var::Y(2)).unwrap().try_pow(3).unwrap();
    let three_y2 = lin(r, &[(Var::Y(2), 3)]);
    assert_eq!(residual_over_diagonal(&y2cube, Var::Y(1), Var::Y(2), 1).unwrap(), diag.try_mul(&three_y2).unwrap());
    assert!(residual_over_diagonal(&y2cube, Var::Y(1), Var::Y(2), 3).is_err());
}

#[test]
fn degenerate_step_without_residuals_is_a_product() {
    let r = ring(2, 1);
    let a = lin(r, &[(Var::Q, 1), (Var::X, 1)]).try_pow(3).unwrap();
    let b = lin(r, &[(Var::Q, 1), (Var::Y(1), 1)]);
    assert_eq!(degenerate_step(&a, &b, &[]).unwrap(), a.try_mul(&b).unwrap());
}

#[test]
fn cusp_three_ways() {
    for n in 2..=5 {
        let components = cusp_by_components(n).unwrap();
        let chain = run_named("A2", n);
        assert_consistent(&chain, "A2");
        let printed = lifted_class("A2", n).unwrap();
        assert_eq!(normalized(&components), printed.class, "components n={n}");
        assert_eq!(normalized(&chain.lifted), printed.class, "chain n={n}");
        assert_eq!(normalized(&chain.minimal), closed_form_class(&TypeId::A2, n).unwrap());
        // n(n+1)(n+2)/2 (d-1)^{n-1} (d-2)
        let k = i64::from(n * (n + 1) * (n + 2) / 2);
        let expected = strata_ring::DPolyQ::d_minus(1).pow(n - 1) * strata_ring::DPolyQ::d_minus(2).scale(&rat(k));
        assert_eq!(chain.degree().unwrap(), expected);
    }
}

#[test]
fn tacnode_step_reproduces_the_tacnode() {
    for n in 2..=5 {
        let cusp = cusp_by_components(n).unwrap();
        let tac = tacnode_step(&cusp).unwrap();
        assert_eq!(normalized(&tac), lifted_class("A3", n).unwrap().class, "n={n}");
        let min = minimal_class(&tac, &[(Var::Y(1), n - 1)]).unwrap();
        assert_eq!(normalized(&min), closed_form_class(&TypeId::A3, n).unwrap(), "n={n}");
        let chain = run_named("A3", n);
        assert_consistent(&chain, "A3");
        assert_eq!(normalized(&chain.minimal), closed_form_class(&TypeId::A3, n).unwrap());
    }
}

#[test]
fn tacnode_step_is_the_explicit_degeneration() {
    let n = 3;
    let cusp = cusp_by_components(n).unwrap();
    let r = *cusp.spec();
    let cubic = lin(r, &[(Var::Q, 1), (Var::X, -1), (Var::Y(1), 3)]);
    let residual = residual_over_diagonal(&cusp, Var::X, Var::Y(1), 1).unwrap();
    let manual = degenerate_step(&cusp, &cubic, &[(3, residual)]).unwrap();
    assert_eq!(tacnode_step(&cusp).unwrap(), manual);
}

#[test]
fn corank_chains_match_the_closed_form() {
    for n in 2..=4 {
        for r in 1..=2 {
            let run = corank_chain(n, r).unwrap();
            assert_consistent(&run, "corank");
            assert_eq!(normalized(&run.minimal), corank_class(n, r).unwrap(), "n={n} r={r}");
        }
    }
    // The constant C_{3,2} = 2 C(4,1) = 8 as the leading Q coefficient of the printed form.
    assert_eq!(strata_closedforms::corank_constant(3, 2).unwrap().value, rat(8));
}

#[test]
fn consistency_solved_types_match_the_closed_forms() {
    for (name, t) in [("D5", TypeId::D5), ("E6", TypeId::E6)] {
        for n in 2..=4 {
            let run = run_named(name, n);
            assert_consistent(&run, name);
            if n >= 3 {
                assert!(run.steps.iter().any(|s| s.unknowns > 0), "{name} n={n} solved nothing");
            }
            assert_eq!(normalized(&run.minimal), closed_form_class(&t, n).unwrap(), "{name} n={n}");
        }
    }
}

#[test]
fn a4_recipe_matches_the_closed_form() {
    for n in 2..=4 {
        let run = a4_by_recipe(n).unwrap();
        assert!(run.inverted.unknowns > 0);
        assert_eq!(normalized(&run.minimal), closed_form_class(&TypeId::A4, n).unwrap(), "n={n}");
    }
}

#[test]
fn cycles_of_the_cusp() {
    for n in 2..=4u32 {
        let spec = run_named("A2", n).spec;
        let cycles = enumerate_cycles(n, &spec.aux_layout, &spec.conditions);
        let labels: Vec<String> = cycles.iter().map(|c| c.label(n)).collect();
        assert!(labels.contains(&"dep(x,y1)".to_string()), "{labels:?}");
        assert!(cycles.iter().any(|c| c.points.is_empty() && c.with_x && c.projection == vec![n]), "{labels:?}");
        for c in &cycles {
            if let Some(j) = c.jump {
                assert!(j < c.codim, "{}: jump {j} codim {}", c.label(n), c.codim);
            }
        }
        let diag = cycles.iter().find(|c| c.label(n) == "dep(x,y1)").unwrap();
        assert_eq!(diag.codim, n);
        assert_eq!(diag.jump, Some(n - 1));
    }
}

#[test]
fn cycles_of_corank_strata_jump_less_than_codimension() {
    for n in 2..=4 {
        for r in 1..=n.min(3) {
            let spec = corank_spec(n, r).unwrap();
            let cycles = enumerate_cycles(n, &spec.aux_layout, &spec.conditions);
            assert!(!cycles.is_empty());
            for c in &cycles {
                let j = c.jump.expect("kernel cycles have computed jumps");
                assert!(j < c.codim, "n={n} r={r} {}: jump {j} codim {}", c.label(n), c.codim);
            }
        }
    }
}

#[test]
fn full_tensor_conditions_have_no_cycles() {
    for (name, n) in [("ordinary2", 2), ("ordinary3", 3), ("D4", 2)] {
        let nf: NormalForm = name.parse().unwrap();
        let spec = strata_conditions::covariant_conditions(&nf.diagram(n).unwrap()).unwrap();
        let cycles = enumerate_cycles(n as u32, &spec.aux_layout, &spec.conditions);
        assert!(cycles.iter().all(|c| c.points.is_empty()));
        assert!(cycles.is_empty(), "{name}");
    }
}

#[test]
fn consistency_solve_without_unknowns_returns_the_input() {
    let r = ring(2, 1);
    let c = lin(r, &[(Var::Q, 1), (Var::X, 1)]).try_pow(3).unwrap();
    let solved = consistency_solve(&c, &[], &Constraints::default()).unwrap();
    assert_eq!(solved.class, c);
    assert_eq!(solved.unknowns, 0);
}

#[test]
fn consistency_solve_reports_contradictions() {
    let r = ring(2, 1);
    let c = NumClass::var(r, Var::Y(1)).unwrap().try_pow(2).unwrap();
    let constraints = Constraints { symmetric: vec![], max_power: vec![(Var::Y(1), 1)] };
    assert!(matches!(consistency_solve(&c, &[], &constraints), Err(DegenError::NoSolution { .. })));
}

fn trivial_recipe(divisor: NumClass, rhs: NumClass, residuals: Vec<ResidualSpec>) -> DegenerationRecipe {
    DegenerationRecipe {
        source: "S".into(),
        divisor,
        rhs: vec![("R".into(), rhs, 1)],
        residuals,
        constraints: Constraints::default(),
    }
}

#[test]
fn invert_division_of_a_plain_multiple() {
    let r = ring(2, 1);
    let q = NumClass::var(r, Var::Q).unwrap();
    let p = lin(r, &[(Var::Q, 2), (Var::X, 1)]).try_mul(&lin(r, &[(Var::Q, 1), (Var::Y(1), -1)])).unwrap();
    let inv = invert_division(&trivial_recipe(q.clone(), q.try_mul(&p).unwrap(), vec![])).unwrap();
    assert_eq!(inv.class, p);
    assert_eq!(inv.unknowns, 0);
    // A divisor without the hyperplane generator cannot be inverted.
    let x = NumClass::var(r, Var::X).unwrap();
    assert!(matches!(invert_division(&trivial_recipe(x.clone(), x, vec![])), Err(DegenError::NotInvertible(_))));
}

#[test]
fn degenerate_step_round_trips_through_invert_division() {
    for n in 2..=4 {
        let cusp = cusp_by_components(n).unwrap();
        let r = *cusp.spec();
        let cubic = lin(r, &[(Var::Q, 1), (Var::X, -1), (Var::Y(1), 3)]);
        let residual = residual_over_diagonal(&cusp, Var::X, Var::Y(1), 1).unwrap();
        let tac = degenerate_step(&cusp, &cubic, &[(3, residual.clone())]).unwrap();
        let spec = run_named("A2", n).cycles.into_iter().find(|c| c.label(n) == "dep(x,y1)").unwrap();
        let back = invert_division(&trivial_recipe(
            cubic,
            tac,
            vec![ResidualSpec { cycle: spec, multiplicity: 3, class: ResidualClass::Known(residual) }],
        ))
        .unwrap();
        assert_eq!(back.class, cusp, "n={n}");
    }
}

#[test]
fn step_reports_have_increasing_codimension() {
    for (name, n) in [("A3", 3), ("D5", 3), ("E6", 3), ("Q10", 3)] {
        let run = run_named(name, n);
        for w in run.steps.windows(2) {
            assert!(w[0].codim < w[1].codim, "{name}");
        }
        assert_eq!(run.spec.class.as_ref(), Some(&run.lifted));
    }
}
