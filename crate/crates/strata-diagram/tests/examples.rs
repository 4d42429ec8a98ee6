//! Worked examples for the diagram operations.

use std::cmp::Ordering;

use strata_diagram::{
    build_diagram, face_flag, is_linear_type, monomial_compare, multiplicity_and_determinacy, points_under,
    stable_extension, vector_space_collection, DiagramError, NewtonDiagram, NormalForm, Space,
};
use strata_ring::{binomial_u64, frac, rat, Rational};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

#[test]
fn a2_has_one_facet() {
    let d = build_diagram(2, &[vec![3, 0], vec![0, 2]]).unwrap();
    assert_eq!(d.facets().len(), 1);
    assert_eq!(d.facets()[0].intercepts, ints(&[3, 2]));
    assert_eq!(d.facet_report(), "3/1 2/1\n");
}

#[test]
fn t_pqr_has_three_facets() {
    let d = NormalForm::T(4, 5, 6).diagram(3).unwrap();
    assert_eq!(d.facets().len(), 3);
    let mut got: Vec<Vec<Rational>> = d.facets().iter().map(|f| f.intercepts.clone()).collect();
    got.sort();
    // Each facet contains (1,1,1) and two of the axis points.
    let mut expected = vec![
        vec![rat(4), rat(5), frac(20, 11)],
        vec![rat(4), frac(12, 7), rat(6)],
        vec![frac(30, 19), rat(5), rat(6)],
    ];
    expected.sort();
    assert_eq!(got, expected);
    for f in d.facets() {
        assert!(f.vertices.contains(&vec![1, 1, 1]));
    }
}

#[test]
fn missing_axis_is_not_commode() {
    assert_eq!(build_diagram(2, &[vec![1, 0]]), Err(DiagramError::NotCommode { axis: 2 }));
}

/// Brute force: `m` is under the A2 diagram iff `m1/3 + m2/2 < 1`, i.e. `2 m1 + 3 m2 < 6`.
fn a2_under_oracle(r: u32) -> Vec<Vec<u32>> {
    (0..=r).rev().map(|a| vec![a, r - a]).filter(|m| 2 * m[0] + 3 * m[1] < 6).collect()
}

#[test]
fn a2_points_under() {
    let d = build_diagram(2, &[vec![3, 0], vec![0, 2]]).unwrap();
    for r in 0..=4 {
        assert_eq!(points_under(&d, r), a2_under_oracle(r));
    }
    assert_eq!(points_under(&d, 2), vec![vec![2, 0], vec![1, 1]]);
}

#[test]
fn origin_is_always_under() {
    for nf in [NormalForm::A(3), NormalForm::Ordinary(3), NormalForm::E6, NormalForm::P8] {
        let d = nf.diagram(3).unwrap();
        assert_eq!(points_under(&d, 0), vec![vec![0, 0, 0]]);
    }
}

#[test]
fn ordinary_point_count() {
    for n in 1..=4usize {
        for p in 2..=4u32 {
            let d = NormalForm::Ordinary(p).diagram(n).unwrap();
            let count = d.all_points_under().len() as u64;
            assert_eq!(count, binomial_u64(u64::from(p) - 1 + n as u64, n as u64), "n={n} p={p}");
        }
    }
}

#[test]
fn corank_flag() {
    let n = 4;
    for r in 1..n as u32 {
        let d = NormalForm::Corank { r, mult: 2 }.diagram(n).unwrap();
        assert_eq!(d.facets().len(), 1);
        let flag = face_flag(&d.facets()[0], n);
        let vr = Space::span(0..r as usize);
        for i in 0..r as usize {
            assert_eq!(flag.spaces[i], vr);
        }
        for i in r as usize..n {
            assert_eq!(flag.spaces[i], Space::span(0..n));
        }
    }
}

#[test]
fn a_k_flag() {
    let d = NormalForm::A(3).diagram(3).unwrap();
    let flag = face_flag(&d.facets()[0], 3);
    assert_eq!(flag.spaces, vec![Space::span([0]), Space::span(0..3), Space::span(0..3)]);
    assert_eq!(flag.homogeneous_lifts()[0], vec![0, 1]);
}

#[test]
fn ordinary_flag_is_trivial() {
    let d = NormalForm::Ordinary(3).diagram(3).unwrap();
    let flag = face_flag(&d.facets()[0], 3);
    assert!(flag.spaces.iter().all(|s| *s == Space::span(0..3)));
}

#[test]
fn collections() {
    let a3 = NormalForm::A(3).diagram(3).unwrap();
    let c = vector_space_collection(&a3);
    assert_eq!(c.spaces, vec![Space::span([0]), Space::span(0..3)]);
    assert!(c.inclusion[0][1] && !c.inclusion[1][0]);

    let ord = NormalForm::Ordinary(3).diagram(3).unwrap();
    assert_eq!(vector_space_collection(&ord).spaces, vec![Space::span(0..3)]);

    // T-type: one line per facet from the axis with the largest exponent; the
    // axis with the smallest exponent never leads a flag.
    let t = NormalForm::T(4, 5, 6).diagram(3).unwrap();
    let spaces = vector_space_collection(&t).spaces;
    assert_eq!(
        spaces,
        vec![
            Space::span([1]),
            Space::span([2]),
            Space::span([0, 1]),
            Space::span([0, 2]),
            Space::span([1, 2]),
            Space::span(0..3),
        ]
    );
}

#[test]
fn linearity() {
    assert!(is_linear_type(&NormalForm::A(3).diagram(3).unwrap()));
    assert!(!is_linear_type(&NormalForm::A(4).diagram(3).unwrap()));
    assert!(is_linear_type(&NormalForm::Ordinary(4).diagram(3).unwrap()));
    assert!(is_linear_type(&NormalForm::D(5).diagram(3).unwrap()));
    assert!(is_linear_type(&NormalForm::E6.diagram(3).unwrap()));
    assert!(is_linear_type(&NormalForm::X9.diagram(3).unwrap()));
}

#[test]
fn stable_extension_examples() {
    let a2 = build_diagram(1, &[vec![3]]).unwrap();
    let ext = stable_extension(&a2, 1).unwrap();
    assert_eq!(ext.facets().len(), 1);
    assert_eq!(ext.facets()[0].intercepts, ints(&[3, 2]));
    assert_eq!(stable_extension(&a2, 0).unwrap(), a2);

    // The collection of the extension keeps the old spaces and adds the whole space.
    let e6 = NormalForm::E6.diagram(2).unwrap();
    let old = vector_space_collection(&e6).spaces;
    let new = vector_space_collection(&stable_extension(&e6, 2).unwrap()).spaces;
    for s in &old {
        assert!(new.contains(s), "{s} missing");
    }
    assert!(new.contains(&Space::span(0..4)));
    assert_eq!(new.len(), old.len() + 1);
}

#[test]
fn monomial_order_examples() {
    assert_eq!(monomial_compare(&[1, 0], &[0, 2]), Ordering::Less);
    assert_eq!(monomial_compare(&[2, 0], &[1, 1]), Ordering::Greater);
    assert_eq!(monomial_compare(&[1, 1], &[1, 1]), Ordering::Equal);
}

#[test]
fn multiplicity_and_determinacy_examples() {
    assert_eq!(multiplicity_and_determinacy(&NormalForm::A(3).diagram(3).unwrap()), (2, 4));
    for p in 2..=5 {
        assert_eq!(multiplicity_and_determinacy(&NormalForm::Ordinary(p).diagram(3).unwrap()), (p, p));
    }
    let d5 = NormalForm::D(5).diagram(3).unwrap();
    assert!(!d5.is_commode());
    assert_eq!(d5.facets()[0].intercepts, vec![frac(8, 3), rat(4), rat(2)]);
    assert_eq!(multiplicity_and_determinacy(&d5), (2, 4));
}

#[test]
fn json_input() {
    let d = NewtonDiagram::from_json(r#"{"n": 2, "support": [[3,0],[0,2]], "name": "A2"}"#).unwrap();
    assert_eq!(d.name(), Some("A2"));
    assert!(matches!(NewtonDiagram::from_json("{"), Err(DiagramError::Parse(_))));
}

#[test]
fn catalog_names_roundtrip() {
    for nf in [
        NormalForm::A(4),
        NormalForm::D(6),
        NormalForm::E6,
        NormalForm::P8,
        NormalForm::X9,
        NormalForm::Q10,
        NormalForm::S11,
        NormalForm::U12,
        NormalForm::T(3, 4, 5),
        NormalForm::Ordinary(3),
        NormalForm::Corank { r: 2, mult: 2 },
    ] {
        assert_eq!(nf.to_string().parse::<NormalForm>().unwrap(), nf);
    }
    assert!("Z7".parse::<NormalForm>().is_err());
}

/// With several facets the bound `k <= 2p` does not imply the per-facet slope
/// bound: here `p = 3`, `k = 6`, but one facet has intercepts `(5, 6, 5/3)`.
#[test]
fn determinacy_bound_and_slope_bound_differ_for_several_facets() {
    let d = build_diagram(3, &[vec![5, 0, 0], vec![0, 6, 0], vec![0, 0, 3], vec![2, 0, 1]]).unwrap();
    assert_eq!(multiplicity_and_determinacy(&d), (3, 6));
    assert!(d.facets().iter().any(|f| f.intercepts == vec![rat(5), rat(6), frac(5, 3)]));
    assert!(!is_linear_type(&d));
}
