//! Interpolation examples and laws.

use proptest::prelude::*;
use strata_interp::{fit_across_n, interpolate_exact, sweep, InterpError};
use strata_ring::{rat, DPolyQ, Rational};

fn samples(points: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
    points.iter().map(|&(x, y)| (rat(x), rat(y))).collect()
}

#[test]
fn quadratic_through_three_points() {
    let p = interpolate_exact(&samples(&[(0, 1), (1, 2), (2, 5)]), 2).unwrap();
    assert_eq!(p.to_string(), "d^2 + 1");
}

#[test]
fn constant_samples() {
    let p = interpolate_exact(&samples(&[(3, 7), (4, 7), (9, 7)]), 2).unwrap();
    assert_eq!(p.to_string(), "7");
    let single = interpolate_exact(&samples(&[(5, -2)]), 0).unwrap();
    assert_eq!(single.to_string(), "-2");
}

fn cusp_degree(n: i64, d: i64) -> i64 {
    // n(n+1)(n+2)/2 (d-1)^{n-1} (d-2)
    n * (n + 1) * (n + 2) / 2 * (d - 1).pow((n - 1) as u32) * (d - 2)
}

#[test]
fn cusp_degrees_interpolate_back() {
    let pts: Vec<(i64, i64)> = (3..=7).map(|d| (d, cusp_degree(2, d))).collect();
    let p = interpolate_exact(&samples(&pts), 2).unwrap();
    assert_eq!(p, DPolyQ::parse("12*d^2 - 36*d + 24").unwrap());
}

#[test]
fn errors_are_reported() {
    assert_eq!(
        interpolate_exact(&samples(&[(0, 1)]), 1),
        Err(InterpError::InsufficientSamples { needed: 2, got: 1 })
    );
    assert!(matches!(interpolate_exact(&samples(&[(0, 1), (0, 1)]), 1), Err(InterpError::DuplicatePoint(_))));
    let bad = interpolate_exact(&samples(&[(0, 0), (1, 1), (2, 4)]), 1).unwrap_err();
    assert!(matches!(bad, InterpError::InconsistentSamples { ref point, .. } if point == "2"));
}

fn a2_line(n: u32, d: i64) -> Rational {
    // 3 C(n+2,3) (d-1)^{n-1} (d-2)
    let n = i64::from(n);
    rat(3 * (n + 2) * (n + 1) * n / 6 * (d - 1).pow((n - 1) as u32) * (d - 2))
}

#[test]
fn sweep_reproduces_closed_form_per_n() {
    let d_range: Vec<i64> = (3..=8).collect();
    let table = sweep("A2", |n, d| Ok(a2_line(n, d)), &[2, 3, 4], &d_range, |n| n as usize).unwrap();
    for (n, p) in &table.fits {
        for d in 9..12 {
            assert_eq!(p.eval(&rat(d)), a2_line(*n, d));
        }
    }
    assert_eq!(table.reports[0].poly_in_d, "12*d^2 - 36*d + 24");
    assert!(table.reports.iter().all(|r| r.checks.len() == 6 && r.checks.iter().all(|c| c.ok)));
    let json = serde_json::to_string(&table.reports[0]).unwrap();
    assert!(json.starts_with(r#"{"type":"A2","n":2,"poly_in_d":"12*d^2 - 36*d + 24","checks":[{"d":3,"ok":true}"#));
}

#[test]
fn sweep_single_point_constant() {
    let table = sweep("one", |_, _| Ok(rat(5)), &[1], &[3], |_| 0).unwrap();
    assert_eq!(table.fits[0].1.to_string(), "5");
}

#[test]
fn sweep_names_corrupted_sample() {
    let err = sweep(
        "A2",
        |n, d| Ok(if d == 6 { a2_line(n, d) + rat(1) } else { a2_line(n, d) }),
        &[2],
        &(3..=8).collect::<Vec<_>>(),
        |n| n as usize,
    )
    .unwrap_err();
    assert!(matches!(err, InterpError::InconsistentSamples { n: Some(2), ref point, .. } if point == "6"));
}

#[test]
fn cross_n_fit_recovers_coefficient_polynomials() {
    // value = n^2 d + (n + 1)
    let d_range: Vec<i64> = (3..=6).collect();
    let eval = |n: u32, d: i64| Ok(rat(i64::from(n) * i64::from(n) * d + i64::from(n) + 1));
    let table = sweep("toy", eval, &[1, 2, 3, 4], &d_range, |_| 1).unwrap();
    let cross = fit_across_n(&table.fits, 2).unwrap();
    assert_eq!(cross[0], DPolyQ::parse("d + 1").unwrap());
    assert_eq!(cross[1], DPolyQ::parse("d^2").unwrap());
}

proptest! {
    #[test]
    fn roundtrip_and_order_invariance(coeffs in prop::collection::vec(-20i64..=20, 1..6), shift in -5i64..=5) {
        let p = DPolyQ::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect());
        let bound = coeffs.len() - 1;
        let mut pts: Vec<(Rational, Rational)> =
            (0..coeffs.len() as i64 + 2).map(|x| (rat(x + shift), p.eval(&rat(x + shift)))).collect();
        prop_assert_eq!(interpolate_exact(&pts, bound).unwrap(), p.clone());
        pts.reverse();
        prop_assert_eq!(interpolate_exact(&pts, bound).unwrap(), p);
    }
}
