//! Worked examples for every public ring operation.

use strata_ring::{
    check_symmetry, derivative, divide_exact, gysin_extract, make_poly, mul, rat, specialize, Basis, Class, ClassPoly,
    DPolyQ, NumClass, RingError, RingSpec, Var,
};

fn fspec(n: u32, num_y: u32) -> RingSpec {
    RingSpec::new(n, num_y, 12, true, Basis::F).unwrap()
}

fn qspec(n: u32, num_y: u32, k: i64) -> RingSpec {
    RingSpec::new(n, num_y, 24, false, Basis::Q(k)).unwrap()
}

fn dp(text: &str) -> DPolyQ {
    DPolyQ::parse(text).unwrap()
}

#[test]
fn make_poly_single_generator() {
    let x = make_poly(fspec(2, 0), vec![(vec![1, 0], dp("1"))]).unwrap();
    assert_eq!(x, Class::var(fspec(2, 0), Var::X).unwrap());
    assert_eq!(x.to_text(), "X");
}

#[test]
fn make_poly_rejects_exponent_beyond_cap() {
    let err = make_poly(fspec(2, 0), vec![(vec![3, 0], dp("5"))]).unwrap_err();
    assert!(matches!(err, RingError::ExponentOutOfRange { exp: 3, cap: 2, .. }));
}

#[test]
fn make_poly_identity() {
    let one = make_poly(fspec(3, 0), vec![(vec![0, 0], dp("1"))]).unwrap();
    assert_eq!(one, Class::one(fspec(3, 0)).unwrap());
}

#[test]
fn mul_is_nilpotent() {
    let s = fspec(2, 0);
    let x = Class::var(s, Var::X).unwrap();
    let x2 = make_poly(s, vec![(vec![2, 0], dp("1"))]).unwrap();
    assert!(mul(&x, &x2).unwrap().is_zero());
}

#[test]
fn mul_telescoping_identity() {
    let s = fspec(2, 1);
    let x_minus_y = Class::linear_int(s, &[(Var::X, 1), (Var::Y(1), -1)]).unwrap();
    let h = Class::complete_homogeneous(s, 2, &[Var::X, Var::Y(1)]).unwrap();
    assert!(mul(&x_minus_y, &h).unwrap().is_zero());
}

/// `((d-1) X + F)^3` expanded by choosing `X` or `F` in each of the three factors.
fn brute_force_cube(n: u32) -> Class {
    let s = fspec(n, 0);
    let mut terms = Vec::new();
    for choice in 0u32..8 {
        let xs = choice.count_ones();
        if xs > n {
            continue;
        }
        let mut c = dp("1");
        for _ in 0..xs {
            c = &c * &dp("d - 1");
        }
        terms.push((vec![xs, 3 - xs], c));
    }
    make_poly(s, terms).unwrap()
}

#[test]
fn mul_cube_of_hyperplane_class() {
    let s = fspec(2, 0);
    let l = Class::linear(s, &[(Var::X, dp("d - 1")), (Var::F, dp("1"))]).unwrap();
    let cube = l.try_pow(3).unwrap();
    assert_eq!(cube, brute_force_cube(2));
    assert_eq!(cube.len(), 3);
    assert_eq!(cube.coeff(&[2, 1]), dp("3*d^2 - 6*d + 3"));
}

#[test]
fn gysin_extract_examples() {
    let s = fspec(2, 0);
    let l = Class::linear(s, &[(Var::X, dp("d - 1")), (Var::F, dp("1"))]).unwrap();
    let g = gysin_extract(&l.try_pow(3).unwrap(), &[(Var::X, 2)]).unwrap();
    let expected = make_poly(s, vec![(vec![0, 1], dp("3*d^2 - 6*d + 3"))]).unwrap();
    assert_eq!(g, expected);

    let one = Class::one(s).unwrap();
    assert_eq!(gysin_extract(&one, &[(Var::X, 0), (Var::F, 0)]).unwrap(), one);

    let f = Class::var(s, Var::F).unwrap();
    assert!(gysin_extract(&f, &[(Var::X, 2)]).unwrap().is_zero());
    assert!(matches!(gysin_extract(&f, &[(Var::Y(1), 0)]), Err(RingError::UnknownVariable(_))));
}

#[test]
fn specialize_expands_relative_class() {
    let s = RingSpec::new(2, 0, 12, true, Basis::Q(2)).unwrap();
    let q = Class::var(s, Var::Q).unwrap();
    let expanded = specialize(&q, None, true).unwrap();
    let expected = Class::linear(fspec(2, 0), &[(Var::X, dp("d - 2")), (Var::F, dp("1"))]).unwrap();
    assert_eq!(expanded, expected);
}

#[test]
fn specialize_substitutes_d() {
    let s = fspec(2, 0);
    let a = Class::linear(s, &[(Var::X, dp("d - 1"))]).unwrap();
    let b = specialize(&a, Some(&rat(3)), false).unwrap();
    assert_eq!(b, Class::linear(s, &[(Var::X, dp("2"))]).unwrap());
}

#[test]
fn specialize_ordinary_point_power() {
    let s = RingSpec::new(2, 0, 12, true, Basis::Q(1)).unwrap();
    let q6 = Class::var(s, Var::Q).unwrap().try_pow(6).unwrap();
    let f = specialize(&q6, None, true).unwrap();
    // C(6,2) (d-1)^2 by the binomial theorem
    assert_eq!(f.coeff(&[2, 4]), dp("15*d^2 - 30*d + 15"));
}

#[test]
fn derivative_examples() {
    let s = fspec(3, 1);
    let y2 = make_poly(s, vec![(vec![0, 2, 0], dp("1"))]).unwrap();
    assert_eq!(derivative(&y2, Var::Y(1), 1).unwrap(), make_poly(s, vec![(vec![0, 1, 0], dp("2"))]).unwrap());
    let xy2 = make_poly(s, vec![(vec![1, 2, 0], dp("1"))]).unwrap();
    assert_eq!(derivative(&xy2, Var::Y(1), 2).unwrap(), make_poly(s, vec![(vec![1, 0, 0], dp("2"))]).unwrap());
    assert!(matches!(derivative(&xy2, Var::Y(2), 1), Err(RingError::UnknownVariable(_))));
}

#[test]
fn divide_exact_examples() {
    let s = fspec(2, 0);
    let f = Class::var(s, Var::F).unwrap();
    let x = Class::var(s, Var::X).unwrap();
    assert_eq!(divide_exact(&(&f * &x), &f).unwrap(), x);
    // X^3 vanishes in the ring, so its representative is zero.
    let zero = &x * &(&x * &x);
    assert!(divide_exact(&zero, &f).unwrap().is_zero());
    let not_multiple = x.clone();
    assert!(matches!(divide_exact(&not_multiple, &f), Err(RingError::NotDivisible { .. })));
    assert!(matches!(divide_exact(&f, &x), Err(RingError::BadDivisor(_))));
}

fn cusp_class(n: u32) -> NumClass {
    let s = qspec(n, 1, 2);
    let qx = NumClass::linear_int(s, &[(Var::Q, 1), (Var::X, 1)]).unwrap();
    let qy = NumClass::linear_int(s, &[(Var::Q, 1), (Var::Y(1), 1)]).unwrap();
    let x = NumClass::var(s, Var::X).unwrap();
    let mut bracket = NumClass::zero(s).unwrap();
    for i in 0..=n {
        let t = &qy.try_pow(n - i).unwrap() * &x.try_pow(i).unwrap();
        bracket = if i % 2 == 0 { &bracket + &t } else { &bracket - &t };
    }
    let h = NumClass::complete_homogeneous(s, n, &[Var::X, Var::Y(1)]).unwrap();
    &qx.try_pow(n + 1).unwrap() * &(&bracket - &h)
}

#[test]
fn cusp_class_is_symmetric_in_relative_basis() {
    for n in 2..=4 {
        let c = cusp_class(n);
        assert!(check_symmetry(&c, &[vec![1, 0]]));
        // In the plain basis the symmetry is lost.
        let d7 = c.rebase_at(Basis::F, &rat(7)).unwrap();
        assert!(!check_symmetry(&d7, &[vec![1, 0]]));
    }
}

#[test]
fn difference_is_not_symmetric() {
    let s = qspec(2, 1, 2);
    let a = NumClass::linear_int(s, &[(Var::X, 1), (Var::Y(1), -1)]).unwrap();
    assert!(!check_symmetry(&a, &[vec![1, 0]]));
}

#[test]
fn json_roundtrip_is_canonical() {
    let s = fspec(2, 1);
    let c = Class::linear(s, &[(Var::X, dp("d - 2")), (Var::F, dp("1")), (Var::Y(1), dp("1/2*d"))])
        .unwrap()
        .try_pow(2)
        .unwrap();
    let text = c.to_json();
    let back = Class::from_json(&text).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.to_json(), text);
    assert!(text.starts_with(r#"{"spec":{"n":2,"num_y":1,"f_cap":12,"d_symbolic":true,"basis":"F"},"terms":[{"exp":[0,0,2],"coef":"1"}"#));
}

#[test]
fn mismatched_specs_are_rejected() {
    let a = Class::var(fspec(2, 0), Var::X).unwrap();
    let b = Class::var(fspec(3, 0), Var::X).unwrap();
    assert!(matches!(a.try_mul(&b), Err(RingError::SpecMismatch { .. })));
}

#[test]
fn hyperplane_cap_is_reported() {
    let s = RingSpec::new(2, 0, 3, true, Basis::F).unwrap();
    let f = Class::var(s, Var::F).unwrap();
    assert!(matches!(f.try_pow(4), Err(RingError::FCapReached { .. })));
}

#[test]
fn coefficient_kind_must_match_spec() {
    assert!(ClassPoly::<DPolyQ>::zero(qspec(2, 0, 2)).is_err());
}
