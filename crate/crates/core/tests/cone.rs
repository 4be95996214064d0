mod common;

use infoineq::cone::{
    conditional_implied_by, elemental_inequalities, example3, is_polymatroid, is_shannon_type, parse_certificate,
    series, ConeDescription, Implication, Series,
};
use infoineq::expr::standard_box;
use infoineq::subset::default_names;
use infoineq::{entropy_profile, InfoExpression};

fn p(t: &str, n: usize) -> InfoExpression {
    InfoExpression::parse_default(t, n).unwrap()
}

#[test]
fn elemental_counts() {
    // n + C(n,2) 2^(n-2)
    for (n, want) in [(1, 1), (2, 3), (3, 9), (4, 28), (5, 85), (6, 246)] {
        assert_eq!(elemental_inequalities(n).unwrap().len(), want, "n={n}");
    }
}

#[test]
fn example2_certificate_roundtrips_through_text() {
    let target = p("H(A,C) + H(B,C) - H(A,B) - H(C)", 3);
    let r = is_shannon_type(&target).unwrap();
    let cert = r.certificate().unwrap();
    assert!(cert.verify());
    let names = default_names(3);
    let back = parse_certificate(&cert.to_text_with(&names), &names).unwrap();
    assert!(back.verify());
    assert_eq!(back.reconstruct(), target);
}

#[test]
fn box_has_separating_point() {
    let b = standard_box(4).unwrap();
    let r = is_shannon_type(&b).unwrap();
    let point = r.separating_point().unwrap();
    assert!(point.verify(&ConeDescription::shannon(4).unwrap(), &[], &b));
}

#[test]
fn i1_constraints_do_not_imply_box() {
    let cone = ConeDescription::shannon(4).unwrap();
    let cs = [p("I(A;B)", 4), p("I(A;B|C)", 4)];
    let b = standard_box(4).unwrap();
    match conditional_implied_by(&cone, &cs, &b).unwrap() {
        Implication::NotImplied(pt) => assert!(pt.verify(&cone, &cs, &b)),
        Implication::Implied(_) => panic!("I1 must not be Shannon-derivable"),
    }
}

#[test]
fn some_conditional_implications_are_found() {
    // I(A;B) = 0 and I(A;C|B) = 0 imply I(A;C) >= ... in fact I(A;B,C) = 0.
    let cone = ConeDescription::shannon(3).unwrap();
    let cs = [p("I(A;B)", 3), p("I(A;C|B)", 3)];
    let target = p("-I(A;C)", 3);
    let r = conditional_implied_by(&cone, &cs, &target).unwrap();
    let cert = r.certificate().expect("implied");
    assert!(cert.verify());
}

#[test]
fn toy_cone_mirrors_the_two_coordinate_picture() {
    // Coordinates x = H(A), y = H(B); cone {-x + y >= 0, x >= 0}.
    let cone = ConeDescription::new(2, vec![("-x+y".into(), p("H(B) - H(A)", 2)), ("x".into(), p("H(A)", 2))]).unwrap();
    let r = conditional_implied_by(&cone, &[p("H(B)", 2)], &p("-H(A)", 2)).unwrap();
    let cert = r.certificate().expect("implied");
    assert!(cert.verify());
    assert_eq!(cert.kappa.len(), 1);
    assert_eq!(cert.kappa[0].0, "-x+y");
}

#[test]
fn nonshannon_forms_are_not_shannon_type() {
    assert!(is_shannon_type(&example3()).unwrap().certificate().is_none());
    for s in Series::ALL {
        assert!(is_shannon_type(&series(s, 2).unwrap()).unwrap().certificate().is_none(), "{}", s.name());
    }
}

#[test]
fn series_hold_on_random_distributions() {
    let mut r = common::rng(5);
    let samples: Vec<_> = (0..200)
        .map(|_| entropy_profile(&common::random_distribution(&mut r, 5, 2, 8)))
        .collect();
    for k in 1..=5 {
        for s in Series::ALL {
            let e = series(s, k).unwrap();
            for v in &samples {
                assert!(e.evaluate(v).unwrap() >= -1e-9, "{} k={k}", s.name());
            }
        }
    }
    for v in &samples {
        assert!(example3().evaluate(v).unwrap() >= -1e-9);
    }
}

#[test]
fn generated_profiles_pass_polymatroid_check() {
    let mut r = common::rng(9);
    for _ in 0..50 {
        let d = common::random_distribution(&mut r, 5, 3, 8);
        assert!(is_polymatroid(&entropy_profile(&d)).unwrap().holds);
    }
    let bad = infoineq::EntropyVector::new(2, vec![1.0, 2.0, 0.5]).unwrap();
    assert!(!is_polymatroid(&bad).unwrap().holds);
}
