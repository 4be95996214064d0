use std::time::Instant;

use infoineq::expr::standard_box;
use infoineq::families::{
    claim, claim_domain_upper, dyadic_eps, geometric, geometric_closed_profile, asymptotic_report, relative_spread,
    Family,
};
use infoineq::{entropy_profile, InfoExpression, JointDistribution, SubsetMask};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn m(s: &str) -> SubsetMask {
    SubsetMask::from_indices(s.bytes().map(|b| (b - b'A') as usize))
}

fn ci(d: &JointDistribution, a: &str, b: &str, c: &str) -> bool {
    d.is_cond_independent(m(a), m(b), m(c)).unwrap()
}

fn value(d: &JointDistribution, t: &str) -> f64 {
    InfoExpression::parse_default(t, 4).unwrap().evaluate(&entropy_profile(d)).unwrap()
}

#[test]
fn geometric_enumeration_matches_closed_form() {
    for q in [3u64, 5, 7, 11, 13] {
        let start = Instant::now();
        let d = geometric(q).unwrap();
        let enumerated = entropy_profile(&d);
        assert!(start.elapsed().as_secs() < 60);
        let closed = geometric_closed_profile(q).unwrap();
        for (a, b) in enumerated.coords().iter().zip(closed.coords()) {
            assert!((a - b).abs() <= 1e-9, "q={q}");
        }
        let qf = q as f64;
        assert!((value(&d, "I(C;D)") - (qf - 1.0) / qf).abs() <= 1e-9);
        assert!((value(&d, "I(A;B)") - qf.log2() / qf).abs() <= 1e-9);
        assert!((value(&d, "H(C|A,B)") - qf.log2() / qf).abs() <= 1e-9);
        assert!(ci(&d, "A", "B", "C") && ci(&d, "A", "B", "D") && ci(&d, "C", "D", "A") && ci(&d, "C", "D", "B"));
        assert_eq!(d.num_atoms() as u64, q.pow(4) * (q - 1));
    }
}

#[test]
fn claim_scalings() {
    let eps = dyadic_eps(4..=10);
    let e = |t: &str| InfoExpression::parse_default(t, 4).unwrap();
    let rows = asymptotic_report(Family::Claim(1), &e("I(C;D)"), &eps).unwrap();
    let r: Vec<f64> = rows.iter().map(|r| r.over_eps).collect();
    assert!(relative_spread(&r[r.len() - 3..]) < 0.05);
    let rows = asymptotic_report(Family::Claim(1), &e("I(A;B)"), &eps).unwrap();
    let r: Vec<f64> = rows.iter().map(|r| r.over_eps2).collect();
    assert!(relative_spread(&r[r.len() - 3..]) < 0.05);

    let target = -2.0 / std::f64::consts::LN_2;
    let rows = asymptotic_report(Family::Claim(4), &standard_box(4).unwrap(), &dyadic_eps(8..=8)).unwrap();
    assert!(((rows[0].over_eps2 - target) / target).abs() < 0.10);

    let rows = asymptotic_report(Family::Claim(5), &e("I(C;D)"), &dyadic_eps(10..=10)).unwrap();
    assert!((rows[0].over_eps - 1.0).abs() < 0.05);
    let rows = asymptotic_report(Family::Claim(5), &e("I(B;C|D)"), &eps).unwrap();
    assert!(rows.iter().all(|r| r.over_eps2.abs() < 10.0));
}

#[test]
fn frozen_claim_values() {
    // Independent direct-summation values.
    let d = claim(1, &BigRational::new(1.into(), 16.into())).unwrap();
    assert!((value(&d, "I(C;D)") - 0.024987050573110015).abs() < 1e-12);
    let d = claim(5, &BigRational::new(1.into(), 1024.into())).unwrap();
    assert!((value(&d, "I(C;D)") - 0.0009744993790137269).abs() < 1e-12);
    let d = claim(4, &BigRational::new(1.into(), 256.into())).unwrap();
    let b = standard_box(4).unwrap().evaluate(&entropy_profile(&d)).unwrap();
    assert!((b - -4.3686697264178065e-05).abs() < 1e-12);
}

#[test]
fn out_of_domain_parameters() {
    for k in 1..=5u8 {
        let upper = claim_domain_upper(k).unwrap();
        assert!(claim(k, &(upper + BigRational::new(1.into(), 1000.into()))).is_err());
        assert!(claim(k, &BigRational::new((-1).into(), 8.into())).is_err());
    }
    assert!(claim(6, &BigRational::new(1.into(), 8.into())).is_err());
    assert!(geometric(4).is_err());
    assert!(geometric(2).is_err());
}

fn in_domain(k: u8) -> impl Strategy<Value = BigRational> {
    let upper = claim_domain_upper(k).unwrap();
    (1i64..=1000).prop_map(move |p| &upper * BigRational::new(BigInt::from(p), BigInt::from(1001)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn claim1_structural_zeros(e in in_domain(1)) {
        let d = claim(1, &e).unwrap();
        prop_assert!(ci(&d, "C", "D", "A") && ci(&d, "C", "D", "B") && ci(&d, "A", "B", "C"));
    }

    #[test]
    fn claim2_zeros_and_equality(e in in_domain(2)) {
        let d = claim(2, &e).unwrap();
        prop_assert!(ci(&d, "C", "D", "A") && ci(&d, "C", "D", "B"));
        prop_assert!((value(&d, "I(A;B|C)") - value(&d, "I(B;D|C)")).abs() <= 1e-12);
    }

    #[test]
    fn claim3_structural_zeros(e in in_domain(3)) {
        let d = claim(3, &e).unwrap();
        prop_assert!(ci(&d, "C", "D", "A") && ci(&d, "C", "D", "B"));
        prop_assert!(d.is_functional(m("C"), m("AB")).unwrap());
    }

    #[test]
    fn claim5_structural_zeros(e in in_domain(5)) {
        let d = claim(5, &e).unwrap();
        prop_assert!(ci(&d, "C", "D", "A") && ci(&d, "C", "D", "B") && ci(&d, "A", "B", ""));
    }

    #[test]
    fn claim_probabilities_are_exact(k in 1u8..=5, p in 1i64..=1000) {
        let e = claim_domain_upper(k).unwrap() * BigRational::new(BigInt::from(p), BigInt::from(1001));
        let d = claim(k, &e).unwrap();
        let total: BigRational = d.atoms().map(|(_, p)| p).sum();
        prop_assert_eq!(total, BigRational::from_integer(1.into()));
    }
}
