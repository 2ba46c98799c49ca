use num_bigint::BigInt;
use proptest::prelude::*;

use shimura_gate::arith::{is_squarefree_u64, pow_big};
use shimura_gate::badprimes::{m2_values, EnumerationOptions};
use shimura_gate::certify::{
    certify, check_w, AuditStatus, Certificate, CertificateVerdict, CertifyOptions, ExclusionSet, Route,
};
use shimura_gate::classgrp::ingest_class_data;
use shimura_gate::lemma::imaginary_discriminant;
use shimura_gate::numfield::{FieldSpec, NumberField};
use shimura_gate::quatalg::{splits_over, QuaternionAlgebra};
use shimura_gate::Error;

const ZETA5_DATA: &str = include_str!("data/zeta5_class_data.json");

fn quat(d: u64) -> QuaternionAlgebra {
    QuaternionAlgebra::from_discriminant(d).unwrap()
}

#[test]
fn rationals_certificate() {
    let c = certify(&NumberField::rationals(), &quat(6), &CertifyOptions::default()).unwrap();
    assert_eq!(c.verdict, CertificateVerdict::Certified);
    assert_eq!(c.route, Some(Route::Extended));
    assert_eq!(c.splitting_field.as_ref().unwrap().n, -6);
    assert_eq!(c.witness_norm, Some(2));
    assert_eq!(c.threshold, Some(13));
    match c.exclusion_set.unwrap() {
        ExclusionSet::Enumerated { primes, complete, sets } => {
            assert!(complete);
            assert_eq!(sets.field, FieldSpec::quadratic(-24));
            for p in [2, 3] {
                assert!(primes.contains(&BigInt::from(p)));
            }
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn canonical_json_round_trips() {
    let k = NumberField::quadratic(5).unwrap();
    let c = certify(&k, &quat(6), &CertifyOptions::default()).unwrap();
    let text = c.to_canonical_json();
    let back: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_canonical_json(), text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["P0"], 44);
    assert_eq!(v["route"], "direct");
}

#[test]
fn gaussian_field_names_its_hilbert_class_field() {
    let c = certify(&NumberField::quadratic(-4).unwrap(), &quat(6), &CertifyOptions::default()).unwrap();
    assert_eq!(c.verdict, CertificateVerdict::Inapplicable);
    assert!(c.threshold.is_none() && c.exclusion_set.is_none());
    assert_eq!(c.failed_hypothesis().unwrap().evidence["witness"], -4);
}

#[test]
fn ingested_quartic_class_data() {
    let k = NumberField::cyclotomic(5).unwrap();
    let cg = ingest_class_data(&k, ZETA5_DATA).unwrap();
    let vals = m2_values(&k, &cg, &EnumerationOptions::default()).unwrap();
    assert_eq!(vals.len(), 625 * 26);
    // γ = 1: the value is Norm_{Q(β)/Q}(1 − β^24)^4, with β^24 + β̄^24 from
    // expanding (−a ± √Δ)^24 over Z[√Δ]
    for v in vals.iter().filter(|v| v.epsilon == [0, 0, 0, 0] && v.beta.root == 1) {
        let (a, disc) = (BigInt::from(-v.beta.a), BigInt::from(v.beta.disc()));
        let (mut x, mut y) = (BigInt::from(1), BigInt::from(0));
        for _ in 0..24 {
            let nx = &x * &a + &y * &disc;
            y = &x + &y * &a;
            x = nx;
        }
        let trace = BigInt::from(2) * x / pow_big(&BigInt::from(2), 24);
        let inner = BigInt::from(1) - trace + pow_big(&BigInt::from(11), 24);
        assert_eq!(v.value, pow_big(&inner, 4), "a = {}", v.beta.a);
    }
}

#[test]
fn ingested_data_drives_a_symbolic_certificate() {
    let k = NumberField::cyclotomic(5).unwrap();
    let opts = CertifyOptions {
        class_data: Some(ZETA5_DATA.to_string()),
        enumeration: EnumerationOptions { budget: 1000, ..Default::default() },
        ..Default::default()
    };
    let c = certify(&k, &quat(6), &opts).unwrap();
    assert_eq!(c.verdict, CertificateVerdict::Withheld);
    assert_eq!(c.route, Some(Route::Direct));
    assert_eq!(c.witness_norm, Some(11));
    let class = c.audit.iter().find(|a| a.name == "class_data").unwrap();
    assert_eq!(class.status, AuditStatus::External);
    match c.exclusion_set.unwrap() {
        ExclusionSet::DefinedNotEnumerated { s, estimate, .. } => {
            assert_eq!(s, Some(vec![11]));
            assert_eq!(estimate, Some(BigInt::from(625 * 26)));
        }
        other => panic!("{other:?}"),
    }
    let symbolic = CertifyOptions { allow_symbolic: true, ..opts };
    assert_eq!(certify(&k, &quat(6), &symbolic).unwrap().verdict, CertificateVerdict::Certified);
}

#[test]
fn tampered_class_data_is_rejected() {
    let k = NumberField::cyclotomic(5).unwrap();
    let bad = ZETA5_DATA.replace("[-1, 1, 1, 1]", "[-1, 1, 1, 2]");
    assert!(matches!(ingest_class_data(&k, &bad), Err(Error::ClassDataRejected(_))));
    let opts = CertifyOptions { class_data: Some(bad), ..Default::default() };
    assert!(certify(&k, &quat(6), &opts).is_err());
}

const FIELDS: [i64; 16] = [-3, -4, -7, -8, -15, -20, -24, 5, 8, 12, 13, 17, 21, 24, 28, 40];
const DISCS: [u64; 8] = [6, 10, 14, 15, 21, 22, 35, 39];

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn certificate_invariants(fi in 0..FIELDS.len(), di in 0..DISCS.len()) {
        let k = NumberField::quadratic(FIELDS[fi]).unwrap();
        let b = quat(DISCS[di]);
        let opts = CertifyOptions {
            allow_symbolic: true,
            enumeration: EnumerationOptions { budget: 0, ..Default::default() },
            ..Default::default()
        };
        let c = certify(&k, &b, &opts).unwrap();
        prop_assert_eq!(c.discriminant_primes.clone(), b.ramified_primes());
        if c.verdict == CertificateVerdict::Inapplicable {
            prop_assert!(c.failed_hypothesis().is_some());
            return Ok(());
        }
        prop_assert!(c.audit.iter().all(|a| a.status == AuditStatus::Pass));
        let w = c.witness.clone().unwrap();
        let n = c.witness_norm.unwrap();
        let p0 = c.threshold.unwrap();
        prop_assert!(p0 >= 4 * n && p0 >= 13);
        prop_assert!(!k.is_ramified(w.q) && w.prime.odd_degree);
        let minus_q = NumberField::quadratic(imaginary_discriminant(w.q)).unwrap();
        prop_assert!(!splits_over(&b, &minus_q).unwrap().splits);
        let d = b.discriminant();
        let excluded = format!("p ∤ {d}");
        prop_assert!(c.conclusion.clone().unwrap().contains(&excluded));
        let direct = splits_over(&b, &k).unwrap().splits;
        prop_assert_eq!(c.route == Some(Route::Direct), direct);
        if let Some(sf) = &c.splitting_field {
            let big_n = sf.n.unsigned_abs();
            prop_assert!(is_squarefree_u64(big_n) && big_n % d == 0 && big_n % w.q == 0);
            let recheck = check_w(&k, &b, w.q, sf.n).unwrap();
            prop_assert!(recheck.accepted());
            prop_assert_eq!(recheck.prime.norm.clone(), BigInt::from(n));
            prop_assert_eq!(BigInt::from(n), w.prime.norm.clone());
        }
    }
}
