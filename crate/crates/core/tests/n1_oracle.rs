mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use shimura_gate::badprimes::{m2_values, n1_set, EnumerationOptions};
use shimura_gate::classgrp::generating_primes;
use shimura_gate::numfield::NumberField;

/// Every norm value, grouped by `(q, ε, a)`, against the naive
/// multiplication-matrix computation.
fn compare_values(d: i64) {
    let k = NumberField::quadratic(d).unwrap();
    let cg = generating_primes(&k, 1000).unwrap();
    let lib = m2_values(&k, &cg, &EnumerationOptions::default()).unwrap();
    for (i, gp) in cg.s.iter().enumerate() {
        let a = &cg.alpha[i].coeffs;
        let alpha = (common::to_i64(&a.coeff(0)), common::to_i64(&a.coeff(1)));
        let oracle = common::quadratic_values(d, cg.h, gp.q, alpha);
        let mut grouped: BTreeMap<(Vec<u64>, i64), Vec<BigInt>> = BTreeMap::new();
        for v in lib.iter().filter(|v| v.q == gp.q) {
            let eps = v.epsilon.iter().map(|&x| x as u64).collect();
            grouped.entry((eps, v.beta.a)).or_default().push(v.value.clone());
        }
        for vals in grouped.values_mut() {
            vals.sort();
        }
        assert_eq!(grouped, oracle, "D = {d}, q = {}", gp.q);
    }
}

#[test]
fn gaussian_values() {
    compare_values(-4);
}

#[test]
fn golden_ratio_field_values() {
    compare_values(5);
}

#[test]
fn more_quadratic_fields() {
    for d in [-7, 13, -3, 8] {
        compare_values(d);
    }
}

#[test]
fn class_number_two() {
    // h = 2: α generates the square of a non-principal prime, M = 48
    for d in [-15, -20, 40] {
        compare_values(d);
    }
}

#[test]
fn prime_sets_match() {
    for d in [-4, 5, -7, -15] {
        let k = NumberField::quadratic(d).unwrap();
        let cg = generating_primes(&k, 1000).unwrap();
        let sets = n1_set(&k, &cg, &EnumerationOptions::default()).unwrap();
        assert!(sets.complete);
        let a = &cg.alpha[0].coeffs;
        let alpha = (common::to_i64(&a.coeff(0)), common::to_i64(&a.coeff(1)));
        let oracle = common::quadratic_n1(d, cg.h, cg.s[0].q, alpha);
        let got: std::collections::BTreeSet<_> = sets.n1.iter().map(|p| p.to_biguint().unwrap()).collect();
        assert_eq!(got, oracle, "D = {d}");
    }
}
