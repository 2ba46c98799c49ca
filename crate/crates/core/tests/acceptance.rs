//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};

use shimura_gate::arith::{factorize, is_fundamental_discriminant};
use shimura_gate::badprimes::{m2_values, n1_set, EnumerationOptions};
use shimura_gate::certify::{certify, CertificateVerdict, CertifyOptions, ExclusionSet, Route};
use shimura_gate::classgrp::{class_group, generating_primes};
use shimura_gate::lemma::{odd_prime_powers_below, trace_cases};
use shimura_gate::numfield::{FieldSpec, NumberField};
use shimura_gate::quatalg::{conic_local_solvable, discriminant, hilbert_symbol, splits_over, Place, QuaternionAlgebra};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn zeta31() -> NumberField {
    NumberField::cyclotomic(31).expect("Q(zeta_31)")
}

fn splitting_data() -> Check {
    let start = Instant::now();
    let k = zeta31();
    for (p, want) in [(2, (1, 5, 6)), (3, (1, 30, 1)), (11, (1, 30, 1))] {
        let s = k.splitting_data(p).map_err(e)?;
        ensure((s.e, s.f, s.g) == want, || format!("p = {p}: got {:?}", (s.e, s.f, s.g)))?;
    }
    within(start, Duration::from_secs(1))
}

fn quaternion_splitting() -> Check {
    ensure(discriminant(6, 5).map_err(e)? == 6, || "disc(6,5)".into())?;
    ensure(discriminant(22, 13).map_err(e)? == 22, || "disc(22,13)".into())?;
    let b6 = QuaternionAlgebra::from_pair(6, 5).map_err(e)?;
    let v = splits_over(&b6, &zeta31()).map_err(e)?;
    let w = v.witness().ok_or("no witness")?;
    ensure(!v.splits && w.p == 2 && w.local_degree == 5, || format!("{v:?}"))?;
    for (a, b, d) in [(6, 5, -24), (22, 13, -88)] {
        let q = QuaternionAlgebra::from_pair(a, b).map_err(e)?;
        let k = NumberField::quadratic(d).map_err(e)?;
        ensure(splits_over(&q, &k).map_err(e)?.splits, || format!("B over Q(sqrt {d})"))?;
    }
    Ok(())
}

fn class_numbers() -> Check {
    let start = Instant::now();
    ensure(class_group(-24).map_err(e)?.0 == 2, || "h(-24)".into())?;
    ensure(class_group(-31).map_err(e)?.0 == 3, || "h(-31)".into())?;
    for d in -2000i64..0 {
        if !common::is_fundamental(d) {
            ensure(!is_fundamental_discriminant(d), || format!("{d} wrongly fundamental"))?;
            continue;
        }
        let h = class_group(d).map_err(e)?.0;
        let want = common::reduced_form_count(d);
        ensure(h == want, || format!("h({d}) = {h}, brute force {want}"))?;
    }
    within(start, Duration::from_secs(30))
}

fn compositum_subfields() -> Check {
    let kw = zeta31().compositum(&NumberField::quadratic(-24).map_err(e)?).map_err(e)?;
    let got: BTreeSet<i64> = kw.quadratic_subfields().imaginary.into_iter().collect();
    ensure(got == BTreeSet::from([-24, -31]), || format!("{got:?}"))
}

fn zeta31_certificates() -> Check {
    let start = Instant::now();
    let opts = CertifyOptions { allow_symbolic: true, ..Default::default() };
    for (d, disc) in [(6u64, -24i64), (22, -88)] {
        let b = QuaternionAlgebra::from_discriminant(d).map_err(e)?;
        let c = certify(&zeta31(), &b, &opts).map_err(e)?;
        ensure(c.verdict == CertificateVerdict::Certified, || format!("d={d}: {:?}", c.verdict))?;
        ensure(c.route == Some(Route::Extended), || format!("d={d}: route {:?}", c.route))?;
        let w = c.splitting_field.as_ref().ok_or("no W")?;
        ensure(w.n == -(d as i64) && w.field == FieldSpec::quadratic(disc), || format!("W = {:?}", w.field))?;
        ensure(c.witness_norm == Some(32), || format!("N = {:?}", c.witness_norm))?;
        ensure(c.threshold == Some(128), || format!("P0 = {:?}", c.threshold))?;
        ensure(
            matches!(c.exclusion_set, Some(ExclusionSet::DefinedNotEnumerated { .. })),
            || "E should be symbolic".into(),
        )?;
    }
    within(start, Duration::from_secs(5))
}

fn conics() -> Check {
    let start = Instant::now();
    let p = Place::Finite;
    let cases = [
        ((1, 1, 3), p(3), 1, false),
        ((1, 1, 3), p(5), 1, true),
        ((1, 1, 3), p(3), 30, true),
        ((1, 1, 11), p(11), 1, false),
        ((1, 1, 11), p(11), 30, true),
        ((1, 1, 11), Place::Infinite, 2, true),
    ];
    for (coeffs, place, deg, want) in cases {
        let got = conic_local_solvable(coeffs, place, deg, 1).map_err(e)?;
        ensure(got == want, || format!("{coeffs:?} at {place} degree {deg}: {got}"))?;
    }
    for q in (2..200u64).filter(|&q| shimura_gate::arith::is_prime_u64(q) && q != 11) {
        ensure(conic_local_solvable((1, 1, 11), p(q), 1, 1).map_err(e)?, || format!("(1,1,11) at {q}"))?;
    }
    within(start, Duration::from_secs(1))
}

fn product_formula() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let nonzero = |rng: &mut StdRng| loop {
        let x: i64 = rng.gen_range(-10_000..=10_000);
        if x != 0 {
            return x;
        }
    };
    for _ in 0..500 {
        let (a, b) = (nonzero(&mut rng), nonzero(&mut rng));
        let mut places: BTreeSet<u64> = common::ramified(a).union(&common::ramified(b)).copied().collect();
        places.insert(2);
        let mut prod = hilbert_symbol(a, b, Place::Infinite).map_err(e)? as i64;
        for p in places {
            prod *= hilbert_symbol(a, b, Place::Finite(p)).map_err(e)? as i64;
        }
        ensure(prod == 1, || format!("product for ({a}, {b}) is {prod}"))?;
    }
    Ok(())
}

fn lemma_sweep() -> Check {
    let mut cases = 0;
    for p in (11..=500u64).filter(|&p| p % 4 == 3 && p != 13 && shimura_gate::arith::is_prime_u64(p)) {
        for (q, n) in odd_prime_powers_below(p).into_iter().filter(|&(_, n)| 4 * n < p) {
            let tc = trace_cases(n, p).map_err(e)?;
            let squares = |sign: i8| -> BTreeSet<u64> {
                tc.branch(sign).values().into_iter().filter(|&v| common::is_square(v)).collect()
            };
            // Independent: integer traces t with t² <= 4N in the congruence classes.
            let oracle = |sign: i64| -> BTreeSet<u64> {
                let (n, p) = (n as i64, p as i64);
                let classes = [(2 - sign) * n, (2 + 2 * sign) * n].map(|c| c.rem_euclid(p));
                (0..)
                    .take_while(|t| t * t <= 4 * n)
                    .map(|t| t * t)
                    .filter(|t2| classes.contains(&(t2 % p)))
                    .map(|t2| t2 as u64)
                    .collect()
            };
            ensure(squares(1).is_empty() && oracle(1).is_empty(), || format!("+1 branch square at p={p}, N={n}"))?;
            let minus = squares(-1);
            ensure(minus == oracle(-1), || format!("p={p}, N={n}: {minus:?} vs {:?}", oracle(-1)))?;
            ensure(minus.iter().all(|&v| v == 0 || v == 3 * n), || format!("p={p}, N={n}: {minus:?}"))?;
            ensure(!minus.contains(&(3 * n)) || q == 3, || format!("3N survives with q={q}"))?;
            cases += 1;
        }
    }
    ensure(cases > 100, || format!("only {cases} cases"))
}

struct N1Case {
    d: i64,
    required: &'static [u64],
}

const N1_CASES: [N1Case; 2] = [N1Case { d: -4, required: &[2, 3, 5] }, N1Case { d: 5, required: &[2, 3, 5, 11] }];

fn n1_against_oracle() -> Check {
    let start = Instant::now();
    for case in &N1_CASES {
        let k = NumberField::quadratic(case.d).map_err(e)?;
        let cg = generating_primes(&k, 1000).map_err(e)?;
        let sets = n1_set(&k, &cg, &EnumerationOptions::default()).map_err(e)?;
        ensure(sets.complete, || format!("D={}: incomplete", case.d))?;
        for &p in case.required {
            ensure(sets.contains(p), || format!("D={}: {p} missing", case.d))?;
        }
        ensure(cg.s.len() == 1, || "expected one generating prime".into())?;
        let a = &cg.alpha[0].coeffs;
        let alpha = (common::to_i64(&a.coeff(0)), common::to_i64(&a.coeff(1)));
        let oracle = common::quadratic_n1(case.d, cg.h, cg.s[0].q, alpha);
        let got: BTreeSet<BigUint> = sets.n1.iter().map(|p| p.to_biguint().expect("positive")).collect();
        ensure(got == oracle, || {
            format!(
                "D={}: library-only {:?}, oracle-only {:?}",
                case.d,
                got.difference(&oracle).collect::<Vec<_>>(),
                oracle.difference(&got).collect::<Vec<_>>()
            )
        })?;
    }
    within(start, Duration::from_secs(600))
}

fn novel_certificate() -> Check {
    let start = Instant::now();
    let k = NumberField::quadratic(5).map_err(e)?;
    let b = QuaternionAlgebra::from_discriminant(6).map_err(e)?;
    let run = |threads: Option<usize>| -> Result<String, String> {
        let mut opts = CertifyOptions::default();
        opts.enumeration.threads = threads;
        let c = certify(&k, &b, &opts).map_err(e)?;
        ensure(c.verdict == CertificateVerdict::Certified, || format!("{:?}", c.verdict))?;
        ensure(c.route == Some(Route::Direct), || format!("route {:?}", c.route))?;
        ensure(c.witness.as_ref().map(|w| w.q) == Some(11), || "witness q".into())?;
        ensure(c.threshold == Some(44), || format!("P0 = {:?}", c.threshold))?;
        ensure(
            matches!(c.exclusion_set, Some(ExclusionSet::Enumerated { complete: true, .. })),
            || "E not fully enumerated".into(),
        )?;
        Ok(c.to_canonical_json())
    };
    let first = run(None)?;
    for threads in [None, Some(1), Some(4)] {
        ensure(run(threads)? == first, || format!("bytes differ with threads {threads:?}"))?;
    }
    within(start, Duration::from_secs(600))
}

fn recomposition() -> Check {
    for case in &N1_CASES {
        let k = NumberField::quadratic(case.d).map_err(e)?;
        let cg = generating_primes(&k, 1000).map_err(e)?;
        let values = m2_values(&k, &cg, &EnumerationOptions::default()).map_err(e)?;
        let distinct: BTreeSet<BigInt> = values.into_iter().map(|v| v.value).filter(|v| !v.is_zero()).collect();
        for v in &distinct {
            let f = factorize(v).map_err(e)?;
            ensure(f.recompose() == *v, || format!("{v} does not recompose"))?;
        }
    }
    let m = BigInt::from(5).pow(12) - 1;
    let got: BTreeSet<BigInt> = factorize(&m).map_err(e)?.primes().cloned().collect();
    let want: BTreeSet<BigInt> = [2, 3, 7, 13, 31, 601].into_iter().map(BigInt::from).collect();
    ensure(got == want, || format!("support of 5^12 - 1: {got:?}"))?;
    let oracle: BTreeSet<BigInt> = common::prime_support(&m).into_iter().map(BigInt::from).collect();
    ensure(oracle == want && m.is_positive(), || "oracle disagrees on 5^12 - 1".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("splitting data in Q(zeta_31)", splitting_data),
        ("quaternion discriminants and splitting", quaternion_splitting),
        ("class numbers against reduced-form counts", class_numbers),
        ("imaginary quadratic subfields of Q(zeta_31)Q(sqrt -6)", compositum_subfields),
        ("extended-route certificates over Q(zeta_31)", zeta31_certificates),
        ("conic local solvability", conics),
        ("Hilbert product formula", product_formula),
        ("trace elimination sweep", lemma_sweep),
        ("bad-prime sets against the brute-force oracle", n1_against_oracle),
        ("direct-route certificate over Q(sqrt 5)", novel_certificate),
        ("factorization recomposition", recomposition),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let t = start.elapsed();
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({t:.2?}): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
