//! Complete integer factorization.
//!
//! Trial division by every prime below 10^6, then perfect-power detection and
//! Pollard rho (Brent's cycle variant) under an iteration budget. Exhausting
//! the budget yields [`Error::IncompleteFactorization`]; a partial answer is
//! never returned as if it were complete.
//!
//! Primality: Miller-Rabin with the thirteen prime bases 2..=41, which is a
//! proof of primality below 3.317e24. Above that bound 24 further bases are
//! drawn deterministically from the input, leaving an error probability of at
//! most 4^-37 per reported prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{is_prime_u64, small_primes};
use crate::error::{Error, Result};

const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const EXTRA_ROUNDS: usize = 24;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorizationResult {
    /// +1 or -1.
    pub unit: i8,
    /// Prime-power pairs, primes strictly increasing.
    #[serde(with = "super::bigjson::pairs")]
    pub factors: Vec<(BigInt, u32)>,
}

impl FactorizationResult {
    pub fn recompose(&self) -> BigInt {
        let mut acc = BigInt::from(self.unit);
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    /// Total Pollard-rho iterations allowed for one input.
    pub rho_budget: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self { rho_budget: 50_000_000 }
    }
}

pub fn factorize(n: &BigInt) -> Result<FactorizationResult> {
    factorize_with(n, FactorOptions::default())
}

pub fn factorize_with(n: &BigInt, opts: FactorOptions) -> Result<FactorizationResult> {
    let partial = factorize_partial(n, opts)?;
    if !partial.remaining.is_empty() {
        return Err(Error::IncompleteFactorization { n: n.clone(), remaining: partial.remaining });
    }
    let result = partial.found;
    // Re-verify: every factor prime and the product exact.
    debug_assert!(result.factors.iter().all(|(p, _)| is_prime(p)));
    if result.recompose() != *n {
        return Err(Error::Domain(format!("internal: factorization of {n} does not recompose")));
    }
    Ok(result)
}

/// Prime factors that could be split off, plus composite cofactors on which
/// the rho budget ran out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFactorization {
    pub found: FactorizationResult,
    pub remaining: Vec<BigInt>,
}

pub fn factorize_partial(n: &BigInt, opts: FactorOptions) -> Result<PartialFactorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let unit = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut found: Vec<BigInt> = Vec::new();

    trial_divide(&mut m, &mut found);

    let mut budget = opts.rho_budget;
    let mut stack = vec![m];
    let mut stuck = Vec::new();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            found.push(c);
            continue;
        }
        if let Some((root, k)) = perfect_power(&c) {
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        match pollard_brent(&c, &mut budget) {
            Some(d) => {
                let other = &c / &d;
                stack.push(d);
                stack.push(other);
            }
            None => stuck.push(c),
        }
    }
    stuck.sort();

    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(PartialFactorization { found: FactorizationResult { unit, factors }, remaining: stuck })
}

fn trial_divide(m: &mut BigInt, found: &mut Vec<BigInt>) {
    let primes = small_primes();
    let mut i = 0;
    while i < primes.len() {
        if let Some(small) = m.to_u64() {
            // Finish in machine arithmetic.
            let mut v = small;
            for &p in &primes[i..] {
                if p * p > v {
                    break;
                }
                while v % p == 0 {
                    v /= p;
                    found.push(BigInt::from(p));
                }
            }
            *m = BigInt::from(v);
            return;
        }
        // Batch primes into a product below 2^64 to reduce big divisions.
        let mut prod: u64 = 1;
        let start = i;
        while i < primes.len() {
            match prod.checked_mul(primes[i]) {
                Some(x) => {
                    prod = x;
                    i += 1;
                }
                None => break,
            }
        }
        let r = (&*m % prod).to_u64().unwrap();
        for &p in &primes[start..i] {
            if r.is_multiple_of(p) {
                let bp = BigInt::from(p);
                while (&*m % p).is_zero() {
                    *m /= &bp;
                    found.push(bp.clone());
                }
            }
        }
        let last = primes[i - 1];
        if BigInt::from(last) * BigInt::from(last) > *m {
            break;
        }
    }
}

/// Probable-prime test; a proof below 3.317e24 (see module docs).
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &small_primes()[..200] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap();
    let d = &nm1 >> s;
    let witness = |a: &BigInt| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                return true;
            }
        }
        false
    };
    for &b in &DETERMINISTIC_BASES {
        if !witness(&BigInt::from(b)) {
            return false;
        }
    }
    let bound = BigInt::parse_bytes(b"3317044064679887385961981", 10).unwrap();
    if *n < bound {
        return true;
    }
    // Deterministic pseudo-random bases in [2, n-2] seeded by n.
    let mut state = (n % u64::MAX).to_u64().unwrap() ^ 0x9E37_79B9_7F4A_7C15;
    let span = n - 3u32;
    for _ in 0..EXTRA_ROUNDS {
        state = state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        let a = BigInt::from(state) % &span + 2u32;
        if !witness(&a) {
            return false;
        }
    }
    true
}

/// `(r, k)` with `r^k = n` for the least prime `k` that works.
fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits).filter(|&k| is_prime_u64(k as u64)) {
        let r = n.nth_root(k);
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Brent's variant of Pollard rho. Returns a nontrivial divisor or `None`
/// once `budget` iterations are spent.
fn pollard_brent(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    const BATCH: u64 = 128;
    for c in 1u32.. {
        if *budget == 0 {
            return None;
        }
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            *budget = budget.saturating_sub(r);
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += steps;
                *budget = budget.saturating_sub(steps);
                if *budget == 0 && g.is_one() {
                    return None;
                }
            }
            r *= 2;
            if r > (1 << 40) {
                break;
            }
        }
        if g == *n {
            // Backtrack one step at a time from the saved point.
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}
