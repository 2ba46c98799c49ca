//! Exact integer and polynomial arithmetic shared by every other module.
//!
//! Integers are [`num_bigint::BigInt`] throughout; small quantities that are
//! guaranteed to stay below 2^63 (conductors, residual characteristics,
//! discriminants of quadratic fields) use machine integers.

pub mod bigjson;
mod factor;
mod kronecker;
mod poly;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use factor::{
    factorize, factorize_partial, factorize_with, is_prime, FactorOptions, FactorizationResult,
    PartialFactorization,
};
pub use kronecker::{kronecker_i64, kronecker_symbol};
pub use poly::{resultant, IntPolynomial};

/// Arbitrary-precision signed integer used for every unbounded quantity.
pub type BigIntValue = BigInt;

const SIEVE_LIMIT: u64 = 1_000_000;

/// Primes below 10^6, computed once.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::with_capacity(78_498);
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Primes `p` with `lo <= p <= hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi <= SIEVE_LIMIT {
        let ps = small_primes();
        let start = ps.partition_point(|&p| p < lo);
        let end = ps.partition_point(|&p| p <= hi);
        return ps[start..end].to_vec();
    }
    (lo.max(2)..=hi).filter(|&p| is_prime_u64(p)).collect()
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit integers (Miller-Rabin with the first
/// twelve prime bases, exact below 3.1e23).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt_u64(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_square_u64(n: u64) -> bool {
    let r = isqrt_u64(n);
    r * r == n
}

/// Exact square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Distinct prime divisors of a small nonzero integer, ascending.
pub fn prime_divisors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_squarefree_u64(mut n: u64) -> bool {
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Euler's totient for small moduli.
pub fn euler_phi(n: u64) -> u64 {
    prime_divisors_u64(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Whether `d` is the discriminant of a quadratic field.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree_u64(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree_u64(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Fundamental discriminant of `Q(sqrt(n))` for a nonzero non-square integer.
pub fn field_discriminant(n: i64) -> Option<i64> {
    if n == 0 {
        return None;
    }
    let mut m = n.unsigned_abs();
    let mut core = 1u64;
    for p in prime_divisors_u64(m) {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            core *= p;
        }
    }
    let core = core as i64 * n.signum();
    if core == 1 {
        return None;
    }
    Some(if core.rem_euclid(4) == 1 { core } else { 4 * core })
}

/// Valuation of `n` at the prime `p` together with the `p`-free part.
pub fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    (v, m)
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn pow_big(base: &BigInt, exp: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}
