//! Rational quaternion algebras `(a, b / Q)` through their local invariants.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, is_squarefree_u64, kronecker_i64, prime_divisors_u64};
use crate::error::{Error, Result};
use crate::numfield::NumberField;

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" => Ok(Place::Infinite),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::Domain(format!("not a place: {t:?}")))?;
                if !is_prime_u64(p) {
                    return Err(Error::Domain(format!("{p} is not prime")));
                }
                Ok(Place::Finite(p))
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Finite(p) => s.serialize_u64(*p),
            Place::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let s = match v {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s,
            other => return Err(serde::de::Error::custom(format!("not a place: {other}"))),
        };
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn split_off(mut x: i128, p: i128) -> (u32, i128) {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    (v, x)
}

/// Local Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("Hilbert symbol needs nonzero arguments".into()));
    }
    let p = match place {
        Place::Infinite => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Finite(p) => p,
    };
    let (alpha, u) = split_off(a as i128, p as i128);
    let (beta, v) = split_off(b as i128, p as i128);
    if p == 2 {
        let eps = |x: i128| ((x - 1) / 2).rem_euclid(2);
        let omega = |x: i128| ((x * x - 1) / 8).rem_euclid(2);
        let e = eps(u) * eps(v) + alpha as i128 * omega(v) + beta as i128 * omega(u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let mut s: i8 = if (alpha * beta) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
    if beta % 2 == 1 {
        s *= kronecker_i64(u as i64, p as i64)?;
    }
    if alpha % 2 == 1 {
        s *= kronecker_i64(v as i64, p as i64)?;
    }
    Ok(s)
}

/// An indefinite quaternion algebra over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionAlgebra {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(i64, i64)>,
    pub discriminant: u64,
}

impl QuaternionAlgebra {
    /// `(a, b / Q)`; definite algebras are rejected.
    pub fn from_pair(a: i64, b: i64) -> Result<Self> {
        if hilbert_symbol(a, b, Place::Infinite)? == -1 {
            return Err(Error::DefiniteAlgebra(format!("({a}, {b}) is ramified at infinity")));
        }
        let mut primes = prime_divisors_u64(2 * a.unsigned_abs() * b.unsigned_abs());
        primes.retain(|&p| hilbert_symbol(a, b, Place::Finite(p)) == Ok(-1));
        Ok(Self { pair: Some((a, b)), discriminant: primes.iter().product() })
    }

    /// The algebra of squarefree discriminant `d` with an even number of
    /// prime factors.
    pub fn from_discriminant(d: u64) -> Result<Self> {
        if d == 0 || !is_squarefree_u64(d) {
            return Err(Error::InvalidQuaternionDiscriminant(d, "not squarefree and positive".into()));
        }
        let r = if d == 1 { 0 } else { prime_divisors_u64(d).len() };
        if r % 2 == 1 {
            return Err(Error::InvalidQuaternionDiscriminant(
                d,
                "an odd number of ramified primes forces ramification at infinity".into(),
            ));
        }
        Ok(Self { pair: None, discriminant: d })
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        if self.discriminant == 1 {
            return Vec::new();
        }
        prime_divisors_u64(self.discriminant)
    }

    pub fn is_matrix_algebra(&self) -> bool {
        self.discriminant == 1
    }
}

/// Discriminant of `(a, b / Q)`.
pub fn discriminant(a: i64, b: i64) -> Result<u64> {
    Ok(QuaternionAlgebra::from_pair(a, b)?.discriminant)
}

/// Local data at one ramified prime of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSplitting {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub local_degree: u64,
    pub splits: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingVerdict {
    pub splits: bool,
    pub evidence: Vec<LocalSplitting>,
}

impl SplittingVerdict {
    /// First prime where `B ⊗ k` stays ramified.
    pub fn witness(&self) -> Option<&LocalSplitting> {
        self.evidence.iter().find(|e| !e.splits)
    }
}

/// `B ⊗ k` is a matrix algebra iff every ramified prime of `B` has even local
/// degree `e·f` at each prime of `k` above it.
pub fn splits_over(b: &QuaternionAlgebra, k: &NumberField) -> Result<SplittingVerdict> {
    let mut evidence = Vec::new();
    for p in b.ramified_primes() {
        let s = k.splitting_data(p)?;
        let local_degree = s.local_degree();
        evidence.push(LocalSplitting { p, e: s.e, f: s.f, local_degree, splits: local_degree % 2 == 0 });
    }
    Ok(SplittingVerdict { splits: evidence.iter().all(|e| e.splits), evidence })
}

/// Whether `r x² + s y² + t z² = 0` has a nontrivial solution over the
/// extension of `Q_v` with the given residue degree and ramification index.
/// Only unramified extensions are handled; at infinity the degree is 1
/// (the reals) or 2 (the complex numbers).
pub fn conic_local_solvable(
    coeffs: (i64, i64, i64),
    place: Place,
    local_degree: u64,
    ramification_index: u64,
) -> Result<bool> {
    let (r, s, t) = coeffs;
    if r == 0 || s == 0 || t == 0 {
        return Err(Error::Domain("conic coefficients must be nonzero".into()));
    }
    if local_degree == 0 || ramification_index == 0 {
        return Err(Error::Domain("local degree must be positive".into()));
    }
    if ramification_index > 1 {
        return Err(Error::Unsupported("ramified local extensions".into()));
    }
    if place == Place::Infinite && local_degree > 2 {
        return Err(Error::Domain("archimedean local degree is 1 or 2".into()));
    }
    let rs = (r as i128 * s as i128) as i64;
    let rt = (r as i128 * t as i128) as i64;
    let symbol = hilbert_symbol(-rs, -rt, place)?;
    Ok(symbol == 1 || local_degree.is_multiple_of(2))
}
