//! Residue case analysis for candidate Frobenius traces.
//!
//! Let `β` be a Frobenius eigenvalue at a prime `𝔮` of norm `N` and `p` an
//! auxiliary prime with `p ≡ 3 mod 4`. The character argument gives
//! `β² + β̄² ≡ −N^{(p+1)/2}` or `2N^{(p+1)/2} (mod p)`. Writing
//! `N^{(p+1)/2} ≡ sN` with `s = N^{(p−1)/2} mod p`, the trace square
//! `(β + β̄)² = β² + β̄² + 2N` is `≡ (2 − s)N` or `(2 + 2s)N`. Since
//! `0 <= (β + β̄)² <= 4N`, the class pins down the integer once `4N < p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, is_square_u64, pow_mod};
use crate::error::{Error, Result};
use crate::numfield::NumberField;
use crate::quatalg::{splits_over, QuaternionAlgebra};

/// `N^{(p−1)/2} mod p` as `+1`, `−1` or `0`.
pub fn residue_sign(n: &BigInt, p: u64) -> Result<i8> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    let r = n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits");
    Ok(match pow_mod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    /// Class of `(β + β̄)²` mod `p`.
    pub class: u64,
    /// The unique integer in `[0, 4N]` in that class, if any.
    pub value: Option<u64>,
    pub perfect_square: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceBranch {
    /// Assumed value of `N^{(p−1)/2} mod p`.
    pub sign: i8,
    /// `β² + β̄² mod p` in the two cases.
    pub power_sum_classes: [u64; 2],
    pub trace_square_classes: [u64; 2],
    /// Present when `4N < p`.
    pub resolutions: Option<Vec<Resolution>>,
}

impl TraceBranch {
    pub fn values(&self) -> Vec<u64> {
        self.resolutions
            .iter()
            .flatten()
            .filter_map(|r| r.value)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCases {
    pub n: u64,
    pub p: u64,
    pub residue_sign: i8,
    pub size_bound_applicable: bool,
    pub plus: TraceBranch,
    pub minus: TraceBranch,
}

impl TraceCases {
    pub fn branch(&self, sign: i8) -> &TraceBranch {
        if sign > 0 {
            &self.plus
        } else {
            &self.minus
        }
    }
}

/// Both sign branches of the trace-square congruence, resolved to integers
/// when `4N < p`.
pub fn trace_cases(n: u64, p: u64) -> Result<TraceCases> {
    if p < 11 || !is_prime_u64(p) {
        return Err(Error::Domain(format!("trace analysis needs a prime p >= 11, got {p}")));
    }
    if n == 0 {
        return Err(Error::Domain("norm must be positive".into()));
    }
    let sign = residue_sign(&BigInt::from(n), p)?;
    let bounded = (n as u128) * 4 < p as u128;
    let nm = n % p;
    let branch = |s: i8| {
        let sn = if s > 0 { nm } else { (p - nm) % p };
        let power_sums = [(p - sn) % p, (2 * sn) % p];
        let trace_squares = power_sums.map(|c| (c + 2 * nm) % p);
        let resolutions = bounded.then(|| {
            trace_squares
                .iter()
                .map(|&c| {
                    let value = (c <= 4 * n).then_some(c);
                    Resolution { class: c, value, perfect_square: value.is_some_and(is_square_u64) }
                })
                .collect()
        });
        TraceBranch { sign: s, power_sum_classes: power_sums, trace_square_classes: trace_squares, resolutions }
    };
    Ok(TraceCases { n, p, residue_sign: sign, size_bound_applicable: bounded, plus: branch(1), minus: branch(-1) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaScenario {
    pub n: u64,
    pub q: u64,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    ContradictionReached,
    Consistent(String),
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationReport {
    pub scenario: LemmaScenario,
    pub disc: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub trace: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<TraceCases>,
}

/// Discriminant of `Q(√−q)`.
pub fn imaginary_discriminant(q: u64) -> i64 {
    let q = q as i64;
    if q % 4 == 3 {
        -q
    } else {
        -4 * q
    }
}

fn odd_power_of(n: u64, q: u64) -> Option<u32> {
    if q < 2 || n < q {
        return None;
    }
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(q) {
        m /= q;
        e += 1;
    }
    (m == 1).then_some(e)
}

/// Replays the elimination: the `+1` branch gives non-square trace squares,
/// the `−1` branch leaves trace `0` or, when `q = 3`, trace² `= 3N`; either
/// survivor would make `B ⊗ Q(√−q)` split. The contradiction is reached
/// exactly when it does not.
pub fn elimination_verdict(s: &LemmaScenario, b: &QuaternionAlgebra) -> Result<EliminationReport> {
    let na = |why: String| EliminationReport {
        scenario: s.clone(),
        disc: b.discriminant(),
        verdict: Verdict::NotApplicable(why),
        trace: Vec::new(),
        cases: None,
    };
    if !is_prime_u64(s.q) {
        return Ok(na(format!("q = {} is not prime", s.q)));
    }
    match odd_power_of(s.n, s.q) {
        None => return Ok(na(format!("N = {} is not a power of q = {}", s.n, s.q))),
        Some(e) if e % 2 == 0 => {
            return Ok(na(format!("N = {}^{e} is an even power of q", s.q)));
        }
        _ => {}
    }
    if !is_prime_u64(s.p) || s.p == s.q {
        return Ok(na(format!("p = {} must be a prime different from q", s.p)));
    }
    if s.p < 11 || s.p == 13 {
        return Ok(na(format!("p = {} violates p >= 11, p != 13", s.p)));
    }
    if s.p % 4 != 3 {
        return Ok(na(format!("p = {} is not 3 mod 4", s.p)));
    }
    if (s.n as u128) * 4 >= s.p as u128 {
        return Ok(na(format!("4N = {} is not below p = {}", 4 * s.n as u128, s.p)));
    }

    let cases = trace_cases(s.n, s.p)?;
    let mut trace = vec![format!(
        "N^((p-1)/2) mod p = {} (both branches are replayed)",
        cases.residue_sign
    )];
    let plus = cases.plus.values();
    if plus.iter().any(|&v| is_square_u64(v)) {
        return Err(Error::Domain(format!("+1 branch produced a square trace in {plus:?}")));
    }
    trace.push(format!("sign +1: (b+b')^2 in {plus:?}, none a perfect square, branch impossible"));
    let minus = cases.minus.values();
    let survivors: Vec<u64> = minus.iter().copied().filter(|&v| is_square_u64(v)).collect();
    trace.push(format!("sign -1: (b+b')^2 in {minus:?}, square survivors {survivors:?}"));
    if survivors.iter().any(|&v| v != 0 && v != 3 * s.n) {
        return Err(Error::Domain(format!("-1 branch left {survivors:?}, outside {{0, 3N}}")));
    }
    if survivors.contains(&(3 * s.n)) {
        trace.push(format!("q = {} and |b+b'| = sqrt(3N) survives", s.q));
    }
    let d = imaginary_discriminant(s.q);
    let k = NumberField::quadratic(d)?;
    let split = splits_over(b, &k)?;
    trace.push(format!("surviving cases force B ⊗ Q(sqrt({d})) to split"));
    let verdict = if split.splits {
        let case = if survivors.contains(&(3 * s.n)) { "q=3 trace case" } else { "trace 0 case" };
        Verdict::Consistent(format!("{case} survives; B⊗Q(sqrt({d})) splits"))
    } else {
        let w = split.witness().expect("non-split verdict has a witness");
        trace.push(format!("but p = {} has local degree {} in Q(sqrt({d}))", w.p, w.local_degree));
        Verdict::ContradictionReached
    };
    Ok(EliminationReport { scenario: s.clone(), disc: b.discriminant(), verdict, trace, cases: Some(cases) })
}

/// Pairs `(q, q^e)` with `e` odd and `q^e < limit`, ordered by `q^e`.
pub fn odd_prime_powers_below(limit: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for q in crate::arith::primes_in(2, limit) {
        let mut n = q;
        loop {
            if n >= limit {
                break;
            }
            out.push((q, n));
            match n.checked_mul(q * q) {
                Some(m) => n = m,
                None => break,
            }
        }
    }
    out.sort_by_key(|&(q, n)| (n, q));
    out
}
