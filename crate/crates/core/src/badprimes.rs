//! Weil-number candidates and the norm values whose prime supports make up
//! the bad-prime sets `N0 ⊆ N1`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    exact_sqrt, factorize_partial, field_discriminant, isqrt_u64, pow_big, FactorOptions,
    IntPolynomial,
};
use crate::classgrp::{ClassGroupData, Provenance};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, FieldSpec, GeneratorArith, NumberField};

/// Allowed exponents `a_σ` in the vectors of `ℰ(k)`.
pub const EXPONENTS: [u32; 5] = [0, 8, 12, 16, 24];

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A root `β` of `x² + a·x + n` with `a² <= 4n`. `root` selects the sign of
/// the square root (`+1`/`-1`), or is `0` for the double root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeilCandidate {
    pub a: i64,
    pub n: u64,
    pub root: i8,
}

impl WeilCandidate {
    /// `a² − 4n`, never positive.
    pub fn disc(&self) -> i128 {
        (self.a as i128) * (self.a as i128) - 4 * self.n as i128
    }

    /// `β + β̄`.
    pub fn trace(&self) -> i64 {
        -self.a
    }

    /// `β·β̄`.
    pub fn norm(&self) -> u64 {
        self.n
    }

    pub fn conjugate(&self) -> Self {
        Self { root: -self.root, ..*self }
    }

    /// `β^m + β̄^m` from the Lucas recurrence.
    pub fn power_trace(&self, m: u64) -> BigInt {
        let p = BigInt::from(-self.a);
        let q = BigInt::from(self.n);
        let (mut v0, mut v1) = (BigInt::from(2), p.clone());
        if m == 0 {
            return v0;
        }
        for _ in 1..m {
            let v2 = &p * &v1 - &q * &v0;
            v0 = std::mem::replace(&mut v1, v2);
        }
        v1
    }

    /// `(D0, r)` with `a² − 4n = D0·r²`, `D0` a fundamental discriminant and
    /// `r > 0` rational; `None` for the double root.
    pub fn quadratic_part(&self) -> Option<(i64, BigInt, BigInt)> {
        let disc = i64::try_from(self.disc()).ok()?;
        let d0 = field_discriminant(disc)?;
        let (num, den) = (BigInt::from(disc), BigInt::from(d0));
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / &g);
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        Some((d0, exact_sqrt(&num)?, exact_sqrt(&den)?))
    }
}

/// Every root of `x² + a·x + n` over all `a` with `a² <= 4n`, ordered by `a`
/// then `+` before `-`.
pub fn fr_set(n: u64) -> Vec<WeilCandidate> {
    let bound = isqrt_u64(4 * n) as i64;
    let mut out = Vec::new();
    for a in -bound..=bound {
        let c = WeilCandidate { a, n, root: 0 };
        if c.disc() == 0 {
            out.push(c);
        } else {
            out.push(WeilCandidate { root: 1, ..c });
            out.push(WeilCandidate { root: -1, ..c });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct M2Value {
    pub q: u64,
    /// Exponents `a_σ`, one per conjugate in the order of the class data.
    pub epsilon: Vec<u32>,
    pub beta: WeilCandidate,
    #[serde(with = "crate::arith::bigjson")]
    pub value: BigInt,
    /// Zero values carry no prime information and are excluded.
    pub excluded: bool,
    /// Whether `β` lies in the field itself.
    pub beta_in_field: bool,
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub budget: u64,
    pub threads: Option<usize>,
    pub factor: FactorOptions,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, threads: None, factor: FactorOptions::default() }
    }
}

/// Number of norm evaluations `Σ_𝔮 5^[k:Q]·|FR(N𝔮)|`.
pub fn enumeration_estimate(k: &NumberField, cg: &ClassGroupData) -> BigInt {
    let eps = BigInt::from(EXPONENTS.len()).pow(k.degree() as u32);
    cg.prime_handles()
        .iter()
        .map(|h| match h.norm.to_u64() {
            Some(n) => &eps * BigInt::from(fr_set_len(n)),
            None => &eps * BigInt::from(2) * (BigInt::from(2) * (&h.norm * 4u32).sqrt() + 1),
        })
        .sum()
}

fn fr_set_len(n: u64) -> u64 {
    let b = isqrt_u64(4 * n);
    let doubles = if b * b == 4 * n { 2 } else { 0 };
    2 * (2 * b + 1) - doubles
}

fn check_field(k: &NumberField, cg: &ClassGroupData) -> Result<()> {
    let declared = NumberField::from_spec(&cg.field_spec)?;
    if declared != *k {
        return Err(Error::ClassDataRejected(format!(
            "class data describes {}, not {}",
            cg.field_spec,
            k.spec()
        )));
    }
    if cg.alpha.len() != cg.s.len() {
        return Err(Error::ClassDataRejected("S and alpha differ in length".into()));
    }
    for (i, a) in cg.alpha.iter().enumerate() {
        if a.conjugates.len() != k.degree() {
            return Err(Error::ClassDataRejected(format!(
                "alpha[{i}] lists {} conjugates, expected {}",
                a.conjugates.len(),
                k.degree()
            )));
        }
    }
    Ok(())
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t);
    }
    b.build().map_err(|e| Error::Domain(format!("thread pool: {e}")))
}

/// How `β^M` is evaluated for one candidate.
enum BetaMode {
    /// `β ∉ k`: `T = β^M + β̄^M` and `n^M`.
    Outside { trace: BigInt, norm_pow: BigInt },
    /// `β ∈ k`, precomputed `β^M`.
    Inside(FieldElement),
}

struct Prepared {
    candidate: WeilCandidate,
    mode: BetaMode,
}

fn prepare_candidates(
    k: &NumberField,
    cg: &ClassGroupData,
    arith: &GeneratorArith,
    n: u64,
    m: u64,
) -> Result<Vec<Prepared>> {
    let subfields = k.quadratic_subfields();
    fr_set(n)
        .into_iter()
        .map(|c| {
            let mode = if c.disc() == 0 {
                let r = FieldElement::new(IntPolynomial::constant(BigInt::from(-c.a)), BigInt::from(2))?;
                BetaMode::Inside(arith.pow(&r, m))
            } else {
                let (d0, r_num, r_den) = c
                    .quadratic_part()
                    .ok_or_else(|| Error::Domain(format!("bad Weil candidate {c:?}")))?;
                if subfields.contains(d0) {
                    let s = cg.sqrt_of(d0).ok_or_else(|| {
                        Error::Unsupported(format!(
                            "β = (−{} ± √{})/2 lies in the field but the class data lacks √{d0}",
                            c.a,
                            c.disc()
                        ))
                    })?;
                    // β = (−a + root·r·√D0)/2
                    let lead = &s.num.scale(&(BigInt::from(c.root) * &r_num));
                    let rational = IntPolynomial::constant(BigInt::from(-c.a) * &r_den * &s.den);
                    let beta = FieldElement::new(&rational + lead, BigInt::from(2) * &r_den * &s.den)?;
                    BetaMode::Inside(arith.pow(&beta, m))
                } else {
                    BetaMode::Outside {
                        trace: c.power_trace(m),
                        norm_pow: pow_big(&BigInt::from(c.n), m),
                    }
                }
            };
            Ok(Prepared { candidate: c, mode })
        })
        .collect()
}

fn epsilon_digits(mut e: u64, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = (e % EXPONENTS.len() as u64) as usize;
        e /= EXPONENTS.len() as u64;
    }
    d
}

/// The norm values `Norm_{k(β)/Q}(γ − β^M)` for every `𝔮 ∈ S`, `ε ∈ ℰ(k)`
/// and `β ∈ FR(N𝔮)`, with `γ = Π σ(α_𝔮)^{a_σ}` and `M = 24h`.
///
/// Ordered by `𝔮`, then `ε` (base-5 digits over the conjugate order), then
/// `a`, then root sign. The order does not depend on the thread count.
pub fn m2_values(k: &NumberField, cg: &ClassGroupData, opts: &EnumerationOptions) -> Result<Vec<M2Value>> {
    check_field(k, cg)?;
    let estimate = enumeration_estimate(k, cg);
    if estimate > BigInt::from(opts.budget) {
        return Err(Error::BudgetExceeded { estimate: estimate.to_string(), budget: opts.budget });
    }
    let arith = cg.arith()?;
    let deg = k.degree();
    let m = 24 * cg.h;
    let n_eps = (EXPONENTS.len() as u64).pow(deg as u32);
    let pool = pool(opts.threads)?;

    let mut out = Vec::new();
    for (i, handle) in cg.prime_handles().iter().enumerate() {
        let n = handle
            .norm
            .to_u64()
            .ok_or_else(|| Error::Unsupported(format!("norm {} of a generating prime", handle.norm)))?;
        let cands = prepare_candidates(k, cg, &arith, n, m)?;
        // powers[σ][j] = σ(α)^{EXPONENTS[j]}
        let powers: Vec<Vec<FieldElement>> = cg
            .conjugate_elements(i)
            .iter()
            .map(|c| EXPONENTS.iter().map(|&e| arith.pow(c, e as u64)).collect())
            .collect();
        let chunk: Result<Vec<Vec<M2Value>>> = pool.install(|| {
            (0..n_eps)
                .into_par_iter()
                .map(|e| {
                    let digits = epsilon_digits(e, deg);
                    let gamma = digits
                        .iter()
                        .enumerate()
                        .fold(FieldElement::rational(BigInt::one()), |acc, (s, &j)| {
                            arith.mul(&acc, &powers[s][j])
                        });
                    let epsilon: Vec<u32> = digits.iter().map(|&j| EXPONENTS[j]).collect();
                    cands
                        .iter()
                        .map(|p| {
                            let value = candidate_norm(&arith, &gamma, &p.mode)?;
                            Ok(M2Value {
                                q: handle.q,
                                epsilon: epsilon.clone(),
                                beta: p.candidate,
                                excluded: value.is_zero(),
                                beta_in_field: matches!(p.mode, BetaMode::Inside(_)),
                                value,
                            })
                        })
                        .collect()
                })
                .collect()
        });
        out.extend(chunk?.into_iter().flatten());
    }
    Ok(out)
}

fn candidate_norm(arith: &GeneratorArith, gamma: &FieldElement, mode: &BetaMode) -> Result<BigInt> {
    match mode {
        BetaMode::Inside(bm) => arith.norm(&arith.sub(gamma, bm)),
        BetaMode::Outside { trace, norm_pow } => {
            // Norm_{k(β)/k}(γ − β^M) = γ² − Tγ + n^M
            let sq = arith.mul(gamma, gamma);
            let lin = arith.scale(gamma, trace);
            let rel = arith.add(&arith.sub(&sq, &lin), &FieldElement::rational(norm_pow.clone()));
            arith.norm(&rel)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCounts {
    /// Every `(𝔮, ε, β)` triple, both roots enumerated.
    pub triples: u64,
    /// Triples after identifying `β` with `β̄` when `β ∉ k`.
    pub triples_up_to_conjugation: u64,
    pub zero_excluded: u64,
    pub distinct_nonzero_values: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPrimeSets {
    pub field: FieldSpec,
    pub h: u64,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "S")]
    pub s: Vec<u64>,
    pub alpha: Vec<FieldElement>,
    pub class_data_provenance: Provenance,
    pub budget: u64,
    pub counts: EnumerationCounts,
    #[serde(rename = "N0", with = "crate::arith::bigjson::vec")]
    pub n0: Vec<BigInt>,
    #[serde(rename = "T")]
    pub t: Vec<u64>,
    #[serde(rename = "Ram")]
    pub ram: Vec<u64>,
    #[serde(rename = "N1", with = "crate::arith::bigjson::vec")]
    pub n1: Vec<BigInt>,
    /// False when some value could not be fully factored; `N0` then holds
    /// only the primes that were split off.
    pub complete: bool,
    #[serde(with = "crate::arith::bigjson::vec")]
    pub unfactored: Vec<BigInt>,
}

impl BadPrimeSets {
    pub fn contains(&self, p: u64) -> bool {
        self.n1.contains(&BigInt::from(p))
    }
}

/// `N1 = N0 ∪ 𝒯 ∪ Ram(k)` with `𝒯` the primes under `S` together with 2
/// and 3, and `N0` the prime support of the nonzero values of
/// [`m2_values`].
pub fn n1_set(k: &NumberField, cg: &ClassGroupData, opts: &EnumerationOptions) -> Result<BadPrimeSets> {
    let values = m2_values(k, cg, opts)?;
    let triples = values.len() as u64;
    let up_to_conj = values
        .iter()
        .filter(|v| v.beta_in_field || v.beta.root >= 0)
        .count() as u64;
    let zero = values.iter().filter(|v| v.excluded).count() as u64;
    let distinct: BTreeSet<BigInt> = values.iter().filter(|v| !v.excluded).map(|v| v.value.abs()).collect();
    let distinct: Vec<BigInt> = distinct.into_iter().collect();

    let pool = pool(opts.threads)?;
    let factored = pool.install(|| {
        distinct
            .par_iter()
            .map(|v| factorize_partial(v, opts.factor))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut n0 = BTreeSet::new();
    let mut unfactored = Vec::new();
    for f in factored {
        n0.extend(f.found.primes().cloned());
        unfactored.extend(f.remaining);
    }
    unfactored.sort();

    let s = cg.s_primes();
    let mut t: BTreeSet<u64> = s.iter().copied().collect();
    t.extend([2, 3]);
    let ram = k.ram();
    let mut n1 = n0.clone();
    n1.extend(t.iter().chain(&ram).map(|&p| BigInt::from(p)));

    Ok(BadPrimeSets {
        field: k.spec().clone(),
        h: cg.h,
        m: 24 * cg.h,
        s,
        alpha: (0..cg.alpha.len()).map(|i| cg.alpha_element(i)).collect(),
        class_data_provenance: cg.provenance,
        budget: opts.budget,
        counts: EnumerationCounts {
            triples,
            triples_up_to_conjugation: up_to_conj,
            zero_excluded: zero,
            distinct_nonzero_values: distinct.len() as u64,
        },
        n0: n0.into_iter().collect(),
        t: t.into_iter().collect(),
        ram,
        n1: n1.into_iter().collect(),
        complete: unfactored.is_empty(),
        unfactored,
    })
}
