//! Hypothesis audit and certificate assembly for the non-existence of
//! points on `M₀ᴮ(p)` over an abelian field for all large `p`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{is_prime_u64, is_squarefree_u64, prime_divisors_u64, primes_in};
use crate::badprimes::{enumeration_estimate, n1_set, BadPrimeSets, EnumerationOptions, EXPONENTS};
use crate::classgrp::{generating_primes, ingest_class_data, ClassGroupData, FormClassGroup, Provenance};
use crate::error::{Error, Result};
use crate::lemma::{elimination_verdict, imaginary_discriminant, LemmaScenario, Verdict};
use crate::numfield::{FieldElement, FieldSpec, NumberField, PrimeIdealHandle};
use crate::quatalg::{splits_over, LocalSplitting, QuaternionAlgebra};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditStatus {
    Pass,
    Fail,
    External,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisAudit {
    pub name: String,
    pub status: AuditStatus,
    pub evidence: Value,
}

impl HypothesisAudit {
    fn new(name: &str, status: AuditStatus, evidence: Value) -> Self {
        Self { name: name.into(), status, evidence }
    }

    fn check(name: &str, ok: bool, evidence: Value) -> Self {
        Self::new(name, if ok { AuditStatus::Pass } else { AuditStatus::Fail }, evidence)
    }
}

/// One imaginary quadratic subfield `L` tested for `H_L ⊆ k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcfCheck {
    #[serde(rename = "D")]
    pub d: i64,
    pub h: u64,
    pub mu: u32,
    pub elementary: bool,
    pub genus_generators: Vec<i64>,
    pub generators_in_field: bool,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcfAudit {
    pub pass: bool,
    pub witness: Option<i64>,
    pub checked: Vec<HcfCheck>,
}

/// Prime discriminants whose product is the fundamental discriminant `d`.
pub fn prime_discriminants(d: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut rest = d;
    for p in prime_divisors_u64(d.unsigned_abs()) {
        if p == 2 {
            continue;
        }
        let star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
        rest /= star;
        out.push(star);
    }
    if rest != 1 {
        out.push(rest);
    }
    out.sort_unstable();
    out
}

/// Whether `k` contains the Hilbert class field of one of its imaginary
/// quadratic subfields. For abelian `k`, `H_L ⊆ k` iff `H_L` is the genus
/// field of `L`, i.e. `h_L = 2^{μ−1}` with `Cl_L` elementary, and every prime
/// discriminant dividing `disc L` is a quadratic subfield of `k`.
pub fn hcf_free(k: &NumberField) -> Result<HcfAudit> {
    let subfields = k.quadratic_subfields();
    let mut checked = Vec::new();
    for &d in &subfields.imaginary {
        let grp = FormClassGroup::new(d)?;
        let gens = prime_discriminants(d);
        let mu = gens.len() as u32;
        let h = grp.order();
        let elementary = grp.is_elementary_two_group();
        let generators_in_field = gens.iter().all(|&g| subfields.contains(g));
        let contained = h == 1u64 << (mu - 1) && elementary && generators_in_field;
        checked.push(HcfCheck { d, h, mu, elementary, genus_generators: gens, generators_in_field, contained });
    }
    let witness = checked.iter().find(|c| c.contained).map(|c| c.d);
    Ok(HcfAudit { pass: witness.is_none(), witness, checked })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub q: u64,
    pub prime: PrimeIdealHandle,
    #[serde(rename = "N")]
    pub norm: u64,
    /// Discriminant of `Q(√−q)`.
    pub minus_q_field: i64,
    /// A ramified prime of `B` that stays non-split over `Q(√−q)`.
    pub nonsplit_at: LocalSplitting,
}

/// Primes `q <= bound`, unramified in `k`, with a prime of odd residue
/// degree above them and `B ⊗ Q(√−q)` not a matrix algebra; the one
/// minimizing `N(𝔮) = q^f`.
pub fn find_witness(k: &NumberField, b: &QuaternionAlgebra, bound: u64) -> Result<Option<Witness>> {
    let mut best: Option<Witness> = None;
    for q in primes_in(2, bound) {
        if best.as_ref().is_some_and(|w| q >= w.norm) {
            break;
        }
        if k.is_ramified(q) {
            continue;
        }
        let s = k.splitting_data(q)?;
        if !s.odd_degree() {
            continue;
        }
        let Some(norm) = q.checked_pow(s.f as u32) else { continue };
        if best.as_ref().is_some_and(|w| norm >= w.norm) {
            continue;
        }
        let d = imaginary_discriminant(q);
        let v = splits_over(b, &NumberField::quadratic(d)?)?;
        if let Some(at) = v.witness() {
            best = Some(Witness {
                q,
                prime: PrimeIdealHandle::from_splitting(&s),
                norm,
                minus_q_field: d,
                nonsplit_at: at.clone(),
            });
        }
    }
    Ok(best)
}

/// The auxiliary field `W = Q(√N)` and the three properties it must give
/// the compositum `kW`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplittingField {
    #[serde(rename = "N")]
    pub n: i64,
    pub field: FieldSpec,
    pub compositum: FieldSpec,
    pub hcf: HcfAudit,
    /// The prime `𝔮′` of `kW` above the witness.
    pub prime: PrimeIdealHandle,
    pub witness_ramifies: bool,
    pub same_norm_odd_degree: bool,
    pub splits: bool,
    pub splitting_evidence: Vec<LocalSplitting>,
}

impl SplittingField {
    pub fn accepted(&self) -> bool {
        self.hcf.pass && self.witness_ramifies && self.same_norm_odd_degree && self.splits
    }
}

/// Evaluate the candidate `W = Q(√n)` for `k`, `B` and the witness prime
/// `q`.
pub fn check_w(k: &NumberField, b: &QuaternionAlgebra, q: u64, n: i64) -> Result<SplittingField> {
    let w = NumberField::from_spec(&FieldSpec::Quadratic {
        d: crate::arith::field_discriminant(n).ok_or(Error::Domain(format!("{n} is a square")))?,
    })?;
    let kw = k.compositum(&w)?;
    let below = k.splitting_data(q)?;
    let above = kw.splitting_data(q)?;
    let split = splits_over(b, &kw)?;
    Ok(SplittingField {
        n,
        field: w.spec().clone(),
        compositum: kw.spec().clone(),
        hcf: hcf_free(&kw)?,
        prime: PrimeIdealHandle::from_splitting(&above),
        witness_ramifies: above.e == 2 * below.e,
        same_norm_odd_degree: above.f == below.f && above.odd_degree(),
        splits: split.splits,
        splitting_evidence: split.evidence,
    })
}

/// Scan squarefree `N` divisible by `lcm(d, q)` by `|N|` ascending,
/// negative first, up to `|N| <= bound`; the first `W = Q(√N)` passing
/// [`check_w`].
pub fn find_w(k: &NumberField, b: &QuaternionAlgebra, q: u64, bound: u64) -> Result<SplittingField> {
    let d = b.discriminant();
    let base = if d.is_multiple_of(q) { d } else { d * q };
    let mut m = 1u64;
    while base.saturating_mul(m) <= bound {
        if is_squarefree_u64(base * m) {
            let n = (base * m) as i64;
            for cand in [-n, n] {
                let w = check_w(k, b, q, cand)?;
                if w.accepted() {
                    return Ok(w);
                }
            }
        }
        m += 1;
    }
    Err(Error::SearchExhausted(format!(
        "no W = Q(sqrt N) with lcm({d}, {q}) | N, |N| <= {bound}"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// `B` already splits over `k`.
    Direct,
    /// `B` splits only over the compositum `kW`.
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateVerdict {
    Certified,
    Inapplicable,
    Withheld,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExclusionSet {
    Enumerated {
        #[serde(with = "crate::arith::bigjson::vec")]
        primes: Vec<BigInt>,
        complete: bool,
        sets: Box<BadPrimeSets>,
    },
    DefinedNotEnumerated {
        field: FieldSpec,
        reason: String,
        #[serde(rename = "S")]
        s: Option<Vec<u64>>,
        alpha: Option<Vec<FieldElement>>,
        budget: u64,
        /// `|ℰ| = 5^[k:Q]`, a lower bound on the evaluation count.
        #[serde(with = "crate::arith::bigjson")]
        epsilon_vectors: BigInt,
        #[serde(with = "crate::arith::bigjson::option")]
        estimate: Option<BigInt>,
    },
}

impl ExclusionSet {
    pub fn is_enumerated(&self) -> bool {
        matches!(self, ExclusionSet::Enumerated { .. })
    }

    fn is_complete(&self) -> bool {
        matches!(self, ExclusionSet::Enumerated { complete: true, .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: String,
    pub tool: String,
    pub tool_version: String,
    pub field: FieldSpec,
    pub quaternion_discriminant: u64,
    pub discriminant_primes: Vec<u64>,
    pub verdict: CertificateVerdict,
    pub route: Option<Route>,
    pub witness: Option<Witness>,
    pub splitting_field: Option<SplittingField>,
    pub working_field: Option<FieldSpec>,
    /// `N` of the prime used in the working field.
    pub witness_norm: Option<u64>,
    #[serde(rename = "P0")]
    pub threshold: Option<u64>,
    pub exclusion_set: Option<ExclusionSet>,
    pub audit: Vec<HypothesisAudit>,
    pub conclusion: Option<String>,
}

impl Certificate {
    /// Sorted-key JSON; identical inputs give identical bytes.
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("certificate serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn failed_hypothesis(&self) -> Option<&HypothesisAudit> {
        self.audit.iter().find(|a| a.status == AuditStatus::Fail)
    }
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub witness_bound: u64,
    pub w_bound: u64,
    /// Prime bound for computing generating primes of a quadratic working
    /// field.
    pub class_search_bound: u64,
    /// Class data for the working field, as JSON.
    pub class_data: Option<String>,
    pub enumeration: EnumerationOptions,
    pub allow_symbolic: bool,
    pub consistency_samples: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            witness_bound: 10_000,
            w_bound: 1_000_000,
            class_search_bound: 100_000,
            class_data: None,
            enumeration: EnumerationOptions::default(),
            allow_symbolic: false,
            consistency_samples: 5,
        }
    }
}

/// Primes `p > p0` with `p ≡ 3 mod 4`, `p ∤ d`, `p ≠ q`, `p ≠ 13`.
fn consistency_primes(p0: u64, d: u64, q: u64, count: usize) -> Vec<u64> {
    (p0 + 1..)
        .filter(|&p| p % 4 == 3 && !d.is_multiple_of(p) && p != q && p != 13 && is_prime_u64(p))
        .take(count)
        .collect()
}

struct Draft {
    k: NumberField,
    b: QuaternionAlgebra,
    audit: Vec<HypothesisAudit>,
}

impl Draft {
    fn stop(self) -> Certificate {
        Certificate {
            schema_version: SCHEMA_VERSION.into(),
            tool: "shimura-gate".into(),
            tool_version: TOOL_VERSION.into(),
            field: self.k.spec().clone(),
            quaternion_discriminant: self.b.discriminant(),
            discriminant_primes: self.b.ramified_primes(),
            verdict: CertificateVerdict::Inapplicable,
            route: None,
            witness: None,
            splitting_field: None,
            working_field: None,
            witness_norm: None,
            threshold: None,
            exclusion_set: None,
            audit: self.audit,
            conclusion: None,
        }
    }
}

fn class_data_for(working: &NumberField, opts: &CertifyOptions) -> Result<Option<ClassGroupData>> {
    match &opts.class_data {
        Some(payload) => ingest_class_data(working, payload).map(Some),
        None if working.degree() <= 2 => generating_primes(working, opts.class_search_bound).map(Some),
        None => Ok(None),
    }
}

fn epsilon_vectors(k: &NumberField) -> BigInt {
    BigInt::from(EXPONENTS.len()).pow(k.degree() as u32)
}

fn exclusion_set(
    working: &NumberField,
    cg: Option<&ClassGroupData>,
    opts: &CertifyOptions,
) -> Result<ExclusionSet> {
    let budget = opts.enumeration.budget;
    let Some(cg) = cg else {
        return Ok(ExclusionSet::DefinedNotEnumerated {
            field: working.spec().clone(),
            reason: format!(
                "no class data for the degree {} working field; supply it with --class-data",
                working.degree()
            ),
            s: None,
            alpha: None,
            budget,
            epsilon_vectors: epsilon_vectors(working),
            estimate: None,
        });
    };
    match n1_set(working, cg, &opts.enumeration) {
        Ok(sets) => Ok(ExclusionSet::Enumerated {
            primes: sets.n1.clone(),
            complete: sets.complete,
            sets: Box::new(sets),
        }),
        Err(Error::BudgetExceeded { estimate, budget }) => Ok(ExclusionSet::DefinedNotEnumerated {
            field: working.spec().clone(),
            reason: format!("{estimate} norm evaluations exceed the budget"),
            s: Some(cg.s_primes()),
            alpha: Some((0..cg.alpha.len()).map(|i| cg.alpha_element(i)).collect()),
            budget,
            epsilon_vectors: epsilon_vectors(working),
            estimate: Some(enumeration_estimate(working, cg)),
        }),
        Err(e) => Err(e),
    }
}

/// Audit every hypothesis for `(k, B)` and assemble the certificate. A
/// failed hypothesis yields verdict `inapplicable`; a symbolic or
/// incompletely factored exclusion set yields `withheld` unless
/// `allow_symbolic` is set.
pub fn certify(k: &NumberField, b: &QuaternionAlgebra, opts: &CertifyOptions) -> Result<Certificate> {
    let mut draft = Draft { k: k.clone(), b: b.clone(), audit: Vec::new() };
    draft.audit.push(HypothesisAudit::new(
        "k_abelian",
        AuditStatus::Pass,
        json!({ "conductor": k.conductor(), "degree": k.degree() }),
    ));

    let hcf = hcf_free(k)?;
    draft.audit.push(HypothesisAudit::check("k_hilbert_class_field_free", hcf.pass, json!(hcf)));
    if !hcf.pass {
        return Ok(draft.stop());
    }

    let Some(witness) = find_witness(k, b, opts.witness_bound)? else {
        draft.audit.push(HypothesisAudit::check(
            "odd_degree_witness",
            false,
            json!({ "reason": format!("no witness below {}", opts.witness_bound) }),
        ));
        return Ok(draft.stop());
    };
    draft.audit.push(HypothesisAudit::check("odd_degree_witness", true, json!(witness)));

    let over_k = splits_over(b, k)?;
    let (route, working, splitting_field, prime) = if over_k.splits {
        draft.audit.push(HypothesisAudit::check("b_splits_over_k", true, json!(over_k.evidence)));
        (Route::Direct, k.clone(), None, witness.prime.clone())
    } else {
        let w = match find_w(k, b, witness.q, opts.w_bound) {
            Ok(w) => w,
            Err(Error::SearchExhausted(why)) => {
                draft.audit.push(HypothesisAudit::check("splitting_field_w", false, json!({ "reason": why })));
                return Ok(draft.stop());
            }
            Err(e) => return Err(e),
        };
        // Re-derive every property of W instead of trusting the scan.
        let recheck = check_w(k, b, witness.q, w.n)?;
        let kw = NumberField::from_spec(&recheck.compositum)?;
        draft.audit.push(HypothesisAudit::check("kw_hilbert_class_field_free", recheck.hcf.pass, json!(recheck.hcf)));
        draft.audit.push(HypothesisAudit::check(
            "witness_ramified_in_kw",
            recheck.witness_ramifies && recheck.same_norm_odd_degree,
            json!({ "prime": recheck.prime, "below": witness.prime }),
        ));
        draft.audit.push(HypothesisAudit::check(
            "b_splits_over_kw",
            recheck.splits,
            json!(recheck.splitting_evidence),
        ));
        if !recheck.accepted() {
            return Ok(draft.stop());
        }
        let prime = recheck.prime.clone();
        (Route::Extended, kw, Some(recheck), prime)
    };

    let norm = prime
        .norm
        .to_u64()
        .ok_or_else(|| Error::Unsupported("witness norm exceeds 64 bits".into()))?;
    let p0 = (4 * norm).max(13);

    let samples = consistency_primes(p0, b.discriminant(), witness.q, opts.consistency_samples);
    let mut reports = Vec::new();
    let mut consistent = true;
    for &p in &samples {
        let r = elimination_verdict(&LemmaScenario { n: norm, q: witness.q, p }, b)?;
        consistent &= r.verdict == Verdict::ContradictionReached;
        let mut entry = json!(r.verdict);
        entry["p"] = json!(p);
        reports.push(entry);
    }
    draft.audit.push(HypothesisAudit::check(
        "lemma_consistency",
        consistent,
        json!({ "q": witness.q, "N": norm, "samples": reports }),
    ));
    if !consistent {
        return Ok(draft.stop());
    }

    let cg = class_data_for(&working, opts)?;
    if let Some(cg) = &cg {
        let status = match cg.provenance {
            Provenance::Ingested if working.degree() > 2 => AuditStatus::External,
            _ => AuditStatus::Pass,
        };
        draft.audit.push(HypothesisAudit::new(
            "class_data",
            status,
            json!({ "provenance": cg.provenance, "h": cg.h, "S": cg.s_primes() }),
        ));
    }
    let e = exclusion_set(&working, cg.as_ref(), opts)?;
    let verdict = if e.is_complete() || opts.allow_symbolic {
        CertificateVerdict::Certified
    } else {
        CertificateVerdict::Withheld
    };
    let d = b.discriminant();
    let field_name = k.spec().to_string();
    let conclusion = format!(
        "for every prime p with p > {p0}, p ∤ {d}, p ∉ E: M_0^B(p)({field_name}) = ∅"
    );

    let mut cert = draft.stop();
    cert.verdict = verdict;
    cert.route = Some(route);
    cert.witness = Some(witness);
    cert.splitting_field = splitting_field;
    cert.working_field = Some(working.spec().clone());
    cert.witness_norm = Some(norm);
    cert.threshold = Some(p0);
    cert.exclusion_set = Some(e);
    cert.conclusion = Some(conclusion);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta31() -> NumberField {
        NumberField::cyclotomic(31).unwrap()
    }

    fn quat(d: u64) -> QuaternionAlgebra {
        QuaternionAlgebra::from_discriminant(d).unwrap()
    }

    #[test]
    fn prime_discriminant_factors() {
        assert_eq!(prime_discriminants(-4), vec![-4]);
        assert_eq!(prime_discriminants(-24), vec![-3, 8]);
        assert_eq!(prime_discriminants(-88), vec![-11, 8]);
        assert_eq!(prime_discriminants(-84), vec![-7, -4, -3]);
        assert_eq!(prime_discriminants(5), vec![5]);
        assert_eq!(prime_discriminants(-31), vec![-31]);
        for d in (-3000i64..3000).filter(|&d| crate::arith::is_fundamental_discriminant(d)) {
            let p = prime_discriminants(d);
            assert_eq!(p.iter().product::<i64>(), d);
            assert!(p.iter().all(|&x| crate::arith::is_fundamental_discriminant(x)));
        }
    }

    #[test]
    fn hcf_examples() {
        assert!(hcf_free(&zeta31()).unwrap().pass);
        let kw = zeta31().compositum(&NumberField::quadratic(-24).unwrap()).unwrap();
        let a = hcf_free(&kw).unwrap();
        assert!(a.pass);
        assert_eq!(a.checked.iter().map(|c| c.d).collect::<Vec<_>>(), vec![-24, -31]);
        let gauss = hcf_free(&NumberField::quadratic(-4).unwrap()).unwrap();
        assert_eq!(gauss.witness, Some(-4));
        // Q(√−15) has h = 2 and genus field Q(√−3, √5)
        let genus = NumberField::from_spec(&FieldSpec::compositum(vec![
            FieldSpec::quadratic(-3),
            FieldSpec::quadratic(5),
        ]))
        .unwrap();
        let a = hcf_free(&genus).unwrap();
        assert_eq!(a.witness, Some(-3));
        assert!(a.checked.iter().any(|c| c.d == -15 && c.h == 2 && c.contained));
        assert!(hcf_free(&NumberField::quadratic(-15).unwrap()).unwrap().pass);
        assert!(hcf_free(&NumberField::rationals()).unwrap().pass);
    }

    #[test]
    fn witness_examples() {
        let q5 = NumberField::quadratic(5).unwrap();
        let w = find_witness(&q5, &quat(6), 1000).unwrap().unwrap();
        assert_eq!((w.q, w.norm), (11, 11));
        let w = find_witness(&NumberField::rationals(), &quat(6), 10).unwrap().unwrap();
        assert_eq!((w.q, w.norm), (2, 2));
        let w = find_witness(&zeta31(), &quat(6), 1000).unwrap().unwrap();
        assert_eq!((w.q, w.norm, w.prime.e), (2, 32, 1));
        // 2 ramifies in kW but keeps residue degree 5
        let w = check_w(&zeta31(), &quat(6), 2, -6).unwrap();
        assert_eq!((w.prime.e, w.prime.f, w.prime.norm.clone()), (2, 5, BigInt::from(32)));
        assert!(find_witness(&NumberField::rationals(), &quat(6), 1).unwrap().is_none());
        // 31 is totally ramified, so not eligible even though f = 1
        assert!(find_witness(&zeta31(), &quat(6), 31).unwrap().unwrap().q != 31);
    }

    #[test]
    fn w_examples() {
        for (d, n) in [(6, -6), (22, -22)] {
            let w = find_w(&zeta31(), &quat(d), 2, 10_000).unwrap();
            assert_eq!(w.n, n);
            assert!(w.accepted());
            assert_eq!(w.prime.norm, BigInt::from(32));
        }
        let w = find_w(&NumberField::rationals(), &quat(6), 2, 100).unwrap();
        assert_eq!(w.field, FieldSpec::quadratic(-24));
    }

    #[test]
    fn gaussian_field_is_inapplicable() {
        let c = certify(&NumberField::quadratic(-4).unwrap(), &quat(6), &CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, CertificateVerdict::Inapplicable);
        let failed = c.failed_hypothesis().unwrap();
        assert_eq!(failed.name, "k_hilbert_class_field_free");
        assert_eq!(failed.evidence["witness"], json!(-4));
    }

    #[test]
    fn rationals_use_imaginary_w() {
        let c = certify(&NumberField::rationals(), &quat(6), &CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, CertificateVerdict::Certified);
        assert_eq!(c.route, Some(Route::Extended));
        assert_eq!(c.working_field, Some(FieldSpec::quadratic(-24)));
        assert_eq!(c.threshold, Some(13));
        assert!(c.exclusion_set.as_ref().unwrap().is_enumerated());
    }

    #[test]
    fn symbolic_exclusion_set_is_withheld_by_default() {
        let c = certify(&zeta31(), &quat(6), &CertifyOptions::default()).unwrap();
        assert_eq!(c.verdict, CertificateVerdict::Withheld);
        assert_eq!(c.route, Some(Route::Extended));
        assert_eq!(c.threshold, Some(128));
        assert!(!c.exclusion_set.unwrap().is_enumerated());
    }

    #[test]
    fn consistency_sample_primes() {
        assert_eq!(consistency_primes(128, 6, 2, 5), vec![131, 139, 151, 163, 167]);
        assert_eq!(consistency_primes(13, 6, 2, 3), vec![19, 23, 31]);
        assert_eq!(consistency_primes(44, 6, 11, 2), vec![47, 59]);
    }
}
