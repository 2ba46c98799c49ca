//! Abelian number fields.
//!
//! Every field here is a subfield of a cyclotomic field. By Kronecker-Weber it
//! is determined by its conductor `f` and the subgroup `H` of `(Z/f)^×` that
//! fixes it; `Gal(k/Q)` is then `(Z/f)^× / H` and every splitting question
//! reduces to arithmetic in that quotient:
//!
//! * `p ∤ f`: `e = 1` and `f_p` is the order of the class of `p`;
//! * `p | f`, `f = p^k m`: the inertia group is the image of the residues
//!   `≡ 1 mod m`, and Frobenius is the class of the residue `≡ p mod m`,
//!   `≡ 1 mod p^k`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{
    euler_phi, is_fundamental_discriminant, is_prime_u64, kronecker_i64, pow_big,
    prime_divisors_u64, primes_in,
};
use crate::error::{Error, Result};

mod element;

pub use element::{FieldElement, GeneratorArith};

/// Conductors above this are refused; the coset table is dense in `f`.
pub const MAX_CONDUCTOR: u64 = 4_000_000;

/// External description of a field, as read from and written to JSON.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Quadratic {
        #[serde(rename = "D")]
        d: i64,
    },
    Cyclotomic {
        n: u64,
    },
    Compositum {
        parts: Vec<FieldSpec>,
    },
}

impl FieldSpec {
    pub fn quadratic(d: i64) -> Self {
        FieldSpec::Quadratic { d }
    }

    pub fn cyclotomic(n: u64) -> Self {
        FieldSpec::Cyclotomic { n }
    }

    pub fn compositum(parts: Vec<FieldSpec>) -> Self {
        FieldSpec::Compositum { parts }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("field spec serializes")
    }

    /// Leaf parts with nested composita expanded.
    pub fn flattened(&self) -> Vec<FieldSpec> {
        match self {
            FieldSpec::Compositum { parts } => parts.iter().flat_map(|p| p.flattened()).collect(),
            other => vec![other.clone()],
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Quadratic { d } => write!(f, "Q(sqrt({d}))"),
            FieldSpec::Cyclotomic { n } => write!(f, "Q(zeta_{n})"),
            FieldSpec::Compositum { parts } => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join("·"))
            }
        }
    }
}

/// Decomposition data `(e, f, g)` of a rational prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplitting {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

impl PrimeSplitting {
    /// Residue field of size `p^f` with `f` odd.
    pub fn odd_degree(&self) -> bool {
        self.f % 2 == 1
    }

    pub fn local_degree(&self) -> u64 {
        self.e * self.f
    }
}

/// A prime of `k` above the rational prime `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdealHandle {
    pub q: u64,
    pub e: u64,
    pub f: u64,
    #[serde(with = "crate::arith::bigjson")]
    pub norm: BigInt,
    pub odd_degree: bool,
    /// For quadratic fields: the form `(q, b, c)` whose ideal
    /// `qZ + ((-b + sqrt D)/2)Z` is this prime.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub form: Option<[i64; 3]>,
}

impl PrimeIdealHandle {
    pub fn from_splitting(s: &PrimeSplitting) -> Self {
        Self {
            q: s.p,
            e: s.e,
            f: s.f,
            norm: pow_big(&BigInt::from(s.p), s.f),
            odd_degree: s.odd_degree(),
            form: None,
        }
    }
}

/// Quadratic subfields split by signature.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSubfields {
    pub imaginary: Vec<i64>,
    pub real: Vec<i64>,
}

impl QuadraticSubfields {
    pub fn all(&self) -> impl Iterator<Item = i64> + '_ {
        self.imaginary.iter().chain(self.real.iter()).copied()
    }

    pub fn contains(&self, d: i64) -> bool {
        self.all().any(|x| x == d)
    }

    pub fn len(&self) -> usize {
        self.imaginary.len() + self.real.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An abelian number field, modelled as `(Z/f)^× / H`.
#[derive(Clone, Debug)]
pub struct NumberField {
    spec: FieldSpec,
    conductor: u64,
    /// Sorted residues of `H`.
    kernel: Vec<u64>,
    /// Residue mod `f` to coset index; `u32::MAX` for non-units.
    coset_of: Vec<u32>,
    /// Least residue of each coset.
    coset_rep: Vec<u64>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.kernel == other.kernel
    }
}

impl Eq for NumberField {}

impl NumberField {
    pub fn rationals() -> Self {
        Self::from_spec(&FieldSpec::Rationals).unwrap()
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        Self::from_spec(&FieldSpec::quadratic(d))
    }

    pub fn cyclotomic(n: u64) -> Result<Self> {
        Self::from_spec(&FieldSpec::cyclotomic(n))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_spec(&FieldSpec::from_json(s)?)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let (modulus, kernel) = match spec {
            FieldSpec::Compositum { parts } => {
                let leaves = spec.flattened();
                if parts.is_empty() {
                    return Err(Error::MalformedSpec("compositum with no parts".into()));
                }
                let fields = leaves
                    .iter()
                    .map(Self::from_spec)
                    .collect::<Result<Vec<_>>>()?;
                for (i, a) in fields.iter().enumerate() {
                    for b in &fields[i + 1..] {
                        if a == b {
                            return Err(Error::MalformedSpec(format!(
                                "compositum parts {} and {} are the same field",
                                a.spec, b.spec
                            )));
                        }
                    }
                }
                compositum_kernel(&fields)?
            }
            leaf => leaf_kernel(leaf)?,
        };
        let (conductor, kernel) = minimize_conductor(modulus, &kernel);
        Ok(Self::build(spec.clone(), conductor, kernel))
    }

    fn build(spec: FieldSpec, conductor: u64, kernel: Vec<u64>) -> Self {
        let m = conductor as usize;
        let mut coset_of = vec![u32::MAX; m.max(1)];
        let mut coset_rep = Vec::new();
        for x in 0..conductor.max(1) {
            if x.gcd(&conductor) != 1 || coset_of[x as usize] != u32::MAX {
                continue;
            }
            let idx = coset_rep.len() as u32;
            coset_rep.push(x);
            for &h in &kernel {
                let y = if conductor == 1 { 0 } else { (x as u128 * h as u128 % conductor as u128) as u64 };
                coset_of[y as usize] = idx;
            }
        }
        Self { spec, conductor, kernel, coset_of, coset_rep }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.coset_rep.len()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Residues of `(Z/f)^×` fixing the field.
    pub fn kernel(&self) -> &[u64] {
        &self.kernel
    }

    /// Primes ramified in the field: the primes dividing the conductor.
    pub fn ram(&self) -> Vec<u64> {
        if self.conductor == 1 {
            return Vec::new();
        }
        prime_divisors_u64(self.conductor)
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.conductor.is_multiple_of(p) && self.conductor > 1
    }

    /// Complex conjugation is `−1 mod f`; the field is real iff it lies in
    /// the kernel.
    pub fn is_totally_real(&self) -> bool {
        self.conductor <= 2 || self.coset(self.conductor - 1) == self.identity()
    }

    fn coset(&self, x: u64) -> u32 {
        if self.conductor == 1 {
            return 0;
        }
        self.coset_of[(x % self.conductor) as usize]
    }

    fn mul_cosets(&self, a: u32, b: u32) -> u32 {
        if self.conductor == 1 {
            return 0;
        }
        let x = self.coset_rep[a as usize] as u128 * self.coset_rep[b as usize] as u128;
        self.coset((x % self.conductor as u128) as u64)
    }

    fn identity(&self) -> u32 {
        self.coset(1)
    }

    fn element_order(&self, g: u32) -> u64 {
        let id = self.identity();
        let mut x = g;
        let mut k = 1;
        while x != id {
            x = self.mul_cosets(x, g);
            k += 1;
        }
        k
    }

    /// `(e, f, g)` for the rational prime `p`.
    pub fn splitting_data(&self, p: u64) -> Result<PrimeSplitting> {
        if !is_prime_u64(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        let n = self.degree() as u64;
        if !self.is_ramified(p) {
            let f = self.element_order(self.coset(p % self.conductor.max(1)));
            return Ok(PrimeSplitting { p, e: 1, f, g: n / f });
        }
        let mut pk = 1u64;
        let mut m = self.conductor;
        while m.is_multiple_of(p) {
            m /= p;
            pk *= p;
        }
        // Inertia: image of residues congruent to 1 mod m.
        let inertia: BTreeSet<u32> = (0..self.conductor)
            .filter(|&x| x % m == 1 % m && x.gcd(&self.conductor) == 1)
            .map(|x| self.coset(x))
            .collect();
        let e = inertia.len() as u64;
        let frob_residue = crt(p % m, m, 1 % pk, pk);
        let frob = self.coset(frob_residue);
        let mut x = frob;
        let mut f = 1;
        while !inertia.contains(&x) {
            x = self.mul_cosets(x, frob);
            f += 1;
        }
        Ok(PrimeSplitting { p, e, f, g: n / (e * f) })
    }

    /// A prime of the field above `q`, with its norm and odd-degree flag.
    pub fn prime_above(&self, q: u64) -> Result<PrimeIdealHandle> {
        Ok(PrimeIdealHandle::from_splitting(&self.splitting_data(q)?))
    }

    /// All quadratic subfields, as fundamental discriminants sorted by `|D|`.
    pub fn quadratic_subfields(&self) -> QuadraticSubfields {
        let mut out = QuadraticSubfields::default();
        if self.conductor == 1 {
            return out;
        }
        let mut divisors: Vec<u64> = (2..=self.conductor)
            .filter(|d| self.conductor.is_multiple_of(*d))
            .collect();
        divisors.sort_unstable();
        for d in divisors {
            for disc in [-(d as i64), d as i64] {
                if !is_fundamental_discriminant(disc) {
                    continue;
                }
                let trivial_on_kernel = self
                    .kernel
                    .iter()
                    .all(|&h| kronecker_i64(disc, h as i64).unwrap_or(0) == 1);
                if trivial_on_kernel {
                    if disc < 0 {
                        out.imaginary.push(disc);
                    } else {
                        out.real.push(disc);
                    }
                }
            }
        }
        out
    }

    /// Primes `q <= bound` with `e = f = 1`.
    pub fn split_completely_primes(&self, bound: u64) -> Vec<u64> {
        primes_in(2, bound)
            .into_iter()
            .filter(|&q| !self.is_ramified(q) && self.coset(q) == self.identity())
            .collect()
    }

    pub fn splits_completely(&self, q: u64) -> bool {
        is_prime_u64(q) && !self.is_ramified(q) && self.coset(q) == self.identity()
    }

    /// Invariant factors `d_1 | d_2 | ...` of `Gal(k/Q)`.
    pub fn galois_invariants(&self) -> Vec<u64> {
        let n = self.degree() as u64;
        if n == 1 {
            return Vec::new();
        }
        let orders: Vec<u64> = (0..n as u32).map(|g| self.element_order(g)).collect();
        // For each prime l, exponents of the cyclic l-parts, largest first.
        let mut parts: Vec<(u64, Vec<u32>)> = Vec::new();
        for l in prime_divisors_u64(n) {
            let mut ranks = Vec::new();
            let mut prev = 1u64;
            let mut lj = l;
            loop {
                let count = orders.iter().filter(|&&o| lj % o == 0).count() as u64;
                if count == prev {
                    break;
                }
                let mut r = 0u32;
                let mut ratio = count / prev;
                while ratio > 1 {
                    ratio /= l;
                    r += 1;
                }
                ranks.push(r);
                prev = count;
                lj *= l;
            }
            // ranks[j] = number of cyclic factors of order >= l^(j+1)
            let max_r = ranks[0] as usize;
            let mut exps = vec![0u32; max_r];
            for r in &ranks {
                for e in exps.iter_mut().take(*r as usize) {
                    *e += 1;
                }
            }
            parts.push((l, exps));
        }
        let count = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut inv: Vec<u64> = (0..count)
            .map(|i| {
                parts
                    .iter()
                    .map(|(l, e)| e.get(i).map_or(1, |&x| l.pow(x)))
                    .product()
            })
            .collect();
        inv.sort_unstable();
        inv
    }

    /// Dimension over F_2 of `Gal(k/Q) / Gal(k/Q)^2`.
    pub fn two_rank(&self) -> u32 {
        self.galois_invariants().iter().filter(|d| *d % 2 == 0).count() as u32
    }

    /// Fundamental discriminant when the field is quadratic.
    pub fn quadratic_discriminant(&self) -> Option<i64> {
        if self.degree() != 2 {
            return None;
        }
        self.quadratic_subfields().all().next()
    }

    /// Compositum with another abelian field.
    pub fn compositum(&self, other: &NumberField) -> Result<NumberField> {
        let mut parts = self.spec.flattened();
        parts.retain(|p| !matches!(p, FieldSpec::Rationals));
        for p in other.spec.flattened() {
            if matches!(p, FieldSpec::Rationals) {
                continue;
            }
            let pf = Self::from_spec(&p)?;
            let dup = parts
                .iter()
                .any(|q| Self::from_spec(q).map(|qf| qf == pf).unwrap_or(false));
            if !dup {
                parts.push(p);
            }
        }
        match parts.len() {
            0 => Ok(Self::rationals()),
            1 => Self::from_spec(&parts[0]),
            _ => Self::from_spec(&FieldSpec::compositum(parts)),
        }
    }

    /// Whether `other` is a subfield.
    pub fn contains(&self, other: &NumberField) -> bool {
        if !self.conductor.is_multiple_of(other.conductor) {
            return false;
        }
        self.kernel
            .iter()
            .all(|&h| other.coset(h % other.conductor.max(1)) == other.identity())
    }
}

fn units(m: u64) -> impl Iterator<Item = u64> {
    (0..m.max(1)).filter(move |x| x.gcd(&m) == 1)
}

fn leaf_kernel(spec: &FieldSpec) -> Result<(u64, Vec<u64>)> {
    match *spec {
        FieldSpec::Rationals => Ok((1, vec![0])),
        FieldSpec::Quadratic { d } => {
            if !is_fundamental_discriminant(d) {
                return Err(Error::NonFundamental(d));
            }
            let m = d.unsigned_abs();
            check_modulus(m)?;
            let ker = units(m)
                .filter(|&x| kronecker_i64(d, x as i64).unwrap_or(0) == 1)
                .collect();
            Ok((m, ker))
        }
        FieldSpec::Cyclotomic { n } => {
            if n < 3 || n % 4 == 2 {
                return Err(Error::MalformedSpec(format!(
                    "cyclotomic index must satisfy n >= 3 and n != 2 mod 4, got {n}"
                )));
            }
            check_modulus(n)?;
            Ok((n, vec![1]))
        }
        FieldSpec::Compositum { .. } => unreachable!("composita are flattened first"),
    }
}

fn check_modulus(m: u64) -> Result<()> {
    if m > MAX_CONDUCTOR {
        return Err(Error::Unsupported(format!(
            "conductor {m} exceeds the supported bound {MAX_CONDUCTOR}"
        )));
    }
    Ok(())
}

fn compositum_kernel(fields: &[NumberField]) -> Result<(u64, Vec<u64>)> {
    let l = fields.iter().fold(1u64, |acc, f| acc.lcm(&f.conductor));
    check_modulus(l)?;
    let ker = units(l)
        .filter(|&x| {
            fields
                .iter()
                .all(|f| f.conductor == 1 || f.kernel.binary_search(&(x % f.conductor)).is_ok())
        })
        .collect();
    Ok((l, ker))
}

/// Smallest modulus `c | m` such that `H` contains every unit `≡ 1 mod c`,
/// together with the image of `H` mod `c`.
fn minimize_conductor(m: u64, kernel: &[u64]) -> (u64, Vec<u64>) {
    let in_kernel = |x: u64| kernel.binary_search(&x).is_ok();
    let mut c = m;
    for p in prime_divisors_u64(m) {
        while c.is_multiple_of(p) {
            let smaller = c / p;
            let ok = units(m).filter(|x| x % smaller == 1 % smaller).all(in_kernel);
            if !ok {
                break;
            }
            c = smaller;
        }
    }
    let mut image: Vec<u64> = kernel.iter().map(|x| if c == 1 { 0 } else { x % c }).collect();
    image.sort_unstable();
    image.dedup();
    (c, image)
}

/// `x ≡ a mod m`, `x ≡ b mod n` for coprime `m`, `n`.
fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    let mn = m * n;
    (0..n)
        .map(|k| a + k * m)
        .find(|x| x % n == b % n)
        .map(|x| x % mn.max(1))
        .expect("coprime moduli")
}

/// `φ(f) / |H|`, exposed for cross-checks.
pub fn degree_from_conductor(f: &NumberField) -> u64 {
    euler_phi(f.conductor) / f.kernel.len() as u64
}
