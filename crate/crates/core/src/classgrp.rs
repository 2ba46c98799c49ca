//! Binary quadratic forms and class groups of quadratic fields.
//!
//! Forms `(a, b, c)` of discriminant `D = b² − 4ac` model ideal classes: the
//! form with `a > 0` corresponds to the ideal `aZ + ((−b + √D)/2)Z`. For
//! `D < 0` reduced forms are unique per class. For `D > 0` reduced forms fall
//! into cycles under the reduction operator `ρ`, one cycle per narrow class.
//! The ordinary class group is the narrow group modulo the class of
//! `(−1, b₀, −c₀)`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{
    exact_sqrt, is_fundamental_discriminant, isqrt_u64, kronecker_i64, pow_big, primes_in,
    IntPolynomial,
};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, FieldSpec, GeneratorArith, NumberField, PrimeIdealHandle};

/// Largest `v` tried when searching for a principal generator.
const ALPHA_SEARCH_LIMIT: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// Form with given `a`, `b` and discriminant `d`.
    fn from_ab(a: i128, b: i128, d: i128) -> Self {
        let c = (b * b - d) / (4 * a);
        debug_assert_eq!(b * b - 4 * a * c, d);
        Self::new(a as i64, b as i64, c as i64)
    }

    pub fn principal(d: i64) -> Self {
        let b = d.rem_euclid(2);
        Self::new(1, b, (b * b - d) / 4)
    }

    pub fn discriminant(&self) -> i64 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        (b * b - 4 * a * c) as i64
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d < 0 {
            let (a, b, c) = (self.a, self.b, self.c);
            a > 0 && b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
        } else {
            let (a, b, d) = (self.a.abs() as i128, self.b as i128, d as i128);
            // 0 < b < √D and √D − b < 2|a| < √D + b
            b > 0 && b * b < d && (2 * a + b) * (2 * a + b) > d && (2 * a - b < 0 || (2 * a - b) * (2 * a - b) < d)
        }
    }

    pub fn reduce(&self) -> Self {
        if self.discriminant() < 0 {
            reduce_definite(*self)
        } else {
            reduce_indefinite(*self)
        }
    }

    /// One step of the indefinite reduction operator.
    pub fn rho(&self) -> Self {
        let d = self.discriminant() as i128;
        let s = isqrt_u64(d as u64) as i128;
        let c = self.c as i128;
        let m = 2 * c.abs();
        let target = (-(self.b as i128)).rem_euclid(m);
        let b = if c * c > d {
            // -|c| < b <= |c|
            let mut b = target;
            if b > c.abs() {
                b -= m;
            }
            b
        } else {
            // √D − 2|c| < b < √D
            s - (s - target).rem_euclid(m)
        };
        Self::from_ab(c, b, d)
    }
}

fn reduce_definite(f: QuadForm) -> QuadForm {
    let d = f.discriminant() as i128;
    let (mut a, mut b) = (f.a as i128, f.b as i128);
    loop {
        // normalize b into (−a, a]
        let two_a = 2 * a;
        let k = Integer::div_floor(&(a - b), &two_a);
        b += two_a * k;
        let c = (b * b - d) / (4 * a);
        if a > c {
            a = c;
            b = -b;
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return QuadForm::from_ab(a, b, d);
    }
}

fn reduce_indefinite(mut f: QuadForm) -> QuadForm {
    while !f.is_reduced() {
        f = f.rho();
    }
    f
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Dirichlet composition without reduction.
pub fn compose_forms(f1: &QuadForm, f2: &QuadForm) -> Result<QuadForm> {
    let d = f1.discriminant();
    if d != f2.discriminant() {
        return Err(Error::DiscriminantMismatch(d, f2.discriminant()));
    }
    let d = d as i128;
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2) = (f2.a as i128, f2.b as i128);
    let s = (b1 + b2) / 2;
    let (g1, x1, y1) = egcd(a1, a2);
    let (e, x2, y2) = egcd(g1, s);
    let (u, v, w) = (x2 * x1, x2 * y1, y2);
    let a = a1 * a2 / (e * e);
    let m = 2 * a.abs();
    let b = ((u * a1 * b2 + v * a2 * b1 + w * ((b1 * b2 + d) / 2)) / e).rem_euclid(m);
    Ok(QuadForm::from_ab(a, b, d))
}

/// Reduced composite of two forms of the same discriminant.
pub fn compose_reduced(f1: &QuadForm, f2: &QuadForm) -> Result<QuadForm> {
    Ok(compose_forms(f1, f2)?.reduce())
}

fn check_fundamental(d: i64) -> Result<()> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NonFundamental(d));
    }
    Ok(())
}

/// All reduced primitive forms of discriminant `d < 0`, in increasing `(a, b)`.
fn reduced_definite_forms(d: i64) -> Vec<QuadForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm::new(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// All reduced primitive forms of discriminant `d > 0`.
fn reduced_indefinite_forms(d: i64) -> Vec<QuadForm> {
    let s = isqrt_u64(d as u64) as i64;
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - d).rem_euclid(2) != 0 || b * b >= d {
            continue;
        }
        let m = (d - b * b) / 4;
        for a in 1..=m {
            if m % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let f = QuadForm::new(sa, b, -m / sa);
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
        }
    }
    out.sort();
    out
}

/// Class number and reduced representatives for a fundamental `d < 0`.
pub fn class_group(d: i64) -> Result<(u64, Vec<QuadForm>)> {
    check_fundamental(d)?;
    if d > 0 {
        return Err(Error::Domain("class_group takes a negative discriminant".into()));
    }
    let forms = reduced_definite_forms(d);
    Ok((forms.len() as u64, forms))
}

/// The narrow form class group of a fundamental discriminant.
#[derive(Clone, Debug)]
pub struct FormClassGroup {
    d: i64,
    reps: Vec<QuadForm>,
    lookup: HashMap<QuadForm, usize>,
    minus: usize,
}

impl FormClassGroup {
    pub fn new(d: i64) -> Result<Self> {
        check_fundamental(d)?;
        if d < 0 {
            let reps = reduced_definite_forms(d);
            let lookup = reps.iter().enumerate().map(|(i, f)| (*f, i)).collect();
            return Ok(Self { d, reps, lookup, minus: 0 });
        }
        let mut forms = reduced_indefinite_forms(d);
        let start = QuadForm::principal(d).reduce();
        forms.retain(|f| *f != start);
        forms.insert(0, start);
        let mut lookup = HashMap::new();
        let mut reps = Vec::new();
        for f in forms {
            if lookup.contains_key(&f) {
                continue;
            }
            let id = reps.len();
            reps.push(f);
            let mut g = f;
            loop {
                lookup.insert(g, id);
                g = g.rho();
                if g == f {
                    break;
                }
            }
        }
        let mut grp = Self { d, reps, lookup, minus: 0 };
        let p = QuadForm::principal(d);
        grp.minus = grp.class_of(&QuadForm::from_ab(-1, p.b as i128, d as i128))?;
        Ok(grp)
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn narrow_order(&self) -> u64 {
        self.reps.len() as u64
    }

    /// Order of the ordinary class group.
    pub fn order(&self) -> u64 {
        if self.minus == 0 {
            self.narrow_order()
        } else {
            self.narrow_order() / 2
        }
    }

    pub fn representatives(&self) -> &[QuadForm] {
        &self.reps
    }

    /// Narrow class of `(−1, b₀, −c₀)`; `0` when it is principal.
    pub fn minus_class(&self) -> usize {
        self.minus
    }

    pub fn class_of(&self, f: &QuadForm) -> Result<usize> {
        if f.discriminant() != self.d {
            return Err(Error::DiscriminantMismatch(self.d, f.discriminant()));
        }
        let r = f.reduce();
        self.lookup
            .get(&r)
            .copied()
            .ok_or_else(|| Error::Domain(format!("form {r:?} is not primitive")))
    }

    pub fn compose(&self, i: usize, j: usize) -> usize {
        let f = compose_forms(&self.reps[i], &self.reps[j]).expect("same discriminant");
        self.class_of(&f).expect("composite of primitive forms is primitive")
    }

    /// Subgroup of the narrow group generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.compose(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    /// Whether the classes `gens` generate the ordinary class group.
    pub fn generates(&self, gens: &[usize]) -> bool {
        let mut all = gens.to_vec();
        all.push(self.minus);
        self.subgroup(&all).len() as u64 == self.narrow_order()
    }

    /// Whether every ordinary class has order dividing 2.
    pub fn is_elementary_two_group(&self) -> bool {
        (0..self.reps.len()).all(|i| {
            let sq = self.compose(i, i);
            sq == 0 || sq == self.minus
        })
    }
}

/// Ordinary class number of a quadratic field.
pub fn class_number(d: i64) -> Result<u64> {
    Ok(FormClassGroup::new(d)?.order())
}

/// Fundamental unit `ε = (t + w√D)/2` of the real quadratic field of
/// discriminant `d`, from the continued fraction of its integral generator.
pub fn fundamental_unit(d: i64) -> Result<(BigInt, BigInt)> {
    check_fundamental(d)?;
    if d < 0 {
        return Err(Error::Domain("imaginary fields have finite unit groups".into()));
    }
    let odd = d.rem_euclid(4) == 1;
    let dd: i64 = if odd { d } else { d / 4 };
    let s = isqrt_u64(dd as u64) as i64;
    let (mut p, mut q): (i64, i64) = if odd { (1, 2) } else { (0, 1) };
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let four = BigInt::from(4);
    let big_d = BigInt::from(d);
    loop {
        let a = if q > 0 { Integer::div_floor(&(p + s), &q) } else { -(Integer::div_floor(&(p + s), &-q) + 1) };
        let h = &h1 * a + &h2;
        let k = &k1 * a + &k2;
        let t = if odd { BigInt::from(2) * &h - &k } else { BigInt::from(2) * &h };
        let norm4 = &t * &t - &big_d * &k * &k;
        if k.is_positive() && (norm4 == four || norm4 == -&four) {
            return Ok((t, k));
        }
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
        p = a * q - p;
        q = (dd - p * p) / q;
    }
}

/// Primitive forms `(q, ±b, c)` for a prime `q` split in `Q(√d)`, with
/// `0 < b <= q`.
pub fn prime_forms(d: i64, q: u64) -> Result<[QuadForm; 2]> {
    if kronecker_i64(d, q as i64)? != 1 {
        return Err(Error::Domain(format!("{q} does not split in Q(sqrt({d}))")));
    }
    let q = q as i64;
    let b = (0..=q)
        .find(|&b| (b - d).rem_euclid(2) == 0 && (b * b - d).rem_euclid(4 * q) == 0)
        .expect("split prime has a square root of d");
    let c = (b * b - d) / (4 * q);
    Ok([QuadForm::new(q, b, c), QuadForm::new(q, -b, c)])
}

/// Canonical generator of `𝔮^h` for a split prime `q`: the element
/// `(u + v√D)/2` with `u, v >= 0`, `|u² − Dv²| = 4q^h`, least in `(v, u)`,
/// that lies in the `h`-th power of one prime above `q`. Returns `(u, v)`
/// and the form of that prime.
pub fn canonical_alpha(d: i64, q: u64, h: u64) -> Result<(BigInt, BigInt, QuadForm)> {
    let [fp, _] = prime_forms(d, q)?;
    let target = BigInt::from(4) * pow_big(&BigInt::from(q), h);
    let big_d = BigInt::from(d);
    let two_q = BigInt::from(2 * q);
    let b = BigInt::from(fp.b);
    let v_max: u64 = if d < 0 {
        (&target / BigInt::from(-d)).sqrt().to_u64().unwrap_or(u64::MAX)
    } else {
        let (t, w) = fundamental_unit(d)?;
        let eps = (t.to_f64().unwrap_or(f64::INFINITY) + w.to_f64().unwrap_or(f64::INFINITY) * (d as f64).sqrt()) / 2.0;
        let qh = (q as f64).powf(h as f64);
        let bound = (eps + 1.0) * (qh / d as f64).sqrt();
        if !bound.is_finite() || bound > ALPHA_SEARCH_LIMIT as f64 {
            return Err(Error::SearchExhausted(format!(
                "generator search for q={q}, h={h} over D={d} needs v up to {bound:e}"
            )));
        }
        bound as u64 + 1
    };
    for v in 0..=v_max {
        let v = BigInt::from(v);
        let dv2 = &big_d * &v * &v;
        let mut us: Vec<BigInt> = [&dv2 + &target, &dv2 - &target]
            .iter()
            .filter_map(exact_sqrt)
            .filter(|u| (u - &v * &big_d).is_even())
            .collect();
        us.sort();
        us.dedup();
        for u in us {
            let in_p = (&u + &v * &b).mod_floor(&two_q).is_zero();
            let in_conj = (&u - &v * &b).mod_floor(&two_q).is_zero();
            match (in_p, in_conj) {
                (true, false) => return Ok((u, v, fp)),
                (false, true) => {
                    return Ok((u, v, QuadForm::new(fp.a, -fp.b, fp.c)));
                }
                _ => {}
            }
        }
    }
    Err(Error::SearchExhausted(format!("no generator of norm {q}^{h} in Q(sqrt({d}))")))
}

/// Integral generator `ω` of a quadratic order: `x² − tx + (t − D)/4`.
pub fn quadratic_generator(d: i64) -> IntPolynomial {
    let t = d.rem_euclid(2);
    IntPolynomial::from_i64(&[(t - d) / 4, -t, 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Ingested,
}

fn default_provenance() -> Provenance {
    Provenance::Ingested
}

fn one() -> BigInt {
    BigInt::one()
}

fn is_one(x: &BigInt) -> bool {
    x.is_one()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorPrime {
    pub q: u64,
    pub f: u64,
    pub form_or_ideal: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub q: u64,
    #[serde(rename = "minpoly_coeffs_in_field_generator", alias = "coeffs")]
    pub coeffs: IntPolynomial,
    #[serde(default = "one", skip_serializing_if = "is_one", with = "crate::arith::bigjson")]
    pub den: BigInt,
    /// All Galois conjugates, the identity first, over the same denominator.
    #[serde(default)]
    pub conjugates: Vec<IntPolynomial>,
}

/// `√D` for a quadratic subfield, as an element of the field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtEntry {
    #[serde(rename = "D")]
    pub d: i64,
    pub coeffs: IntPolynomial,
    #[serde(default = "one", skip_serializing_if = "is_one", with = "crate::arith::bigjson")]
    pub den: BigInt,
}

/// Class number, generating primes and principal generators of their
/// `h`-th powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupData {
    pub field_spec: FieldSpec,
    pub h: u64,
    #[serde(rename = "S")]
    pub s: Vec<GeneratorPrime>,
    pub alpha: Vec<AlphaEntry>,
    pub generator_minpoly: IntPolynomial,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sqrt: Vec<SqrtEntry>,
    #[serde(default = "default_provenance")]
    pub provenance: Provenance,
}

impl ClassGroupData {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::ClassDataRejected(format!("schema: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("class data serializes")
    }

    pub fn arith(&self) -> Result<GeneratorArith> {
        GeneratorArith::new(self.generator_minpoly.clone())
    }

    pub fn alpha_element(&self, i: usize) -> FieldElement {
        let a = &self.alpha[i];
        FieldElement { num: a.coeffs.clone(), den: a.den.clone() }
    }

    pub fn conjugate_elements(&self, i: usize) -> Vec<FieldElement> {
        let a = &self.alpha[i];
        a.conjugates
            .iter()
            .map(|c| FieldElement { num: c.clone(), den: a.den.clone() })
            .collect()
    }

    /// `√D` inside the field, when recorded.
    pub fn sqrt_of(&self, d: i64) -> Option<FieldElement> {
        self.sqrt
            .iter()
            .find(|e| e.d == d)
            .map(|e| FieldElement { num: e.coeffs.clone(), den: e.den.clone() })
    }

    /// Rational primes under `S`, ascending and distinct.
    pub fn s_primes(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self.s.iter().map(|p| p.q).collect();
        set.into_iter().collect()
    }

    pub fn prime_handles(&self) -> Vec<PrimeIdealHandle> {
        self.s
            .iter()
            .map(|p| {
                let form = serde_json::from_value::<[i64; 3]>(p.form_or_ideal.clone()).ok();
                PrimeIdealHandle {
                    q: p.q,
                    e: 1,
                    f: p.f,
                    norm: pow_big(&BigInt::from(p.q), p.f),
                    odd_degree: p.f % 2 == 1,
                    form,
                }
            })
            .collect()
    }
}

/// Conjugation `x + yθ ↦ (x − py) − yθ` for `θ² + pθ + r = 0`.
fn quadratic_conjugate(g: &IntPolynomial, a: &IntPolynomial) -> IntPolynomial {
    let p = g.coeff(1);
    let (x, y) = (a.coeff(0), a.coeff(1));
    IntPolynomial::new(vec![&x - &p * &y, -y])
}

/// `√D` in terms of `θ` for `θ² + pθ + r = 0` with `p² − 4r = D·m²`.
fn quadratic_sqrt(g: &IntPolynomial, d: i64) -> Option<SqrtEntry> {
    let p = g.coeff(1);
    let disc = &p * &p - BigInt::from(4) * g.coeff(0);
    let ratio = disc.div_rem(&BigInt::from(d));
    if !ratio.1.is_zero() {
        return None;
    }
    let m = exact_sqrt(&ratio.0)?;
    // √disc = 2θ + p, so √D = (2θ + p)/m
    let el = FieldElement::new(IntPolynomial::new(vec![p, BigInt::from(2)]), m).ok()?;
    Some(SqrtEntry { d, coeffs: el.num, den: el.den })
}

fn field_degree_check(k: &NumberField) -> Result<i64> {
    match k.degree() {
        1 => Ok(1),
        2 => Ok(k.quadratic_discriminant().expect("quadratic field has a discriminant")),
        n => Err(Error::Unsupported(format!(
            "native class groups are limited to degree <= 2; {} has degree {n}, supply class data instead",
            k.spec()
        ))),
    }
}

/// Class number, greedily chosen generating primes (scanned in increasing
/// order among split primes up to `search_bound`) and canonical generators.
pub fn generating_primes(k: &NumberField, search_bound: u64) -> Result<ClassGroupData> {
    let d = field_degree_check(k)?;
    if d == 1 {
        let q = *primes_in(2, search_bound)
            .first()
            .ok_or_else(|| Error::SearchExhausted("no prime below the bound".into()))?;
        let alpha = IntPolynomial::from_i64(&[q as i64]);
        return Ok(ClassGroupData {
            field_spec: k.spec().clone(),
            h: 1,
            s: vec![GeneratorPrime { q, f: 1, form_or_ideal: Value::from(vec![q]) }],
            alpha: vec![AlphaEntry { q, coeffs: alpha.clone(), den: one(), conjugates: vec![alpha] }],
            generator_minpoly: IntPolynomial::x(),
            sqrt: Vec::new(),
            provenance: Provenance::Computed,
        });
    }
    let grp = FormClassGroup::new(d)?;
    let h = grp.order();
    let g = quadratic_generator(d);
    let t = d.rem_euclid(2);
    let mut s = Vec::new();
    let mut alpha = Vec::new();
    let mut classes = Vec::new();
    for q in primes_in(2, search_bound) {
        if kronecker_i64(d, q as i64)? != 1 {
            continue;
        }
        let (u, v, form) = canonical_alpha(d, q, h)?;
        let class = grp.class_of(&form)?;
        let mut with_minus = classes.clone();
        with_minus.push(grp.minus_class());
        if !s.is_empty() && grp.subgroup(&with_minus).contains(&class) {
            continue;
        }
        // (u + v√D)/2 = (u − vt)/2 + vω
        let x = (&u - &v * t) / BigInt::from(2);
        let coeffs = IntPolynomial::new(vec![x, v]);
        let conj = quadratic_conjugate(&g, &coeffs);
        s.push(GeneratorPrime { q, f: 1, form_or_ideal: Value::from(form.as_array().to_vec()) });
        alpha.push(AlphaEntry { q, coeffs: coeffs.clone(), den: one(), conjugates: vec![coeffs, conj] });
        classes.push(class);
        if grp.generates(&classes) {
            return Ok(ClassGroupData {
                field_spec: k.spec().clone(),
                h,
                s,
                alpha,
                sqrt: vec![quadratic_sqrt(&g, d).expect("generator discriminant is D")],
                generator_minpoly: g,
                provenance: Provenance::Computed,
            });
        }
    }
    Err(Error::SearchExhausted(format!(
        "split primes up to {search_bound} do not generate the class group of {}",
        k.spec()
    )))
}

fn reject(msg: impl Into<String>) -> Error {
    Error::ClassDataRejected(msg.into())
}

/// Validate externally supplied class data against `k`, filling in
/// conjugates and square roots that are determined by the data for fields
/// of degree <= 2.
pub fn ingest_class_data(k: &NumberField, payload: &str) -> Result<ClassGroupData> {
    let mut data = ClassGroupData::from_json(payload)?;
    data.provenance = Provenance::Ingested;
    let declared = NumberField::from_spec(&data.field_spec)
        .map_err(|e| reject(format!("field_spec: {e}")))?;
    if declared != *k {
        return Err(reject(format!("field_spec {} does not describe {}", data.field_spec, k.spec())));
    }
    let n = k.degree();
    let arith = data.arith().map_err(|e| reject(e.to_string()))?;
    if arith.degree() != n {
        return Err(reject(format!(
            "generator_minpoly has degree {} but the field has degree {n}",
            arith.degree()
        )));
    }
    if data.h == 0 {
        return Err(reject("h must be positive"));
    }
    if data.s.is_empty() {
        return Err(reject("S is empty"));
    }
    if data.alpha.len() != data.s.len() || data.alpha.iter().zip(&data.s).any(|(a, p)| a.q != p.q) {
        return Err(reject("alpha entries must match S one for one, in order"));
    }
    let quad_d = match n {
        2 => {
            let d = k.quadratic_discriminant().expect("quadratic");
            if quadratic_sqrt(&data.generator_minpoly, d).is_none() {
                return Err(reject(format!("generator_minpoly does not generate Q(sqrt({d}))")));
            }
            Some(d)
        }
        _ => None,
    };

    for p in &data.s {
        if p.f != 1 || !k.splits_completely(p.q) {
            return Err(reject(format!(
                "S contains a prime above {} which does not split completely",
                p.q
            )));
        }
    }

    for a in &mut data.alpha {
        if a.conjugates.is_empty() {
            match n {
                1 => a.conjugates = vec![a.coeffs.clone()],
                2 => a.conjugates = vec![a.coeffs.clone(), quadratic_conjugate(&data.generator_minpoly, &a.coeffs)],
                _ => {
                    return Err(reject(format!(
                        "alpha for q={} lacks conjugates, which fields of degree > 2 must supply",
                        a.q
                    )))
                }
            }
        }
        a.coeffs = a.coeffs.rem_monic(&data.generator_minpoly);
    }
    if let Some(d) = quad_d {
        if data.sqrt.iter().all(|e| e.d != d) {
            data.sqrt.push(quadratic_sqrt(&data.generator_minpoly, d).expect("checked above"));
        }
    }

    for i in 0..data.alpha.len() {
        let q = data.alpha[i].q;
        let alpha = data.alpha_element(i);
        let norm = arith.norm(&alpha)?;
        let expect = pow_big(&BigInt::from(q), data.h);
        if norm.abs() != expect {
            return Err(reject(format!("|Norm(alpha)| = {} but N(q)^h = {q}^{}", norm.abs(), data.h)));
        }
        let conj = data.conjugate_elements(i);
        if conj.len() != n {
            return Err(reject(format!("alpha for q={q} has {} conjugates, expected {n}", conj.len())));
        }
        if arith.reduce(&conj[0]) != arith.reduce(&alpha) {
            return Err(reject(format!("first conjugate of alpha for q={q} is not alpha")));
        }
        let cp = arith.charpoly_values(&alpha)?;
        for c in &conj {
            if arith.charpoly_values(c)? != cp {
                return Err(reject(format!("a listed conjugate of alpha for q={q} is not conjugate")));
            }
        }
        let prod = conj.iter().fold(FieldElement::rational(one()), |acc, c| arith.mul(&acc, c));
        if prod != FieldElement::rational(norm) {
            return Err(reject(format!("conjugates of alpha for q={q} do not multiply to its norm")));
        }
    }

    let subfields = k.quadratic_subfields();
    for e in &data.sqrt {
        if !subfields.contains(e.d) {
            return Err(reject(format!("sqrt entry for D={} is not a subfield", e.d)));
        }
        let r = FieldElement { num: e.coeffs.clone(), den: e.den.clone() };
        if arith.mul(&r, &r) != FieldElement::rational(BigInt::from(e.d)) {
            return Err(reject(format!("sqrt entry for D={} does not square to D", e.d)));
        }
    }

    if let Some(d) = quad_d {
        verify_quadratic(&data, d)?;
    }
    Ok(data)
}

/// Class number, generation and ideal membership checks available for
/// quadratic fields.
fn verify_quadratic(data: &ClassGroupData, d: i64) -> Result<()> {
    let grp = FormClassGroup::new(d)?;
    if grp.order() != data.h {
        return Err(reject(format!("h = {} but the class number is {}", data.h, grp.order())));
    }
    let g = &data.generator_minpoly;
    let pc = g.coeff(1);
    let disc = &pc * &pc - BigInt::from(4) * g.coeff(0);
    let m = exact_sqrt(&(disc / d)).expect("checked by caller");
    let mut classes = Vec::new();
    for (i, p) in data.s.iter().enumerate() {
        let form: [i64; 3] = serde_json::from_value(p.form_or_ideal.clone())
            .map_err(|_| reject(format!("form_or_ideal for q={} must be [a, b, c]", p.q)))?;
        let form = QuadForm::new(form[0], form[1], form[2]);
        if form.a != p.q as i64 || form.discriminant() != d {
            return Err(reject(format!("form {:?} is not a prime form of norm {} and discriminant {d}", form, p.q)));
        }
        // alpha = (x + yθ)/den with θ = (−p + m√D)/2
        let a = &data.alpha[i];
        let (x, y) = (a.coeffs.coeff(0), a.coeffs.coeff(1));
        let u_num = BigInt::from(2) * &x - &pc * &y;
        let v_num = &y * &m;
        if !(&u_num % &a.den).is_zero() || !(&v_num % &a.den).is_zero() {
            return Err(reject(format!("alpha for q={} is not an algebraic integer", p.q)));
        }
        let (u, v) = (&u_num / &a.den, &v_num / &a.den);
        if !(&u - &v * d).is_even() {
            return Err(reject(format!("alpha for q={} is not an algebraic integer", p.q)));
        }
        let two_q = BigInt::from(2 * p.q);
        let in_p = (&u + &v * form.b).mod_floor(&two_q).is_zero();
        let in_conj = (&u - &v * form.b).mod_floor(&two_q).is_zero();
        if !(in_p && !in_conj) {
            return Err(reject(format!("alpha for q={} does not generate the h-th power of the listed prime", p.q)));
        }
        classes.push(grp.class_of(&form)?);
    }
    if !grp.generates(&classes) {
        return Err(reject("the classes of S do not generate the class group"));
    }
    Ok(())
}
