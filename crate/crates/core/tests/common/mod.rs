//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Number of reduced primitive positive definite forms of discriminant `d`.
pub fn reduced_form_count(d: i64) -> u64 {
    assert!(d < 0);
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a, b.abs()), c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn is_fundamental(d: i64) -> bool {
    let squarefree = |n: i64| (2..).take_while(|p| p * p <= n.abs()).all(|p| n % (p * p) != 0);
    match d.rem_euclid(4) {
        1 => d != 1 && squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

pub fn prime_support(n: &BigInt) -> BTreeSet<BigUint> {
    let m = n.abs().to_biguint().expect("non-negative");
    num_prime::nt_funcs::factorize(m).into_keys().collect()
}

/// `x + yθ` with `θ² = −c1·θ − c0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadEl {
    pub x: BigRational,
    pub y: BigRational,
}

#[derive(Clone, Debug)]
pub struct QuadRing {
    pub c1: BigInt,
    pub c0: BigInt,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadRing {
    /// `Z[θ]` is the maximal order of `Q(√d)`.
    pub fn for_discriminant(d: i64) -> Self {
        if d.rem_euclid(4) == 1 {
            Self { c1: BigInt::from(-1), c0: BigInt::from((1 - d) / 4) }
        } else {
            Self { c1: BigInt::zero(), c0: BigInt::from(-d / 4) }
        }
    }

    pub fn el(&self, x: i64, y: i64) -> QuadEl {
        QuadEl { x: rat(x), y: rat(y) }
    }

    pub fn one(&self) -> QuadEl {
        self.el(1, 0)
    }

    pub fn add(&self, a: &QuadEl, b: &QuadEl) -> QuadEl {
        QuadEl { x: &a.x + &b.x, y: &a.y + &b.y }
    }

    pub fn neg(&self, a: &QuadEl) -> QuadEl {
        QuadEl { x: -&a.x, y: -&a.y }
    }

    pub fn sub(&self, a: &QuadEl, b: &QuadEl) -> QuadEl {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &QuadEl, b: &QuadEl) -> QuadEl {
        let c1 = BigRational::from_integer(self.c1.clone());
        let c0 = BigRational::from_integer(self.c0.clone());
        let yy = &a.y * &b.y;
        QuadEl {
            x: &a.x * &b.x - &yy * &c0,
            y: &a.x * &b.y + &a.y * &b.x - &yy * &c1,
        }
    }

    pub fn pow(&self, a: &QuadEl, e: u64) -> QuadEl {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `θ ↦ −c1 − θ`.
    pub fn conj(&self, a: &QuadEl) -> QuadEl {
        let c1 = BigRational::from_integer(self.c1.clone());
        QuadEl { x: &a.x - &a.y * c1, y: -&a.y }
    }

    /// Determinant of multiplication by `a` on the basis `1, θ`.
    pub fn norm(&self, a: &QuadEl) -> BigRational {
        let t = self.mul(a, &self.el(0, 1));
        det(vec![vec![a.x.clone(), t.x.clone()], vec![a.y.clone(), t.y.clone()]])
    }

    /// Norm to `Q` of `u + v·Y` in `K[Y]/(Y² + aY + n)`, from the 4×4
    /// multiplication matrix on `1, θ, Y, θY`.
    pub fn relative_algebra_norm(&self, u: &QuadEl, v: &QuadEl, a: i64, n: i64) -> BigRational {
        let theta = self.el(0, 1);
        // (u + vY)·Y = −n·v + (u − a·v)·Y
        let times_y = |p: &QuadEl, q: &QuadEl| {
            (
                self.mul(&self.el(-n, 0), q),
                self.sub(p, &self.mul(&self.el(a, 0), q)),
            )
        };
        let c0 = (u.clone(), v.clone());
        let c1 = (self.mul(u, &theta), self.mul(v, &theta));
        let c2 = times_y(&c0.0, &c0.1);
        let c3 = times_y(&c1.0, &c1.1);
        let cols = [c0, c1, c2, c3];
        let m = (0..4)
            .map(|row| {
                cols.iter()
                    .map(|(p, q)| match row {
                        0 => p.x.clone(),
                        1 => p.y.clone(),
                        2 => q.x.clone(),
                        _ => q.y.clone(),
                    })
                    .collect()
            })
            .collect();
        det(m)
    }

    /// Integral roots of `Y² + aY + n` in `Z[θ]`, by search.
    pub fn integral_roots(&self, a: i64, n: i64, box_size: i64) -> Vec<QuadEl> {
        let mut out = Vec::new();
        for x in -box_size..=box_size {
            for y in -box_size..=box_size {
                let b = self.el(x, y);
                let v = self.add(&self.add(&self.mul(&b, &b), &self.mul(&self.el(a, 0), &b)), &self.el(n, 0));
                if v.x.is_zero() && v.y.is_zero() {
                    out.push(b);
                }
            }
        }
        out
    }
}

/// Gaussian elimination over `Q`.
pub fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut acc = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        let p = m[col][col].clone();
        acc *= &p;
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let f = &row[col] / &p;
            if f.is_zero() {
                continue;
            }
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * y;
            }
        }
    }
    acc
}

const EXPONENTS: [u64; 5] = [0, 8, 12, 16, 24];

/// Naive recomputation of every norm value for a quadratic field `Q(√d)`
/// with class number `h`, generating prime `q` and `α` with `(α) = 𝔮^h`
/// given as `x + yθ`. Keyed by `(ε, a)`, values sorted.
pub fn quadratic_values(d: i64, h: u64, q: u64, alpha: (i64, i64)) -> BTreeMap<(Vec<u64>, i64), Vec<BigInt>> {
    let k = QuadRing::for_discriminant(d);
    let alpha = k.el(alpha.0, alpha.1);
    assert_eq!(k.norm(&alpha).abs(), BigRational::from_integer(BigInt::from(q).pow(h as u32)));
    let alpha_bar = k.conj(&alpha);
    let m = 24 * h;
    let n = q as i64;
    let bound = (4.0 * q as f64).sqrt() as i64;
    // Per a: integral roots in K, or Y^M in K[Y]/(Y² + aY + n) when there are none.
    let per_a: Vec<(i64, Vec<QuadEl>, (QuadEl, QuadEl))> = (-bound..=bound)
        .filter(|a| a * a <= 4 * n)
        .map(|a| {
            let roots = k.integral_roots(a, n, 4 * bound + 4);
            let (mut u, mut v) = (k.one(), k.el(0, 0));
            for _ in 0..m {
                let nu = k.mul(&k.el(-n, 0), &v);
                let nv = k.sub(&u, &k.mul(&k.el(a, 0), &v));
                u = nu;
                v = nv;
            }
            (a, roots, (u, v))
        })
        .collect();
    let mut out = BTreeMap::new();
    for &e1 in &EXPONENTS {
        for &e2 in &EXPONENTS {
            let gamma = k.mul(&k.pow(&alpha, e1), &k.pow(&alpha_bar, e2));
            for (a, roots, (u, v)) in &per_a {
                let mut vals = Vec::new();
                if roots.is_empty() {
                    let val = k.relative_algebra_norm(&k.sub(&gamma, u), &k.neg(v), *a, n);
                    assert!(val.is_integer());
                    vals.push(val.to_integer());
                    vals.push(val.to_integer());
                } else {
                    for r in roots {
                        let val = k.norm(&k.sub(&gamma, &k.pow(r, m)));
                        assert!(val.is_integer());
                        vals.push(val.to_integer());
                    }
                }
                vals.sort();
                out.insert((vec![e1, e2], *a), vals);
            }
        }
    }
    out
}

/// Prime divisors of `|d|`.
pub fn ramified(d: i64) -> BTreeSet<u64> {
    let mut m = d.unsigned_abs();
    let mut out = BTreeSet::new();
    let mut p = 2;
    while p * p <= m {
        while m.is_multiple_of(p) {
            out.insert(p);
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        out.insert(m);
    }
    out
}

/// `N0 ∪ {2, 3, q} ∪ Ram` from [`quadratic_values`].
pub fn quadratic_n1(d: i64, h: u64, q: u64, alpha: (i64, i64)) -> BTreeSet<BigUint> {
    let values = quadratic_values(d, h, q, alpha);
    let distinct: BTreeSet<BigInt> = values.values().flatten().filter(|v| !v.is_zero()).map(|v| v.abs()).collect();
    let mut out: BTreeSet<BigUint> = distinct.iter().flat_map(prime_support).collect();
    for p in [2, 3, q].into_iter().chain(ramified(d)) {
        out.insert(BigUint::from(p));
    }
    out
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("fits")
}

pub fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x * x == n)
}
