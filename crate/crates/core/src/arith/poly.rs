use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bigjson::BigJson;

use crate::error::{Error, Result};

/// Dense univariate polynomial over Z, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<BigJson>", from = "Vec<BigJson>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl From<Vec<BigInt>> for IntPolynomial {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs)
    }
}

impl From<IntPolynomial> for Vec<BigInt> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl From<Vec<BigJson>> for IntPolynomial {
    fn from(coeffs: Vec<BigJson>) -> Self {
        Self::new(coeffs.into_iter().map(|c| c.0).collect())
    }
}

impl From<IntPolynomial> for Vec<BigJson> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.into_iter().map(BigJson).collect()
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Division of every coefficient by `c`; fails unless exact.
    pub fn exact_div_scalar(&self, c: &BigInt) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(Error::Domain(format!("{c} does not divide coefficient {a}")));
            }
            out.push(q);
        }
        Ok(Self::new(out))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Pseudo-remainder: `lc(g)^(deg f - deg g + 1) * f = q * g + r`.
    pub fn pseudo_rem(&self, g: &Self) -> Result<Self> {
        let dg = g.degree().ok_or_else(|| Error::Domain("pseudo-division by zero".into()))?;
        let Some(df) = self.degree() else {
            return Ok(Self::zero());
        };
        if df < dg {
            return Ok(self.clone());
        }
        let lg = g.leading();
        let mut r = self.clone();
        let mut steps = df - dg + 1;
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let lr = r.leading();
            r = &r.scale(&lg) - &g.scale(&lr).shifted(dr - dg);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&lg.pow(steps as u32));
        }
        Ok(r)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &Self) -> Self {
        debug_assert!(m.is_monic());
        let dm = m.degree().expect("nonzero modulus");
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - dm;
            for (i, c) in m.coeffs[..dm].iter().enumerate() {
                r[shift + i] -= &top * c;
            }
        }
        Self::new(r)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Resultant `Res(f, g) = lc(f)^deg g * prod g(root_i(f))`.
///
/// Fraction-free subresultant pseudo-remainder sequence (Collins, in the form
/// given by Cohen, Algorithm 3.3.7). Every division is exact over Z.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("resultant of the zero polynomial".into()));
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = -s;
        }
    }
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if db == 0 {
        return Ok(s * b.leading().pow(da as u32));
    }
    let ca = a.content();
    let cb = b.content();
    a = a.exact_div_scalar(&ca)?;
    b = b.exact_div_scalar(&cb)?;
    let t = ca.pow(db as u32) * cb.pow(da as u32);
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        let divisor = &g_ * h.pow(delta as u32);
        b = r.exact_div_scalar(&divisor)?;
        g_ = a.leading();
        h = if delta == 0 {
            h
        } else {
            // h^(1 - delta) * g^delta, exact
            let num = g_.pow(delta as u32);
            let den = h.pow((delta - 1) as u32);
            num / den
        };
        match b.degree() {
            None => return Ok(BigInt::zero()),
            Some(0) => {
                let da = a.degree().unwrap() as u32;
                let lb = b.leading();
                // h^(1 - da) * lc(b)^da, exact for da >= 1
                let hh = lb.pow(da) / h.pow(da - 1);
                return Ok(s * t * hh);
            }
            Some(_) => {}
        }
    }
}
