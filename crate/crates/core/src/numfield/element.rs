//! Elements of `Q(θ)` written as `num(θ) / den` for a monic integral
//! generator minimal polynomial `g(θ) = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{pow_big, resultant, IntPolynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldElement {
    pub num: IntPolynomial,
    #[serde(with = "crate::arith::bigjson")]
    pub den: BigInt,
}

impl FieldElement {
    pub fn new(num: IntPolynomial, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self { num, den }.normalized())
    }

    pub fn integral(num: IntPolynomial) -> Self {
        Self { num, den: BigInt::one() }
    }

    pub fn rational(c: BigInt) -> Self {
        Self::integral(IntPolynomial::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            self.num = -&self.num;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_zero() && !g.is_one() {
            self.num = self.num.exact_div_scalar(&g).expect("content divides");
            self.den /= g;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
        }
        self
    }
}

/// Arithmetic modulo a monic generator polynomial.
#[derive(Clone, Debug)]
pub struct GeneratorArith {
    g: IntPolynomial,
    degree: usize,
}

impl GeneratorArith {
    pub fn new(g: IntPolynomial) -> Result<Self> {
        match g.degree() {
            Some(d) if d >= 1 && g.is_monic() => Ok(Self { g, degree: d }),
            _ => Err(Error::MalformedSpec(
                "generator minimal polynomial must be monic of positive degree".into(),
            )),
        }
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn reduce(&self, a: &FieldElement) -> FieldElement {
        FieldElement { num: a.num.rem_monic(&self.g), den: a.den.clone() }.normalized()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let num = &a.num.scale(&b.den) + &b.num.scale(&a.den);
        FieldElement { num, den: &a.den * &b.den }.normalized()
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let num = &a.num.scale(&b.den) - &b.num.scale(&a.den);
        FieldElement { num, den: &a.den * &b.den }.normalized()
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let num = (&a.num * &b.num).rem_monic(&self.g);
        FieldElement { num, den: &a.den * &b.den }.normalized()
    }

    pub fn scale(&self, a: &FieldElement, c: &BigInt) -> FieldElement {
        FieldElement { num: a.num.scale(c), den: a.den.clone() }.normalized()
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::rational(BigInt::one());
        let mut base = self.reduce(a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `Norm_{Q(θ)/Q}`, via `Res(g, num) / den^deg`.
    pub fn norm(&self, a: &FieldElement) -> Result<BigInt> {
        if a.is_zero() {
            return Ok(BigInt::zero());
        }
        let r = resultant(&self.g, &a.num)?;
        let d = pow_big(&a.den, self.degree as u64);
        let (q, rem) = r.div_rem(&d);
        if !rem.is_zero() {
            return Err(Error::Domain("norm is not an integer multiple of den^deg".into()));
        }
        Ok(q)
    }

    /// Values of the scaled characteristic polynomial
    /// `Res_y(g(y), den·x − num(y))` at `x = 0, 1, ..., deg`. Two elements
    /// with equal denominators are conjugate-compatible iff these agree.
    pub fn charpoly_values(&self, a: &FieldElement) -> Result<Vec<BigInt>> {
        (0..=self.degree)
            .map(|i| {
                let shifted = &IntPolynomial::constant(&a.den * BigInt::from(i as i64)) - &a.num;
                if shifted.is_zero() {
                    Ok(BigInt::zero())
                } else {
                    resultant(&self.g, &shifted)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(c: &[i64]) -> FieldElement {
        FieldElement::integral(IntPolynomial::from_i64(c))
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = GeneratorArith::new(IntPolynomial::from_i64(&[1, 0, 1])).unwrap();
        let a = el(&[2, 1]);
        assert_eq!(k.norm(&a).unwrap(), BigInt::from(5));
        assert_eq!(k.mul(&a, &el(&[2, -1])), el(&[5]));
        assert_eq!(k.pow(&el(&[0, 1]), 4), el(&[1]));
        assert_eq!(k.norm(&k.pow(&a, 24)).unwrap(), BigInt::from(5).pow(24));
        assert_eq!(k.norm(&el(&[3])).unwrap(), BigInt::from(9));
    }

    #[test]
    fn denominators() {
        // (1 + sqrt 5)/2 written over the generator sqrt 5
        let k = GeneratorArith::new(IntPolynomial::from_i64(&[-5, 0, 1])).unwrap();
        let phi = FieldElement::new(IntPolynomial::from_i64(&[1, 1]), BigInt::from(2)).unwrap();
        assert_eq!(k.norm(&phi).unwrap(), BigInt::from(-1));
        let sq = k.mul(&phi, &phi);
        assert_eq!(sq, k.add(&phi, &el(&[1])));
        let scaled = FieldElement::new(IntPolynomial::from_i64(&[2, 2]), BigInt::from(-4)).unwrap();
        assert_eq!(scaled, FieldElement::new(IntPolynomial::from_i64(&[-1, -1]), BigInt::from(2)).unwrap());
    }

    #[test]
    fn characteristic_polynomial() {
        let k = GeneratorArith::new(IntPolynomial::from_i64(&[1, 1, 1, 1, 1])).unwrap();
        // zeta_5 + zeta_5^4 satisfies x^2 + x - 1, so its charpoly is the square
        let eta = el(&[0, 1, 0, 0, 0]);
        let eta = k.add(&eta, &k.pow(&eta, 4));
        let expect: Vec<BigInt> = (0i64..5).map(|x| BigInt::from((x * x + x - 1).pow(2))).collect();
        assert_eq!(k.charpoly_values(&eta).unwrap(), expect);
    }

    #[test]
    fn rejects_non_monic() {
        assert!(GeneratorArith::new(IntPolynomial::from_i64(&[1, 2])).is_err());
        assert!(GeneratorArith::new(IntPolynomial::from_i64(&[3])).is_err());
    }
}
