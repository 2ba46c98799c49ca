//! JSON form of big integers: a plain number when the value fits in `i64`,
//! otherwise a decimal string. Both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigJson(pub BigInt);

impl Serialize for BigJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for BigJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize(d).map(BigJson)
    }
}

impl From<BigInt> for BigJson {
    fn from(x: BigInt) -> Self {
        BigJson(x)
    }
}

impl From<BigJson> for BigInt {
    fn from(x: BigJson) -> Self {
        x.0
    }
}

pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

struct BigVisitor;

impl Visitor<'_> for BigVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(v.into())
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.parse().map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    d.deserialize_any(BigVisitor)
}

/// `Vec<BigInt>` in the same encoding.
pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&BigJson(x.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<BigJson>::deserialize(d)?.into_iter().map(|x| x.0).collect())
    }
}

/// `Option<BigInt>`, `None` as `null`.
pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(|v| BigJson(v.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<BigJson>::deserialize(d)?.map(|x| x.0))
    }
}

/// `Vec<(BigInt, u32)>` as `[[p, e], ...]`.
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[(BigInt, u32)], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for (p, e) in xs {
            seq.serialize_element(&(BigJson(p.clone()), *e))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigInt, u32)>, D::Error> {
        Ok(Vec::<(BigJson, u32)>::deserialize(d)?
            .into_iter()
            .map(|(p, e)| (p.0, e))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_as_number_large_as_string() {
        let small = BigJson(BigInt::from(-42));
        assert_eq!(serde_json::to_string(&small).unwrap(), "-42");
        let big = BigJson(BigInt::from(5u64).pow(40));
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "\"9094947017729282379150390625\"");
        assert_eq!(serde_json::from_str::<BigJson>(&s).unwrap(), big);
        assert_eq!(serde_json::from_str::<BigJson>("18446744073709551615").unwrap().0, BigInt::from(u64::MAX));
        assert!(serde_json::from_str::<BigJson>("\"12a\"").is_err());
        assert!(serde_json::from_str::<BigJson>("1.5").is_err());
    }
}
