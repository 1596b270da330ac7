//! JSON integers for `BigInt` values.
//!
//! Values that fit in an `i64` are written as plain JSON numbers; anything
//! larger falls back to a decimal string. Both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

struct JsonIntVisitor;

impl<'de> Visitor<'de> for JsonIntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        v.parse::<BigInt>().map(JsonInt).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(JsonIntVisitor)
    }
}

pub(crate) mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|b| JsonInt(b.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<JsonInt>::deserialize(d)?.map(|j| j.0))
    }
}

pub(crate) mod plain {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Ok(JsonInt::deserialize(d)?.0)
    }
}
