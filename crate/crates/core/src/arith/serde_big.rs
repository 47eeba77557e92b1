//! Serde adapters that write big integers as decimal strings.

use num_bigint::BigInt;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(D::Error::custom)
}

/// `Vec<(BigInt, u32)>` as `[["p", e], ...]`.
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[(BigInt, u32)], s: S) -> Result<S::Ok, S::Error> {
        let tmp: Vec<(String, u32)> = v.iter().map(|(n, e)| (n.to_string(), *e)).collect();
        tmp.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigInt, u32)>, D::Error> {
        let tmp = Vec::<(String, u32)>::deserialize(d)?;
        tmp.into_iter()
            .map(|(n, e)| n.parse().map(|n| (n, e)).map_err(D::Error::custom))
            .collect()
    }
}
