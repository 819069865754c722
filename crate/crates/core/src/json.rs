//! JSON forms shared by structures and subalgebra bases.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, SubalgebraBasis};

/// Exact rational in JSON: a plain integer when integral, otherwise `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Some(v) = self.0.numer().to_i64() {
                return s.serialize_i64(v);
            }
            return s.serialize_str(&self.0.numer().to_string());
        }
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRational;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                parse_rational(v).map(JsonRational).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(BigInt::from_str(p.trim()).map_err(|_| bad())?, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s.trim()).map_err(|_| bad())?,
        )),
    }
}

/// One nonzero matrix entry: `(row, col, value)`.
pub type EntryTriplet = (usize, usize, JsonRational);

pub fn matrix_triplets(m: &Matrix) -> Vec<EntryTriplet> {
    m.triplets()
        .into_iter()
        .map(|(i, j, v)| (i, j, JsonRational(v)))
        .collect()
}

pub fn matrix_from_triplets(n: usize, triplets: &[EntryTriplet]) -> Result<Matrix> {
    Matrix::from_triplets(n, n, triplets.iter().map(|(i, j, v)| (*i, *j, v.0.clone())))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubalgebraBasisJson {
    pub ambient_dim: usize,
    pub dim: usize,
    pub elements: Vec<Vec<EntryTriplet>>,
}

impl SubalgebraBasisJson {
    pub fn from_basis(b: &SubalgebraBasis) -> Self {
        SubalgebraBasisJson {
            ambient_dim: b.ambient_dim(),
            dim: b.dim(),
            elements: b.elements().iter().map(matrix_triplets).collect(),
        }
    }

    pub fn to_basis(&self) -> Result<SubalgebraBasis> {
        let elements = self
            .elements
            .iter()
            .map(|t| matrix_from_triplets(self.ambient_dim, t))
            .collect::<Result<Vec<_>>>()?;
        SubalgebraBasis::new(self.ambient_dim, elements)
    }
}
