//! Serde helpers for big integers: numbers when they fit in `i64`, strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::intlin::IntMatrix;

struct Big<'a>(&'a BigInt);

impl Serialize for Big<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn big_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Big(x))?;
    }
    seq.end()
}

struct Row<'a>(&'a [BigInt]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        big_vec(self.0, s)
    }
}

pub fn matrix<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows = m.to_rows();
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in &rows {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}

pub fn vec_of_vecs<S: Serializer>(vs: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for r in vs {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}
