//! JSON input formats for complexes, fans and polytopes, plus serde helpers
//! for arbitrary-precision integers.
//!
//! All vertex, ray and facet indices in these formats are 1-based.

use serde::{Deserialize, Serialize};

use crate::fan::{Fan, FanError};
use crate::polytope::{HPolytope, PolytopeError};
use crate::simplicial::{ComplexError, SimplicialComplex};

/// `{"m": int, "maximal_faces": [[int, ...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub m: usize,
    pub maximal_faces: Vec<Vec<usize>>,
}

impl ComplexSpec {
    pub fn build(&self) -> Result<SimplicialComplex, ComplexError> {
        SimplicialComplex::from_maximal_faces(self.m, &self.maximal_faces)
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexSpec {
            m: k.vertex_count(),
            maximal_faces: k.maximal_faces().iter().map(|f| f.labels()).collect(),
        }
    }
}

/// `{"n": int, "rays": [[int, ...], ...], "maximal_cones": [[int, ...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSpec {
    pub n: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl FanSpec {
    pub fn build(&self) -> Result<Fan, FanError> {
        crate::fan::validate_fan(self.n, &self.rays, &self.maximal_cones)
    }
}

/// `{"n": int, "A": [[int, ...], ...], "b": [int, ...]}` describing
/// `{x : A x + b >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSpec {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

impl PolytopeSpec {
    pub fn build(&self) -> Result<HPolytope, PolytopeError> {
        HPolytope::from_inequalities(self.n, &self.a, &self.b)
    }
}

/// Serializes `BigInt`s as JSON numbers when they fit in `i64`, as decimal
/// strings otherwise. Accepts both on input.
pub mod bigint {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Small(i64),
        Big(String),
    }

    impl Repr {
        pub(crate) fn from_big(x: &BigInt) -> Self {
            match x.to_i64() {
                Some(v) => Repr::Small(v),
                None => Repr::Big(x.to_string()),
            }
        }

        pub(crate) fn into_big<E: serde::de::Error>(self) -> Result<BigInt, E> {
            match self {
                Repr::Small(v) => Ok(BigInt::from(v)),
                Repr::Big(s) => s.parse().map_err(E::custom),
            }
        }
    }

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Repr::from_big(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Repr::deserialize(d)?.into_big()
    }
}

/// Like [`bigint`] for `Vec<BigInt>`.
pub mod bigint_list {
    use super::bigint::Repr;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(Repr::from_big).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(Repr::into_big).collect()
    }
}

/// Like [`bigint`] for matrices given as lists of rows.
pub mod bigint_rows {
    use super::bigint::Repr;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        rows.iter()
            .map(|r| r.iter().map(Repr::from_big).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Repr>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(Repr::into_big).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "bigint_list")]
        xs: Vec<BigInt>,
    }

    #[test]
    fn big_integers_render_canonically() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let w = Wrap {
            xs: vec![BigInt::from(-3), huge],
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"xs":[-3,"123456789012345678901234567890"]}"#);
        assert_eq!(serde_json::from_str::<Wrap>(&s).unwrap(), w);
    }

    #[test]
    fn specs_parse() {
        let c: ComplexSpec = serde_json::from_str(r#"{"m":3,"maximal_faces":[[1,2],[2,3],[1,3]]}"#).unwrap();
        assert_eq!(c.build().unwrap().maximal_faces().len(), 3);
        let p: PolytopeSpec = serde_json::from_str(r#"{"n":1,"A":[[1],[-1]],"b":[0,1]}"#).unwrap();
        assert_eq!(p.a, vec![vec![1], vec![-1]]);
    }
}
