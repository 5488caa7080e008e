use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::DimVector;
use crate::error::{Error, Result};

/// Label of an indecomposable: its dimension vector plus an index among the
/// indecomposables of that dimension vector.
///
/// Printed as `[1,1]`, or `[1,1]#2` when the index is nonzero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IndecId {
    pub dim: DimVector,
    pub index: u32,
}

impl IndecId {
    pub fn new(dim: DimVector, index: u32) -> Self {
        Self { dim, index }
    }
}

impl fmt::Display for IndecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.dim.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")?;
        if self.index > 0 {
            write!(f, "#{}", self.index)?;
        }
        Ok(())
    }
}

impl FromStr for IndecId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad indecomposable label {s:?}"));
        let s = s.trim();
        let (body, index) = match s.split_once('#') {
            Some((b, i)) => (b, i.parse::<u32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let dim = DimVector::parse(inner).map_err(|_| bad())?;
        if dim.is_zero() {
            return Err(bad());
        }
        Ok(Self { dim, index })
    }
}

/// An isomorphism class: a multiset of indecomposables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IsoClass {
    dim: DimVector,
    parts: BTreeMap<IndecId, u32>,
}

impl IsoClass {
    pub fn zero(num_vertices: usize) -> Self {
        Self {
            dim: DimVector(vec![0; num_vertices]),
            parts: BTreeMap::new(),
        }
    }

    pub fn indecomposable(id: IndecId) -> Self {
        let dim = id.dim.clone();
        Self {
            dim,
            parts: [(id, 1)].into_iter().collect(),
        }
    }

    pub fn from_parts(num_vertices: usize, parts: impl IntoIterator<Item = (IndecId, u32)>) -> Result<Self> {
        let mut out = Self::zero(num_vertices);
        for (id, m) in parts {
            if id.dim.len() != num_vertices {
                return Err(Error::InvalidArgument(format!(
                    "label {id} does not match a quiver with {num_vertices} vertices"
                )));
            }
            if m == 0 {
                continue;
            }
            out.dim = out.dim.add(&id.dim.scale(m));
            *out.parts.entry(id).or_insert(0) += m;
        }
        Ok(out)
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn parts(&self) -> &BTreeMap<IndecId, u32> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn direct_sum(&self, other: &IsoClass) -> IsoClass {
        let mut out = self.clone();
        out.dim = out.dim.add(&other.dim);
        for (id, m) in &other.parts {
            *out.parts.entry(id.clone()).or_insert(0) += m;
        }
        out
    }

    /// Sum of squared multiplicities.
    pub fn semisimple_rank(&self) -> u32 {
        self.parts.values().map(|m| m * m).sum()
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (id, m)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{id}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct IsoRepr {
    indecs: BTreeMap<String, u32>,
}

impl Serialize for IsoClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IsoRepr {
            indecs: self.parts.iter().map(|(id, m)| (id.to_string(), *m)).collect(),
        }
        .serialize(s)
    }
}

impl IsoClass {
    /// Parses `{"indecs": {...}}`; an empty map needs the vertex count to know the zero vector.
    pub fn from_json_value(v: &serde_json::Value, num_vertices: usize) -> Result<Self> {
        let repr: IsoRepr = serde_json::from_value(v.clone())?;
        let parts = repr
            .indecs
            .iter()
            .map(|(k, m)| Ok((k.parse::<IndecId>()?, *m)))
            .collect::<Result<Vec<_>>>()?;
        IsoClass::from_parts(num_vertices, parts)
    }
}

impl<'de> Deserialize<'de> for IsoClass {
    /// Self-describing only for nonzero classes; the zero class needs
    /// [`IsoClass::from_json_value`].
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = IsoRepr::deserialize(d)?;
        let parts = repr
            .indecs
            .iter()
            .map(|(k, m)| Ok((k.parse::<IndecId>()?, *m)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let n = parts
            .first()
            .map(|(id, _)| id.dim.len())
            .ok_or_else(|| D::Error::custom("zero class is ambiguous without a quiver"))?;
        IsoClass::from_parts(n, parts).map_err(D::Error::custom)
    }
}
