//! Finite quivers without relations and their representations over finite fields.
//!
//! This is the computable abelian category behind the Hall algebra: Hom and Ext¹ are
//! finite linear algebra, higher Ext groups vanish, and point counts of every moduli
//! stratum are brute-forceable over small fields.

mod interpolate;
mod iso;
mod model;
mod rep;
mod subrep;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use interpolate::interpolate_count_polynomial;
pub use iso::{IndecId, IsoClass};
pub use model::{IsoEntry, RepModel};
pub use rep::FqRep;
pub(crate) use rep::digits;
pub use subrep::{quotient_rep, subrep, subspaces};

/// A finite quiver. Loops and parallel arrows are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverRepr {
    vertices: Vec<String>,
    arrows: Vec<(String, String)>,
}

impl Quiver {
    pub fn new<S: Into<String>>(vertices: Vec<S>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate vertex {v:?}")));
            }
        }
        for (s, t) in &arrows {
            if *s >= vertices.len() || *t >= vertices.len() {
                return Err(Error::InvalidArgument(format!(
                    "arrow ({s}, {t}) references an undeclared vertex"
                )));
            }
        }
        Ok(Self { vertices, arrows })
    }

    /// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n).map(|i| (i - 1, i)).collect();
        Self { vertices, arrows }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: QuiverRepr = serde_json::from_str(s)?;
        let index = |label: &str| {
            repr.vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::Parse(format!("arrow endpoint {label:?} is not a vertex")))
        };
        let arrows = repr
            .arrows
            .iter()
            .map(|(s, t)| Ok((index(s)?, index(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(repr.vertices.clone(), arrows)
    }

    pub fn to_json(&self) -> String {
        let repr = QuiverRepr {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|(s, t)| (self.vertices[*s].clone(), self.vertices[*t].clone()))
                .collect(),
        };
        serde_json::to_string(&repr).expect("quiver serializes")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// `chi(a, b) = sum_i a_i b_i - sum_{arrows i -> j} a_i b_j`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> i64 {
        self.check_len(a);
        self.check_len(b);
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| i64::from(x * y)).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|(s, t)| i64::from(a.0[*s] * b.0[*t]))
            .sum();
        diag - off
    }

    /// `chi(a, b) - chi(b, a)`.
    pub fn skew_form(&self, a: &DimVector, b: &DimVector) -> i64 {
        self.euler_form(a, b) - self.euler_form(b, a)
    }

    /// Matrix of the Euler form in the vertex basis.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.euler_form(&DimVector::unit(n, i), &DimVector::unit(n, j)))
                    .collect()
            })
            .collect()
    }

    /// Dimension of the affine space of representations of dimension `a`.
    pub fn rep_space_dim(&self, a: &DimVector) -> u64 {
        self.arrows
            .iter()
            .map(|(s, t)| u64::from(a.0[*s]) * u64::from(a.0[*t]))
            .sum()
    }

    pub fn zero_dim(&self) -> DimVector {
        DimVector(vec![0; self.num_vertices()])
    }

    fn check_len(&self, a: &DimVector) {
        assert_eq!(
            a.0.len(),
            self.num_vertices(),
            "dimension vector length does not match the quiver"
        );
    }
}

/// A dimension vector, indexed by vertex position.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(v: Vec<u32>) -> Self {
        Self(v)
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.0.len(), other.0.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    /// Every nonzero vector componentwise `<= self`, in lexicographic order.
    pub fn nonzero_below(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=bound).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(DimVector)
            .filter(|d| !d.is_zero())
            .collect()
    }

    /// Parses `"1,0,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad dimension vector {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// The finite set of dimension vectors on which exact computations are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    /// All vectors of total dimension at most `n`.
    MaxTotal(u32),
    /// An explicit list; the zero vector is always included.
    Dims(Vec<DimVector>),
}

impl Window {
    pub fn contains(&self, d: &DimVector) -> bool {
        if d.is_zero() {
            return true;
        }
        match self {
            Window::MaxTotal(n) => d.total() <= *n,
            Window::Dims(list) => list.contains(d),
        }
    }

    /// The nonzero vectors of the window, sorted.
    pub fn dims(&self, quiver: &Quiver) -> Vec<DimVector> {
        let mut out = match self {
            Window::MaxTotal(n) => {
                let bound = DimVector(vec![*n; quiver.num_vertices()]);
                bound
                    .nonzero_below()
                    .into_iter()
                    .filter(|d| d.total() <= *n)
                    .collect()
            }
            Window::Dims(list) => list.iter().filter(|d| !d.is_zero()).cloned().collect::<Vec<_>>(),
        };
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out.dedup();
        out
    }

    /// Parses `"1,1;2,1"`.
    pub fn parse_dims(s: &str) -> Result<Self> {
        let list = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(DimVector::parse)
            .collect::<Result<Vec<_>>>()?;
        if list.is_empty() {
            return Err(Error::Parse("empty window".into()));
        }
        Ok(Window::Dims(list))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn a2_euler_form() {
        let q = Quiver::linear(2);
        assert_eq!(q.euler_form(&dv(&[1, 0]), &dv(&[0, 1])), -1);
        assert_eq!(q.euler_form(&dv(&[0, 1]), &dv(&[1, 0])), 0);
        assert_eq!(q.euler_form(&dv(&[2, 1]), &dv(&[0, 0])), 0);
        assert_eq!(q.skew_form(&dv(&[0, 1]), &dv(&[1, 0])), 1);
        assert_eq!(q.euler_matrix(), vec![vec![1, -1], vec![0, 1]]);
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::from_json(r#"{"vertices": ["1","2"], "arrows": [["1","2"]]}"#).unwrap();
        assert_eq!(q, Quiver::linear(2));
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        assert!(Quiver::from_json(r#"{"vertices": ["1"], "arrows": [["1","3"]]}"#).is_err());
    }

    #[test]
    fn windows() {
        let q = Quiver::linear(2);
        let w = Window::MaxTotal(2);
        assert_eq!(
            w.dims(&q),
            vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[0, 2]), dv(&[1, 1]), dv(&[2, 0])]
        );
        assert!(w.contains(&dv(&[0, 0])));
        assert!(!w.contains(&dv(&[2, 1])));
        let w = Window::parse_dims("1,1; 2,1").unwrap();
        assert!(w.contains(&dv(&[2, 1])));
        assert!(!w.contains(&dv(&[1, 0])));
    }
}
