use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::motivic::MotivicClass;
use crate::quiver::{DimVector, IsoClass};

/// A finite, graded combination of atoms `a_E` with motivic coefficients.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct HallElement {
    graded: BTreeMap<DimVector, BTreeMap<IsoClass, MotivicClass>>,
}

impl HallElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(class: IsoClass, coeff: MotivicClass) -> Self {
        let mut out = Self::zero();
        out.add_term(class, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (IsoClass, MotivicClass)>) -> Self {
        let mut out = Self::zero();
        for (c, k) in terms {
            out.add_term(c, k);
        }
        out
    }

    pub fn add_term(&mut self, class: IsoClass, coeff: MotivicClass) {
        if coeff.is_zero() {
            return;
        }
        let piece = self.graded.entry(class.dim().clone()).or_default();
        let sum = match piece.remove(&class) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            piece.insert(class.clone(), sum);
        }
        if piece.is_empty() {
            self.graded.remove(class.dim());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.graded.is_empty()
    }

    pub fn graded(&self) -> &BTreeMap<DimVector, BTreeMap<IsoClass, MotivicClass>> {
        &self.graded
    }

    /// Terms in canonical order: by dimension vector, then by class.
    pub fn terms(&self) -> impl Iterator<Item = (&IsoClass, &MotivicClass)> {
        self.graded.values().flat_map(|p| p.iter())
    }

    pub fn num_terms(&self) -> usize {
        self.graded.values().map(BTreeMap::len).sum()
    }

    pub fn coeff(&self, class: &IsoClass) -> MotivicClass {
        self.graded
            .get(class.dim())
            .and_then(|p| p.get(class))
            .cloned()
            .unwrap_or_default()
    }

    pub fn support(&self) -> Vec<DimVector> {
        self.graded.keys().cloned().collect()
    }

    pub fn scale(&self, c: &MotivicClass) -> Self {
        Self::from_terms(self.terms().map(|(e, k)| (e.clone(), k * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&IsoClass, &MotivicClass) -> Result<MotivicClass>) -> Result<Self> {
        let mut out = Self::zero();
        for (e, k) in self.terms() {
            out.add_term(e.clone(), f(e, k)?);
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, k)| json!({"class": e, "coeff": k}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(v: &Value, num_vertices: usize) -> Result<Self> {
        let mut out = Self::zero();
        for t in terms_array(v)? {
            let class = parse_class(t, num_vertices)?;
            let coeff: MotivicClass = serde_json::from_value(
                t.get("coeff")
                    .cloned()
                    .ok_or_else(|| Error::Parse("term without \"coeff\"".into()))?,
            )?;
            out.add_term(class, coeff);
        }
        Ok(out)
    }

    pub fn from_json(s: &str, num_vertices: usize) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?, num_vertices)
    }
}

fn terms_array(v: &Value) -> Result<&Vec<Value>> {
    v.get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("expected an object with a \"terms\" array".into()))
}

fn parse_class(t: &Value, num_vertices: usize) -> Result<IsoClass> {
    let c = t
        .get("class")
        .ok_or_else(|| Error::Parse("term without \"class\"".into()))?;
    IsoClass::from_json_value(c, num_vertices)
}

impl Serialize for HallElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl Add for &HallElement {
    type Output = HallElement;
    fn add(self, rhs: &HallElement) -> HallElement {
        let mut out = self.clone();
        for (e, k) in rhs.terms() {
            out.add_term(e.clone(), k.clone());
        }
        out
    }
}

impl Sub for &HallElement {
    type Output = HallElement;
    fn sub(self, rhs: &HallElement) -> HallElement {
        self + &(-rhs)
    }
}

impl Neg for &HallElement {
    type Output = HallElement;
    fn neg(self) -> HallElement {
        HallElement::from_terms(self.terms().map(|(e, k)| (e.clone(), -k)))
    }
}

/// An element of the semi-classical algebra: atom coefficients at `L = 1`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct ScElement {
    graded: BTreeMap<DimVector, BTreeMap<IsoClass, i64>>,
}

impl ScElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(class: IsoClass, coeff: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(class, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (IsoClass, i64)>) -> Self {
        let mut out = Self::zero();
        for (c, k) in terms {
            out.add_term(c, k);
        }
        out
    }

    pub fn add_term(&mut self, class: IsoClass, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let piece = self.graded.entry(class.dim().clone()).or_default();
        let sum = piece.get(&class).copied().unwrap_or(0) + coeff;
        if sum == 0 {
            piece.remove(&class);
        } else {
            piece.insert(class.clone(), sum);
        }
        if piece.is_empty() {
            self.graded.remove(class.dim());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.graded.is_empty()
    }

    pub fn graded(&self) -> &BTreeMap<DimVector, BTreeMap<IsoClass, i64>> {
        &self.graded
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IsoClass, i64)> {
        self.graded.values().flat_map(|p| p.iter().map(|(e, k)| (e, *k)))
    }

    pub fn coeff(&self, class: &IsoClass) -> i64 {
        self.graded
            .get(class.dim())
            .and_then(|p| p.get(class))
            .copied()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, k)| (e.clone(), k * c)))
    }

    /// The canonical regular lift: the same atoms with constant coefficients.
    pub fn lift(&self) -> HallElement {
        HallElement::from_terms(
            self.terms()
                .map(|(e, k)| (e.clone(), MotivicClass::integer(k))),
        )
    }

    /// `sum c_E d_F a_{E ⊕ F}`: the product in the semi-classical limit, where only the
    /// split extension survives.
    pub fn direct_sum_convolution(&self, other: &ScElement) -> ScElement {
        let mut out = ScElement::zero();
        for (e, c) in self.terms() {
            for (f, d) in other.terms() {
                out.add_term(e.direct_sum(f), c * d);
            }
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, k)| json!({"class": e, "coeff": k}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(v: &Value, num_vertices: usize) -> Result<Self> {
        let mut out = Self::zero();
        for t in terms_array(v)? {
            let class = parse_class(t, num_vertices)?;
            let coeff = t
                .get("coeff")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("semi-classical coefficient must be an integer".into()))?;
            out.add_term(class, coeff);
        }
        Ok(out)
    }

    pub fn from_json(s: &str, num_vertices: usize) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?, num_vertices)
    }
}

impl Serialize for ScElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl Add for &ScElement {
    type Output = ScElement;
    fn add(self, rhs: &ScElement) -> ScElement {
        let mut out = self.clone();
        for (e, k) in rhs.terms() {
            out.add_term(e.clone(), k);
        }
        out
    }
}

impl Sub for &ScElement {
    type Output = ScElement;
    fn sub(self, rhs: &ScElement) -> ScElement {
        self + &rhs.scale(-1)
    }
}

impl Neg for &ScElement {
    type Output = ScElement;
    fn neg(self) -> ScElement {
        self.scale(-1)
    }
}
