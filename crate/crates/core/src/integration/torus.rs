use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::motivic::MotivicClass;
use crate::quiver::{DimVector, Quiver};

/// The twisting sign of the Poisson torus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `σ^e`.
    pub fn pow(self, e: i64) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus if e.rem_euclid(2) == 0 => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {v}"))),
        }
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign must be +1 or -1, got {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// The bilinear form `<a, b> = a^T S b` given by its matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm(pub Vec<Vec<i64>>);

impl BilinearForm {
    /// `χ(a, b) - χ(b, a)`.
    pub fn skew(quiver: &Quiver) -> Self {
        let e = quiver.euler_matrix();
        let n = e.len();
        Self(
            (0..n)
                .map(|i| (0..n).map(|j| e[i][j] - e[j][i]).collect())
                .collect(),
        )
    }

    pub fn euler(quiver: &Quiver) -> Self {
        Self(quiver.euler_matrix())
    }

    pub fn eval(&self, a: &DimVector, b: &DimVector) -> i64 {
        let mut s = 0;
        for (i, row) in self.0.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                s += i64::from(a.0[i]) * x * i64::from(b.0[j]);
            }
        }
        s
    }
}

/// An element of the Poisson torus: integer combinations of `x^α` with
/// `x^α * x^β = σ^{<α,β>} x^{α+β}` and `{x^α, x^β} = σ^{<α,β>} <α,β> x^{α+β}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoissonTorusElement {
    sigma: Sign,
    form: BilinearForm,
    coeffs: BTreeMap<DimVector, i64>,
}

impl PoissonTorusElement {
    pub fn zero(sigma: Sign, form: BilinearForm) -> Self {
        Self {
            sigma,
            form,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(sigma: Sign, form: BilinearForm, dim: DimVector, coeff: i64) -> Self {
        let mut out = Self::zero(sigma, form);
        out.add_term(dim, coeff);
        out
    }

    pub fn sigma(&self) -> Sign {
        self.sigma
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn coeffs(&self) -> &BTreeMap<DimVector, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, dim: &DimVector) -> i64 {
        self.coeffs.get(dim).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, dim: DimVector, coeff: i64) {
        let v = self.coeffs.get(&dim).copied().unwrap_or(0) + coeff;
        if v == 0 {
            self.coeffs.remove(&dim);
        } else {
            self.coeffs.insert(dim, v);
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.sigma != other.sigma {
            return Err(Error::MismatchedAlgebras(format!(
                "signs {} and {} differ",
                self.sigma, other.sigma
            )));
        }
        if self.form != other.form {
            return Err(Error::MismatchedAlgebras("skew forms differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(d.clone(), *c);
        }
        Ok(out)
    }

    pub fn torus_mul(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = Self::zero(self.sigma, self.form.clone());
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let s = self.sigma.pow(self.form.eval(a, b));
                out.add_term(a.add(b), s * x * y);
            }
        }
        Ok(out)
    }

    pub fn torus_bracket(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = Self::zero(self.sigma, self.form.clone());
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let k = self.form.eval(a, b);
                out.add_term(a.add(b), self.sigma.pow(k) * k * x * y);
            }
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// Parses `{"sigma": ±1, "terms": [{"dim": [...], "coeff": n}]}` against `form`.
    pub fn from_json_value(v: &Value, form: BilinearForm) -> Result<Self> {
        let sigma = v
            .get("sigma")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("torus element needs an integer \"sigma\"".into()))?;
        let mut out = Self::zero(Sign::from_value(sigma)?, form);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("torus element needs a \"terms\" array".into()))?;
        for t in terms {
            let dim: DimVector = serde_json::from_value(
                t.get("dim").cloned().ok_or_else(|| Error::Parse("term without \"dim\"".into()))?,
            )?;
            if dim.len() != out.form.0.len() {
                return Err(Error::Parse(format!("dimension vector {dim} has the wrong length")));
            }
            let c = t
                .get("coeff")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("torus coefficient must be an integer".into()))?;
            out.add_term(dim, c);
        }
        Ok(out)
    }
}

impl Serialize for PoissonTorusElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(d, c)| json!({"dim": d, "coeff": c}))
            .collect();
        let mut st = s.serialize_struct("PoissonTorusElement", 2)?;
        st.serialize_field("sigma", &self.sigma.value())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// An element of the quantum torus: motivic combinations of `x^α` with
/// `x^α * x^β = L^{-χ(β,α)} x^{α+β}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantumTorusElement {
    euler: BilinearForm,
    coeffs: BTreeMap<DimVector, MotivicClass>,
}

impl QuantumTorusElement {
    pub fn zero(euler: BilinearForm) -> Self {
        Self {
            euler,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(euler: BilinearForm, dim: DimVector, coeff: MotivicClass) -> Self {
        let mut out = Self::zero(euler);
        out.add_term(dim, coeff);
        out
    }

    pub fn coeffs(&self) -> &BTreeMap<DimVector, MotivicClass> {
        &self.coeffs
    }

    pub fn coeff(&self, dim: &DimVector) -> MotivicClass {
        self.coeffs.get(dim).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, dim: DimVector, coeff: MotivicClass) {
        let v = match self.coeffs.remove(&dim) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !v.is_zero() {
            self.coeffs.insert(dim, v);
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.euler != other.euler {
            return Err(Error::MismatchedAlgebras("Euler forms differ".into()));
        }
        let mut out = Self::zero(self.euler.clone());
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let twist = MotivicClass::lefschetz_pow(-self.euler.eval(b, a));
                out.add_term(a.add(b), &(x * y) * &twist);
            }
        }
        Ok(out)
    }
}

impl Serialize for QuantumTorusElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(d, c)| json!({"dim": d, "coeff": c}))
            .collect();
        let mut st = s.serialize_struct("QuantumTorusElement", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
