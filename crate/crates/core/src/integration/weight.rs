use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::quiver::{IsoClass, Quiver, RepModel};

/// An integer weight on isomorphism classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightFunction {
    ConstantOne,
    /// `(-1)^{χ(α, α)}` on classes of dimension `α`.
    Behrend,
    /// Listed values, with `default` for every other class.
    Custom {
        values: BTreeMap<IsoClass, i64>,
        default: i64,
    },
}

impl WeightFunction {
    pub fn eval(&self, quiver: &Quiver, class: &IsoClass) -> i64 {
        match self {
            WeightFunction::ConstantOne => 1,
            WeightFunction::Behrend => {
                if quiver.euler_form(class.dim(), class.dim()).rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                }
            }
            WeightFunction::Custom { values, default } => {
                values.get(class).copied().unwrap_or(*default)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightFunction::ConstantOne => "one",
            WeightFunction::Behrend => "behrend",
            WeightFunction::Custom { .. } => "custom",
        }
    }

    /// Parses `{"weights": [{"class": {...}, "value": n}]}`.
    pub fn from_json(s: &str, num_vertices: usize, default: i64) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        let list = v
            .get("weights")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("weight file needs a \"weights\" array".into()))?;
        let mut values = BTreeMap::new();
        for w in list {
            let class = IsoClass::from_json_value(
                w.get("class")
                    .ok_or_else(|| Error::Parse("weight entry without \"class\"".into()))?,
                num_vertices,
            )?;
            let value = w
                .get("value")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("weight value must be an integer".into()))?;
            if values.insert(class.clone(), value).is_some() {
                return Err(Error::Parse(format!("class {class} weighted twice")));
            }
        }
        Ok(WeightFunction::Custom { values, default })
    }
}

/// `(-1)^{dim Ext^1(E,E) - dim Hom(E,E)}` computed from the representation itself.
pub fn behrend_from_ext(model: &RepModel, class: &IsoClass) -> Result<i64> {
    let q = model.reference_q();
    let h = model.hom_dim(class, class, q)? as i64;
    let e = model.ext1_dim(class, class, q)? as i64;
    Ok(if (e - h).rem_euclid(2) == 0 { 1 } else { -1 })
}
