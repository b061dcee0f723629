//! JSON documents for posets and polynomials.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::labeling::{attach_labeling, EdgeLabeling};
use crate::poly::IntPoly;
use crate::poset::GradedPoset;

/// `{"elements": [...], "covers": [[lo, hi], ...], "labels": [[lo, hi, label], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<(usize, usize, i64)>>,
}

impl PosetDoc {
    pub fn new(p: &GradedPoset, l: Option<&EdgeLabeling>) -> Self {
        PosetDoc {
            elements: p.names().to_vec(),
            covers: p.covers().collect(),
            labels: l.map(|l| l.triples(p).collect()),
        }
    }

    pub fn build(&self) -> Result<(GradedPoset, Option<EdgeLabeling>)> {
        let n = self.elements.len();
        let bad = |i: usize| Error::Schema(format!("index {i} does not name one of the {n} elements"));
        for &(a, b) in &self.covers {
            for i in [a, b] {
                if i >= n {
                    return Err(bad(i));
                }
            }
        }
        for &(a, b, _) in self.labels.iter().flatten() {
            for i in [a, b] {
                if i >= n {
                    return Err(bad(i));
                }
            }
        }
        let p = GradedPoset::new(self.elements.clone(), &self.covers)?;
        let l = match &self.labels {
            Some(v) => Some(attach_labeling(&p, v)?),
            None => None,
        };
        Ok((p, l))
    }
}

pub fn from_json(doc: &str) -> Result<(GradedPoset, Option<EdgeLabeling>)> {
    let d: PosetDoc = serde_json::from_str(doc).map_err(|e| Error::Schema(e.to_string()))?;
    d.build()
}

pub fn to_json(p: &GradedPoset, l: Option<&EdgeLabeling>) -> String {
    serde_json::to_string_pretty(&PosetDoc::new(p, l)).expect("documents serialize")
}

const SAFE: i64 = 1 << 53;

/// A coefficient as a JSON number, or a decimal string beyond `2^53`.
pub fn bigint_to_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) if v.abs() <= SAFE => json!(v),
        _ => json!(c.to_string()),
    }
}

pub fn coeffs_to_json(f: &IntPoly) -> Value {
    Value::Array(f.coeffs().iter().map(bigint_to_json).collect())
}

/// `{"var": var, "coeffs": [c0, c1, ...]}`
pub fn poly_to_json(f: &IntPoly, var: &str) -> Value {
    json!({ "var": var, "coeffs": coeffs_to_json(f) })
}

fn coeff_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Schema(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Schema(format!("coefficient {s:?} is not a decimal integer"))),
        other => Err(Error::Schema(format!("coefficient {other} is neither number nor string"))),
    }
}

/// Accepts `{"var", "coeffs"}` or a bare coefficient array; returns the
/// polynomial and its variable name (`x` when absent).
pub fn poly_from_json(v: &Value) -> Result<(IntPoly, String)> {
    let (var, coeffs) = match v {
        Value::Array(a) => ("x".to_string(), a),
        Value::Object(o) => {
            if let Some(k) = o.keys().find(|k| *k != "var" && *k != "coeffs") {
                return Err(Error::Schema(format!("unknown field {k:?}")));
            }
            let var = match o.get("var") {
                None => "x".to_string(),
                Some(Value::String(s)) if s == "x" || s == "y" => s.clone(),
                Some(other) => return Err(Error::Schema(format!("var must be \"x\" or \"y\", got {other}"))),
            };
            match o.get("coeffs") {
                Some(Value::Array(a)) => (var, a),
                _ => return Err(Error::Schema("missing coeffs array".into())),
            }
        }
        other => return Err(Error::Schema(format!("expected a polynomial, got {other}"))),
    };
    let c = coeffs.iter().map(coeff_from_json).collect::<Result<Vec<_>>>()?;
    Ok((IntPoly::new(c), var))
}
