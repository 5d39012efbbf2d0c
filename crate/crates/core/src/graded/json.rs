//! Deterministic JSON form of expressions.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde_json::{json, Value};

use super::expr::Expr;

/// Terms sorted by monomial: `{"coeff": [re, im], "factors": [[name, num, den], ...]}`.
pub fn expr_to_json(e: &Expr) -> Value {
    Value::Array(
        e.terms()
            .map(|(m, c)| {
                let factors: Vec<Value> = m
                    .factors()
                    .iter()
                    .map(|(g, x)| json!([g.name(), x.numer(), x.denom()]))
                    .collect();
                json!({ "coeff": c.to_strings(), "factors": factors })
            })
            .collect(),
    )
}

pub fn serialize_expr<S: Serializer>(e: &Expr, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&expr_to_json(e), s)
}

pub fn serialize_expr_map<S: Serializer>(m: &BTreeMap<String, Expr>, s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &expr_to_json(v))?;
    }
    map.end()
}
