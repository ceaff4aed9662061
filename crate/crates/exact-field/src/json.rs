//! JSON forms: `{"vars":[..],"terms":[[[e..],"p/q"],..]}` for polynomials and
//! `{"num":..,"den":..}` for rational functions.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{FieldError, Result};
use crate::matrix::{Matrix, OpMatrix};
use crate::poly::MPoly;
use crate::rfunc::RFunc;
use crate::scalar::{format_scalar, parse_scalar};
use crate::vars::VarTable;

pub fn mpoly_to_json(p: &MPoly) -> Value {
    let terms: Vec<Value> = p.terms().iter().map(|(m, c)| json!([m.0, format_scalar(c)])).collect();
    json!({ "vars": p.vars().names(), "terms": terms })
}

pub fn rfunc_to_json(r: &RFunc) -> Value {
    json!({ "num": mpoly_to_json(r.num()), "den": mpoly_to_json(r.den()) })
}

fn parse_err(msg: &str) -> FieldError {
    FieldError::Parse(msg.to_string())
}

pub fn mpoly_from_json(v: &Value) -> Result<MPoly> {
    let names: Vec<String> = v["vars"]
        .as_array()
        .ok_or_else(|| parse_err("missing vars"))?
        .iter()
        .map(|n| n.as_str().map(str::to_string).ok_or_else(|| parse_err("variable name")))
        .collect::<Result<_>>()?;
    let table = VarTable::from_names(&names)?;
    mpoly_from_json_in(v, &table)
}

/// Parses a polynomial into an existing table, matching variables by name.
pub fn mpoly_from_json_in(v: &Value, table: &Arc<VarTable>) -> Result<MPoly> {
    let names: Vec<&str> = v["vars"]
        .as_array()
        .ok_or_else(|| parse_err("missing vars"))?
        .iter()
        .map(|n| n.as_str().ok_or_else(|| parse_err("variable name")))
        .collect::<Result<_>>()?;
    let idx: Vec<usize> = names.iter().map(|n| table.require(n)).collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for t in v["terms"].as_array().ok_or_else(|| parse_err("missing terms"))? {
        let e = t[0].as_array().ok_or_else(|| parse_err("exponent vector"))?;
        if e.len() != names.len() {
            return Err(parse_err("exponent length"));
        }
        let mut exp = vec![0u32; table.len()];
        for (k, x) in e.iter().enumerate() {
            exp[idx[k]] = x.as_u64().ok_or_else(|| parse_err("exponent"))? as u32;
        }
        let c = parse_scalar(t[1].as_str().ok_or_else(|| parse_err("coefficient"))?)?;
        terms.push((exp, c));
    }
    Ok(MPoly::from_terms(table, terms))
}

pub fn rfunc_from_json(v: &Value) -> Result<RFunc> {
    let num = mpoly_from_json(&v["num"])?;
    let den = mpoly_from_json_in(&v["den"], num.vars())?;
    RFunc::new(num, den)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(rfunc_to_json).collect())).collect();
    Value::Array(rows)
}

pub fn opmatrix_to_json(m: &OpMatrix) -> Value {
    json!({ "rows": m.rows, "cols": m.cols, "entries": matrix_to_json(&m.matrix) })
}
