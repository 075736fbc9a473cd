//! JSON formats for systems, points, functions and elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Element, Monomial};
use crate::error::{Error, Result};
use crate::functions::{Coefficient, LocallyConstantFunction as Lcf, QComplex, Rational};
use crate::symbolic::{parse_word, word_to_string, Point, ShiftSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SystemSpec {
    FullShift { full_shift: usize },
    Adjacency { alphabet: usize, adjacency: Vec<Vec<u8>> },
}

impl SystemSpec {
    pub fn build(&self) -> Result<ShiftSystem> {
        match self {
            SystemSpec::FullShift { full_shift } => ShiftSystem::full_shift(*full_shift),
            SystemSpec::Adjacency { alphabet, adjacency } => {
                if adjacency.len() != *alphabet {
                    return Err(Error::InvalidSystem(format!(
                        "alphabet is {alphabet} but the adjacency matrix has {} rows",
                        adjacency.len()
                    )));
                }
                let mut rows = Vec::with_capacity(adjacency.len());
                for (i, row) in adjacency.iter().enumerate() {
                    let parsed: Option<Vec<bool>> = row
                        .iter()
                        .map(|&v| match v {
                            0 => Some(false),
                            1 => Some(true),
                            _ => None,
                        })
                        .collect();
                    rows.push(parsed.ok_or_else(|| {
                        Error::InvalidSystem(format!("adjacency row {i} has an entry other than 0 or 1"))
                    })?);
                }
                ShiftSystem::new(rows)
            }
        }
    }

    pub fn from_system(sys: &ShiftSystem) -> Self {
        SystemSpec::Adjacency {
            alphabet: sys.alphabet_size(),
            adjacency: sys
                .adjacency()
                .iter()
                .map(|row| row.iter().map(|&b| b as u8).collect())
                .collect(),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("{e}"))
}

pub fn parse_system(text: &str) -> Result<ShiftSystem> {
    let spec: SystemSpec = serde_json::from_str(text).map_err(parse_err)?;
    spec.build()
}

pub fn system_to_json(sys: &ShiftSystem) -> Value {
    serde_json::to_value(SystemSpec::from_system(sys)).expect("plain data serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub pre: String,
    pub per: String,
}

pub fn point_to_json(x: &Point) -> Value {
    json!({"pre": word_to_string(x.preperiod()), "per": word_to_string(x.period())})
}

pub fn point_from_json(sys: &ShiftSystem, v: &Value) -> Result<Point> {
    let spec: PointSpec = serde_json::from_value(v.clone()).map_err(parse_err)?;
    let d = sys.alphabet_size();
    Point::in_system(sys, parse_word(&spec.pre, d)?, parse_word(&spec.per, d)?)
}

/// Integers are written as JSON numbers when they fit in an `i64` and as
/// decimal strings otherwise; both forms are accepted on input.
fn int_to_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("{s:?} is not an integer"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

fn rational_from_parts(num: &Value, den: &Value) -> Result<Rational> {
    let den = int_from_json(den)?;
    if den == BigInt::from(0) {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(int_from_json(num)?, den))
}

pub fn function_to_json(f: &Lcf) -> Value {
    let table: serde_json::Map<String, Value> = f
        .table()
        .iter()
        .map(|(w, z)| {
            let parts = [z.re.numer(), z.re.denom(), z.im.numer(), z.im.denom()];
            (word_to_string(w), Value::Array(parts.iter().map(|n| int_to_json(n)).collect()))
        })
        .collect();
    json!({"depth": f.depth(), "table": table})
}

pub fn function_from_json(sys: &Arc<ShiftSystem>, v: &Value) -> Result<Lcf> {
    let depth = v
        .get("depth")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("function needs a positive integer \"depth\"".into()))?
        as usize;
    let entries = v
        .get("table")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("function needs a \"table\" object".into()))?;
    let mut table = BTreeMap::new();
    for (word, value) in entries {
        let parts = value
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Parse(format!("table entry {word:?} must be [re_num, re_den, im_num, im_den]")))?;
        let re = rational_from_parts(&parts[0], &parts[1])?;
        let im = rational_from_parts(&parts[2], &parts[3])?;
        table.insert(parse_word(word, sys.alphabet_size())?, QComplex::new(re, im));
    }
    Lcf::from_table(sys.clone(), depth, table)
}

/// Only exact coefficients have a serialized form.
fn coefficient_to_json(c: &Coefficient) -> Result<Value> {
    match c.clone().normalized() {
        Coefficient::Exact(f) => Ok(function_to_json(&f)),
        _ => Err(Error::input("only exact rational coefficients can be serialized")),
    }
}

pub fn element_to_json(e: &Element) -> Result<Value> {
    let terms = e
        .terms()
        .iter()
        .map(|t| {
            Ok(json!({
                "f": coefficient_to_json(&t.f)?,
                "k": t.k,
                "l": t.l,
                "g": coefficient_to_json(&t.g)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "terms": terms }))
}

pub fn element_from_json(sys: &Arc<ShiftSystem>, v: &Value) -> Result<Element> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("element needs a \"terms\" array".into()))?;
    let power = |t: &Value, key: &str| {
        t.get(key)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| Error::Parse(format!("term needs a nonnegative integer {key:?}")))
    };
    let monomials = terms
        .iter()
        .map(|t| {
            let f = function_from_json(sys, t.get("f").unwrap_or(&Value::Null))?;
            let g = function_from_json(sys, t.get("g").unwrap_or(&Value::Null))?;
            Ok(Monomial::new(f, power(t, "k")?, power(t, "l")?, g))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Element::new(sys.clone(), monomials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{qcomplex, rat};

    #[test]
    fn system_specs() {
        let full = parse_system(r#"{"full_shift": 2}"#).unwrap();
        assert_eq!(full, ShiftSystem::full_shift(2).unwrap());
        let trap = parse_system(r#"{"alphabet": 2, "adjacency": [[1,0],[1,1]]}"#).unwrap();
        assert_eq!(trap, ShiftSystem::trap());
        assert_eq!(parse_system(&system_to_json(&trap).to_string()).unwrap(), trap);

        let err = parse_system(r#"{"alphabet": 2, "adjacency": [[1,0],[1,0]]}"#).unwrap_err();
        assert_eq!(err.to_string(), "shift not surjective: not a covering map");
        assert!(matches!(parse_system("{\n  \"full_shift\": \n}"), Err(Error::Parse(m)) if m.contains("line")));
        assert!(matches!(
            parse_system(r#"{"alphabet": 2, "adjacency": [[1,2],[1,1]]}"#),
            Err(Error::InvalidSystem(_))
        ));
    }

    #[test]
    fn points_round_trip() {
        let trap = ShiftSystem::trap();
        let x = point_from_json(&trap, &json!({"pre": "11", "per": "0"})).unwrap();
        assert_eq!(point_to_json(&x), json!({"pre": "11", "per": "0"}));
        assert!(point_from_json(&trap, &json!({"pre": "0", "per": "1"})).is_err());
    }

    #[test]
    fn functions_and_elements_round_trip() {
        let sys = Arc::new(ShiftSystem::full_shift(2).unwrap());
        let f = Lcf::indicator(sys.clone(), &[0, 1]).unwrap().scale(&qcomplex(rat(-3, 7), rat(1, 2)));
        let v = function_to_json(&f);
        assert_eq!(v["table"]["01"], json!([-3, 7, 1, 2]));
        assert_eq!(function_from_json(&sys, &v).unwrap(), f);

        let big = json!({"depth": 1, "table": {"0": ["123456789012345678901234567890", 1, 0, 1], "1": [0, 1, 0, 1]}});
        let g = function_from_json(&sys, &big).unwrap();
        assert_eq!(function_to_json(&g)["table"]["0"][0], json!("123456789012345678901234567890"));
        assert!(function_from_json(&sys, &json!({"depth": 1, "table": {"0": [1, 0, 0, 1], "1": [0, 1, 0, 1]}})).is_err());

        let e = Element::monomial(sys.clone(), Monomial::new(f.clone(), 2, 1, Lcf::one(sys.clone())));
        let back = element_from_json(&sys, &element_to_json(&e).unwrap()).unwrap();
        assert_eq!(back.terms(), e.terms());
    }
}
