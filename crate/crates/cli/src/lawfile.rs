//! Law files: `{"f":[a,b,c],"fp":[a,b,c],"F":[A,B,C],"e":[[x,y],[x,y],[x,y],[x,y]]}`.
//!
//! Integers are JSON numbers when they fit in 53 bits and decimal strings
//! otherwise. Both spellings are accepted on input.

use std::fmt;
use std::str::FromStr;

use gausscomp_core::{BilinearLaw, Form, Int, Vec2};
use serde::Serialize;
use serde_json::{Map, Value};

/// Largest magnitude written as a bare JSON number.
const SAFE: i64 = (1 << 53) - 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFile {
    pub f: Form,
    pub fp: Form,
    pub big_f: Form,
    pub law: BilinearLaw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaError {
    Json(String),
    NotAnObject,
    Missing(&'static str),
    Mistyped {
        field: &'static str,
        expected: &'static str,
    },
    ZeroForm(&'static str),
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaError::Json(msg) => write!(f, "invalid JSON: {msg}"),
            SchemaError::NotAnObject => f.write_str("law file must be a JSON object"),
            SchemaError::Missing(field) => write!(f, "missing field: {field}"),
            SchemaError::Mistyped { field, expected } => {
                write!(f, "mistyped field: {field} (expected {expected})")
            }
            SchemaError::ZeroForm(field) => write!(f, "field {field}: zero form"),
        }
    }
}

impl std::error::Error for SchemaError {}

struct Num<'a>(&'a Int);

impl Serialize for Num<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(n) if (-SAFE..=SAFE).contains(&n) => s.serialize_i64(n),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Wire<'a> {
    f: [Num<'a>; 3],
    fp: [Num<'a>; 3],
    #[serde(rename = "F")]
    big_f: [Num<'a>; 3],
    e: [[Num<'a>; 2]; 4],
}

fn triple(f: &Form) -> [Num<'_>; 3] {
    [Num(f.a()), Num(f.b()), Num(f.c())]
}

fn pair(v: &Vec2) -> [Num<'_>; 2] {
    [Num(&v.x), Num(&v.y)]
}

impl LawFile {
    /// Compact JSON with fields in the order `f, fp, F, e`.
    pub fn to_json(&self) -> String {
        let [e11, e12, e21, e22] = self.law.images();
        let wire = Wire {
            f: triple(&self.f),
            fp: triple(&self.fp),
            big_f: triple(&self.big_f),
            e: [pair(e11), pair(e12), pair(e21), pair(e22)],
        };
        serde_json::to_string(&wire).expect("serializing integers cannot fail")
    }

    pub fn from_json(text: &str) -> Result<LawFile, SchemaError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
        let obj = value.as_object().ok_or(SchemaError::NotAnObject)?;
        let f = form_field(obj, "f")?;
        let fp = form_field(obj, "fp")?;
        let big_f = form_field(obj, "F")?;

        let e = obj.get("e").ok_or(SchemaError::Missing("e"))?;
        let bad_e = SchemaError::Mistyped {
            field: "e",
            expected: "four pairs of integers",
        };
        let rows = e.as_array().filter(|r| r.len() == 4).ok_or(bad_e.clone())?;
        let mut vecs = Vec::with_capacity(4);
        for row in rows {
            let xy = row
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or(bad_e.clone())?;
            let x = integer(&xy[0]).ok_or(bad_e.clone())?;
            let y = integer(&xy[1]).ok_or(bad_e.clone())?;
            vecs.push(Vec2 { x, y });
        }
        let [e11, e12, e21, e22]: [Vec2; 4] = vecs.try_into().expect("length checked");
        Ok(LawFile {
            f,
            fp,
            big_f,
            law: BilinearLaw::new(e11, e12, e21, e22),
        })
    }
}

fn form_field(obj: &Map<String, Value>, field: &'static str) -> Result<Form, SchemaError> {
    let value = obj.get(field).ok_or(SchemaError::Missing(field))?;
    let bad = SchemaError::Mistyped {
        field,
        expected: "three integers",
    };
    let items = value
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or(bad.clone())?;
    let mut coeffs = Vec::with_capacity(3);
    for item in items {
        coeffs.push(integer(item).ok_or(bad.clone())?);
    }
    let [a, b, c]: [Int; 3] = coeffs.try_into().expect("length checked");
    Form::new(a, b, c).map_err(|_| SchemaError::ZeroForm(field))
}

/// A JSON number without fraction or exponent, or a string of decimal digits.
fn integer(value: &Value) -> Option<Int> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return None,
    };
    let digits = text.strip_prefix('-').unwrap_or(&text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Int::from_str(&text).ok()
}
