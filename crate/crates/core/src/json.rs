//! JSON input/output for pmfs.
//!
//! The document format is `{"d": 3, "probs": {"110": 0.2, ...}}`. An outcome
//! key lists the coordinates in order, so character `j` (0-based) is the value
//! of coordinate `j+1`; `"110"` means coordinates `(1, 1, 0)`. Omitted
//! outcomes carry zero mass.
//!
//! Float mode reads JSON numbers directly. Rational mode accepts numbers and
//! strings (`"7/20"`, `"0.35"`, `"2"`); a decimal literal is converted exactly
//! from its digits, never through a binary float. Output is deterministic:
//! keys are emitted in outcome-index order with a stable textual form.

use std::collections::BTreeMap;

use num::rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::pmf::Pmf;
use crate::scalar::{rational_from_str, Scalar};

/// Which arithmetic backs a computation: IEEE doubles or arbitrary-precision
/// rationals.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum ArithmeticMode {
    #[default]
    Float,
    Rational,
}

impl std::str::FromStr for ArithmeticMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(ArithmeticMode::Float),
            "rational" => Ok(ArithmeticMode::Rational),
            other => Err(Error::MalformedDocument(format!(
                "unknown arithmetic mode {other:?}; expected \"float\" or \"rational\""
            ))),
        }
    }
}

/// A pmf in whichever arithmetic the caller selected.
#[derive(Clone, Debug)]
pub enum AnyPmf {
    Float(Pmf<f64>),
    Rational(Pmf<BigRational>),
}

impl AnyPmf {
    pub fn d(&self) -> usize {
        match self {
            AnyPmf::Float(f) => f.d(),
            AnyPmf::Rational(f) => f.d(),
        }
    }

    pub fn mode(&self) -> ArithmeticMode {
        match self {
            AnyPmf::Float(_) => ArithmeticMode::Float,
            AnyPmf::Rational(_) => ArithmeticMode::Rational,
        }
    }

    /// Float view, converting exact entries if necessary.
    pub fn as_float(&self) -> Pmf<f64> {
        match self {
            AnyPmf::Float(f) => f.clone(),
            AnyPmf::Rational(f) => f.to_f64(),
        }
    }

    /// Exact view; floats convert losslessly to the rationals they denote.
    pub fn as_rational(&self) -> Pmf<BigRational> {
        match self {
            AnyPmf::Float(f) => f.to_rational(),
            AnyPmf::Rational(f) => f.clone(),
        }
    }
}

#[derive(Deserialize)]
struct RawDoc {
    d: usize,
    probs: BTreeMap<String, Value>,
}

fn number_to_f64(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::InvalidNumber {
            text: n.to_string(),
            reason: "not representable as f64".into(),
        }),
        Value::String(s) => {
            // Strings are tolerated in float mode by exact parse then rounding,
            // so "1/3" means the same pmf in either mode up to rounding.
            Ok(rational_from_str(s)?.to_f64())
        }
        other => Err(Error::InvalidNumber {
            text: other.to_string(),
            reason: "expected a number or numeric string".into(),
        }),
    }
}

fn number_to_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            // Integers convert exactly; a decimal JSON literal is re-parsed
            // from its text so 0.2 means 1/5, not the nearest double.
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_int(i))
            } else {
                rational_from_str(&n.to_string())
            }
        }
        Value::String(s) => rational_from_str(s),
        other => Err(Error::InvalidNumber {
            text: other.to_string(),
            reason: "expected a number or numeric string".into(),
        }),
    }
}

/// Parses a pmf document in the requested arithmetic.
pub fn parse_pmf(text: &str, mode: ArithmeticMode) -> Result<AnyPmf> {
    let raw: RawDoc = serde_json::from_str(text)
        .map_err(|e| Error::MalformedDocument(format!("invalid pmf document: {e}")))?;
    match mode {
        ArithmeticMode::Float => {
            let mut entries = Vec::with_capacity(raw.probs.len());
            for (k, v) in &raw.probs {
                entries.push((Outcome::from_key(k, raw.d)?, number_to_f64(v)?));
            }
            Ok(AnyPmf::Float(Pmf::from_support(raw.d, entries)?))
        }
        ArithmeticMode::Rational => {
            let mut entries = Vec::with_capacity(raw.probs.len());
            for (k, v) in &raw.probs {
                entries.push((Outcome::from_key(k, raw.d)?, number_to_rational(v)?));
            }
            Ok(AnyPmf::Rational(Pmf::from_support(raw.d, entries)?))
        }
    }
}

/// Renders a rational for output: integers bare, otherwise `"n/d"`.
pub fn rational_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn float_value(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(x.to_string()))
}

/// Serializes a pmf document. Zero-mass outcomes are omitted; support keys
/// appear in outcome-index order.
pub fn emit_pmf(pmf: &AnyPmf) -> String {
    let d = pmf.d();
    let mut probs = serde_json::Map::new();
    match pmf {
        AnyPmf::Float(f) => {
            for (o, v) in f.support() {
                probs.insert(o.key(d), float_value(*v));
            }
        }
        AnyPmf::Rational(f) => {
            for (o, v) in f.support() {
                probs.insert(o.key(d), Value::String(rational_string(v)));
            }
        }
    }
    let doc = serde_json::json!({ "d": d, "probs": probs });
    serde_json::to_string_pretty(&doc).expect("pmf document serializes")
}
