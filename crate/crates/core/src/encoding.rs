//! JSON encodings shared by the library and the command line.
//!
//! Rationals are strings `"a/b"` (or `"a"`); JSON integers are accepted on
//! input, JSON floats never are.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::arith::{fmt_rational, parse_rational};
use crate::classify::{BundleData, ConjugacyReport, Conjugacy, IsoVerdict, MonomialMatrix};
use crate::error::{Error, Result};
use crate::ktheory::{IntMatrix, KElement, QGroupElement, RatMatrix, ScaledSide, WeakVerdict};
use crate::multiplier::{SolenoidClass, SymmetrizerDescription};
use crate::nadic::{NadicInteger, NadicRepr, QnRational};
use crate::xi::{Angle, XiElement};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::Number(n) => Err(parse_err(format!("floating-point value {n} rejected; write it as \"a/b\""))),
        other => Err(parse_err(format!("expected a rational string, got {other}"))),
    }
}

pub fn integer_from_json(v: &Value) -> Result<BigInt> {
    let r = rational_from_json(v)?;
    if !r.is_integer() {
        return Err(parse_err(format!("expected an integer, got {}", fmt_rational(&r))));
    }
    Ok(r.to_integer())
}

pub fn rational_to_json(r: &BigRational) -> Value {
    Value::String(fmt_rational(r))
}

fn big_to_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(i) => json!(i),
        None => Value::String(b.to_string()),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

fn as_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("expected an object, got {v}")))
}

pub fn nadic_from_json(v: &Value, modulus: u64) -> Result<NadicInteger> {
    let obj = as_object(v)?;
    match (obj.get("value"), obj.get("prefix")) {
        (Some(val), None) => NadicInteger::from_rational(rational_from_json(val)?, modulus),
        (None, Some(Value::Array(ds))) => {
            let digits = ds
                .iter()
                .map(|d| d.as_u64().ok_or_else(|| parse_err(format!("digit {d} is not a natural number"))))
                .collect::<Result<Vec<_>>>()?;
            NadicInteger::from_prefix(digits, modulus)
        }
        _ => Err(parse_err("carrier must have exactly one of \"value\" or \"prefix\" (an array)")),
    }
}

pub fn nadic_to_json(j: &NadicInteger) -> Value {
    match j.repr() {
        NadicRepr::RationalValue(r) => json!({ "value": fmt_rational(r) }),
        NadicRepr::FinitePrefix(d) => json!({ "prefix": d }),
    }
}

pub fn modulus_from_json(v: &Value) -> Result<u64> {
    v.as_u64().ok_or_else(|| parse_err(format!("modulus must be a natural number, got {v}")))
}

/// `{"N": 3, "alpha0": "1/2", "carrier": {"value": "-1/2"}}`.
pub fn element_from_json(v: &Value) -> Result<XiElement> {
    let obj = as_object(v)?;
    let n = modulus_from_json(field(obj, "N")?)?;
    let base = rational_from_json(field(obj, "alpha0")?)?;
    let carrier = nadic_from_json(field(obj, "carrier")?, n)?;
    if obj.get("surrogate").and_then(Value::as_bool).unwrap_or(false) {
        XiElement::new_surrogate(n, base, carrier)
    } else {
        XiElement::new(n, base, carrier)
    }
}

/// Parses an element file, reporting JSON syntax errors with line and column.
pub fn element_from_str(text: &str) -> Result<XiElement> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    element_from_json(&v)
}

pub fn element_to_json(a: &XiElement) -> Value {
    let mut v = json!({
        "N": a.modulus(),
        "alpha0": fmt_rational(a.base()),
        "carrier": nadic_to_json(a.carrier()),
    });
    if a.is_surrogate() {
        v["surrogate"] = Value::Bool(true);
    }
    v
}

/// `{"num": "p", "exp": k}`.
pub fn qn_from_json(v: &Value, modulus: u64) -> Result<QnRational> {
    let obj = as_object(v)?;
    let num = integer_from_json(field(obj, "num")?)?;
    let exp = field(obj, "exp")?
        .as_u64()
        .and_then(|e| u32::try_from(e).ok())
        .ok_or_else(|| parse_err("\"exp\" must be a natural number"))?;
    QnRational::new(num, exp, modulus)
}

pub fn qn_to_json(x: &QnRational) -> Value {
    json!({ "num": x.numer().to_string(), "exp": x.exp() })
}

/// Reads `"a/b"` as an element of ℚ_N.
pub fn qn_from_str(s: &str, modulus: u64) -> Result<QnRational> {
    QnRational::from_rational(&parse_rational(s)?, modulus)
}

pub fn angle_to_json(a: &Angle) -> Value {
    rational_to_json(a.value())
}

pub fn k_element_to_json(e: &KElement) -> Value {
    json!({ "first": fmt_rational(e.first()), "second": qn_to_json(e.second()) })
}

pub fn q_element_to_json(a: &QGroupElement) -> Value {
    json!({ "z": a.z().to_string(), "x": qn_to_json(a.x()) })
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn rat_matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn symmetrizer_to_json(s: &SymmetrizerDescription) -> Value {
    match s {
        SymmetrizerDescription::Trivial => json!({ "variant": "Trivial" }),
        SymmetrizerDescription::Full => json!({ "variant": "Full" }),
        SymmetrizerDescription::ScaledLattice { b } => json!({ "variant": "ScaledLattice", "b": big_to_json(b) }),
    }
}

pub fn class_to_json(c: SolenoidClass) -> Value {
    Value::String(
        match c {
            SolenoidClass::RationalPeriodic => "RationalPeriodic",
            SolenoidClass::RationalAperiodic => "RationalAperiodic",
            SolenoidClass::IrrationalSurrogate => "IrrationalSurrogate",
        }
        .into(),
    )
}

pub fn verdict_to_json(v: &IsoVerdict) -> Value {
    match v {
        IsoVerdict::Yes(w) => json!({
            "verdict": "Yes",
            "witness": {
                "R": w.r,
                "mu": w.mu,
                "nu": w.nu,
                "direction": w.direction.to_string(),
                "p": w.p,
                "sign": if w.sign > 0 { "+" } else { "-" },
                "shift": w.shift,
                "orderings": w.orderings,
            }
        }),
        IsoVerdict::No(reason) => json!({ "verdict": "No", "reason": reason }),
        IsoVerdict::Unknown { bound, note } => json!({ "verdict": "Unknown", "bound": bound, "note": note }),
    }
}

pub fn weak_to_json(v: &WeakVerdict) -> Value {
    match v {
        WeakVerdict::Yes { k, scaled } => json!({
            "verdict": "Yes",
            "k": k,
            "scaled": match scaled { ScaledSide::First => "first", ScaledSide::Second => "second" },
        }),
        WeakVerdict::No { reason } => json!({ "verdict": "No", "reason": reason }),
        WeakVerdict::Unknown { bound } => json!({ "verdict": "Unknown", "bound": bound }),
    }
}

pub fn conjugacy_to_json(r: &ConjugacyReport) -> Value {
    json!({
        "conjugate": match r.conclusion { Conjugacy::NotConjugate => "not_conjugate", Conjugacy::NoConclusion => "no_conclusion" },
        "message": r.message,
    })
}

fn monomial_to_json(m: &MonomialMatrix) -> Value {
    json!({
        "perm": m.perm,
        "phases": m.phases.iter().map(angle_to_json).collect::<Vec<_>>(),
    })
}

pub fn bundle_to_json(b: &BundleData) -> Value {
    json!({
        "k": b.k,
        "q": big_to_json(&b.q),
        "p": big_to_json(&b.p),
        "lambda": angle_to_json(&b.lambda),
        "base": b.base,
        "u": monomial_to_json(&b.u),
        "v": monomial_to_json(&b.v),
        "commutation_holds": b.commutation_holds(),
        "orders_hold": b.orders_hold(),
    })
}
