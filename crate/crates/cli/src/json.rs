//! JSON encoding shared by the command line and the service.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use whskit::symlaurent::MultiRational;
use whskit::wquiver::WeightedQuiver;

/// Integers below `2^53` in magnitude as numbers, larger ones as strings.
pub fn big(x: &BigInt) -> Value {
    const LIMIT: i64 = 1 << 53;
    match x.to_i64() {
        Some(v) if v.abs() < LIMIT => json!(v),
        _ => json!(x.to_string()),
    }
}

pub fn big_u128(x: u128) -> Value {
    big(&BigInt::from(x))
}

/// Integral rationals as [`big`], others as `"p/q"`.
pub fn rational(x: &BigRational) -> Value {
    if x.is_integer() {
        big(&x.to_integer())
    } else {
        json!(x.to_string())
    }
}

pub fn rationals(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

/// Floats rounded to six decimals so output is stable across platforms.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return json!(x.to_string());
    }
    let r = (x * 1e6).round() / 1e6;
    let r = if r == 0.0 && r.is_sign_negative() {
        0.0
    } else {
        r
    };
    json!(r)
}

pub fn rendered(vars: &[MultiRational]) -> Value {
    Value::Array(vars.iter().map(|v| json!(v.to_string())).collect())
}

pub fn quiver(q: &WeightedQuiver) -> Value {
    serde_json::to_value(q).expect("quiver serializes")
}
