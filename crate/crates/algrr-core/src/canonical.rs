//! Canonical JSON forms for result records.
//!
//! Rationals serialize as `{"num": ..., "den": ...}` with positive,
//! coprime denominator; components within `i64` range appear as JSON
//! numbers, larger ones as decimal strings. Series serialize as arrays
//! of `[monomial, rational]` pairs in canonical monomial order. All
//! record fields are emitted in fixed insertion order, so serialization
//! is byte-stable across runs.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::rational::Rat;
use crate::series::ChernSeries;

fn big_to_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

/// `{"num": ..., "den": ...}` with den > 0 and gcd(num, den) = 1.
pub fn rational_value(r: &Rat) -> Value {
    json!({
        "num": big_to_value(r.numer()),
        "den": big_to_value(r.denom()),
    })
}

/// `[[monomial, rational], ...]` in canonical (graded, then lexicographic)
/// monomial order; the empty monomial renders as "1".
pub fn series_value(series: &ChernSeries) -> Value {
    Value::Array(
        series
            .rendered_terms()
            .iter()
            .map(|(mono, coeff)| {
                Value::Array(vec![Value::String(mono.clone()), rational_value(coeff)])
            })
            .collect(),
    )
}

/// A rational matrix as nested arrays.
pub fn matrix_value(matrix: &[Vec<Rat>]) -> Value {
    Value::Array(
        matrix
            .iter()
            .map(|row| Value::Array(row.iter().map(rational_value).collect()))
            .collect(),
    )
}

/// An ordered record with a leading `"kind"` discriminator.
pub fn record(kind: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("kind".to_string(), Value::String(kind.to_string()));
    for (key, value) in fields {
        map.insert(key.to_string(), value);
    }
    Value::Object(map)
}

/// Compact, deterministic rendering of a record.
pub fn to_canonical_string(value: &Value) -> String {
    serde_json::to_string(value).expect("records contain no non-serializable values")
}
