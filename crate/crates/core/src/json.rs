//! Big integers in JSON: numbers where the schema has numbers, decimal strings
//! where it has strings. Both are accepted on input.

use num_bigint::BigUint;
use serde_json::Value;

use crate::error::{Error, Result};

const MAX_DIGITS: usize = 10_000;

/// A JSON number carrying every digit of `x`.
pub fn big_number(x: &BigUint) -> Value {
    serde_json::from_str(&x.to_string()).expect("decimal digits form a JSON number")
}

pub fn parse_big(v: &Value) -> Result<BigUint> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::Parse(format!("expected an integer, got {v}"))),
    };
    if s.is_empty() || s.len() > MAX_DIGITS || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("expected a non-negative integer, got {s:?}")));
    }
    s.parse()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_keep_all_digits() {
        let x: BigUint = "123456789012345678901234567890".parse().unwrap();
        let v = big_number(&x);
        assert!(v.is_number());
        assert_eq!(v.to_string(), "123456789012345678901234567890");
        assert_eq!(parse_big(&v).unwrap(), x);
        assert_eq!(parse_big(&Value::String("42".into())).unwrap(), 42u32.into());
        assert!(parse_big(&serde_json::json!(-1)).is_err());
        assert!(parse_big(&serde_json::json!(1.5)).is_err());
        assert!(parse_big(&serde_json::json!("1e3")).is_err());
    }
}
