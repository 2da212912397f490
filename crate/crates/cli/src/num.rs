//! Fixed-precision number formatting for JSON and CSV output.

use serde_json::{Number, Value};

/// Significant digits of every printed number.
pub const SIG_DIGITS: usize = 15;

/// `v` with 15 significant digits: positional notation for exponents in
/// `-3..15`, scientific otherwise. Non-finite values give `None`.
pub fn fmt(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    if v == 0.0 {
        return Some("0".to_owned());
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let exp: i32 = sci[sci.find('e')? + 1..].parse().ok()?;
    if (-3..15).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        Some(format!("{v:.decimals$}"))
    } else {
        Some(sci)
    }
}

/// CSV field: the formatted number, or empty for a missing value.
pub fn field(v: Option<f64>) -> String {
    v.and_then(fmt).unwrap_or_default()
}

/// Plain-text number; non-finite values spelled out.
pub fn text(v: f64) -> String {
    fmt(v).unwrap_or_else(|| v.to_string())
}

/// JSON number with 15 significant digits; `null` when not finite.
pub fn json(v: f64) -> Value {
    fmt(v)
        .and_then(|s| s.parse::<Number>().ok())
        .map_or(Value::Null, Value::Number)
}

pub fn json_pair(v: funk_finsler::Vec2) -> Value {
    Value::Array(vec![json(v.x), json(v.y)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits() {
        assert_eq!(fmt(1.0 / 1.0_f64.tanh()).unwrap(), "1.31303528549933");
        assert_eq!(fmt(0.0).unwrap(), "0");
        assert_eq!(fmt(-0.25).unwrap(), "-0.250000000000000");
        assert_eq!(fmt(1234.5).unwrap(), "1234.50000000000");
        assert_eq!(fmt(1.5e-7).unwrap(), "1.50000000000000e-7");
        assert_eq!(fmt(9.999999999999999).unwrap(), "10.0000000000000");
        assert_eq!(fmt(f64::NAN), None);
    }

    #[test]
    fn json_keeps_digits() {
        let v = serde_json::json!({ "F": json(0.1 + 0.2), "bad": json(f64::INFINITY) });
        assert_eq!(v.to_string(), r#"{"F":0.300000000000000,"bad":null}"#);
    }
}
