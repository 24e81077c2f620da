use serde_json::Value;

use k3wall::exact::{parse_rat, to_decimal};

pub const DECIMAL_DIGITS: usize = 9;

/// Strings of the form `p` or `p/q` (optionally signed).
fn is_rational_text(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut parts = body.splitn(2, '/');
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    match (parts.next(), parts.next()) {
        (Some(p), None) => digits(p),
        (Some(p), Some(q)) => digits(p) && digits(q),
        _ => false,
    }
}

/// Rewrites every exact rational string in `v` as a fixed-precision decimal.
pub fn decimalize(v: &mut Value) {
    match v {
        Value::String(s) if is_rational_text(s) => {
            if let Ok(q) = parse_rat(s) {
                *s = to_decimal(&q, DECIMAL_DIGITS);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(decimalize),
        Value::Object(map) => map.values_mut().for_each(decimalize),
        _ => {}
    }
}

pub fn render(mut v: Value, decimal: bool) -> String {
    if decimal {
        decimalize(&mut v);
    }
    let mut text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    text.push('\n');
    text
}
