//! Exact integers and rationals, their text forms, and decimal rendering.
//!
//! Rationals travel as reduced `"p/q"` strings (`"p"` when the denominator
//! is one). Decimals are produced only at output boundaries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

pub fn rat(numer: i64, denom: i64) -> Rat {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_from(n: &Int) -> Rat {
    BigRational::from_integer(n.clone())
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn fmt_rat(q: &Rat) -> String {
    q.to_string()
}

pub fn parse_int(s: &str) -> Result<Int> {
    let t = s.trim();
    t.parse::<BigInt>()
        .map_err(|_| Error::Input(format!("not an integer: {t:?}")))
}

/// Parses `"p"`, `"p/q"` or a finite decimal like `"-0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Input(format!("not a rational: {t:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Input(format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole = whole.trim_start_matches(['-', '+']);
        if !whole.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(digits, scale);
        return Ok(if negative { -q } else { q });
    }
    t.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Fixed-point decimal with exactly `digits` fractional digits, rounding
/// half away from zero. Never prints a negative zero.
pub fn to_decimal(q: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2;
    let rounded = if &twice >= scaled.denom() { quot + 1 } else { quot };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// True when `q` is an integer.
pub fn is_integral(q: &Rat) -> bool {
    q.denom().is_one()
}

/// Small integers become JSON numbers; anything wider becomes a string.
pub fn int_to_json(n: &Int) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(n.to_string()),
    }
}

pub fn int_from_json(v: &serde_json::Value) -> Result<Int> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Input(format!("not an integer: {n}"))),
        serde_json::Value::String(s) => parse_int(s),
        other => Err(Error::Input(format!("expected integer, got {other}"))),
    }
}

/// Serde adapter: a rational as its `"p/q"` string.
pub mod rat_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}
