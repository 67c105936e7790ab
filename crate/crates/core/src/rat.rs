//! Exact rationals and their text/JSON encodings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn half(x: &Q) -> Q {
    x / qi(2)
}

/// `"3/4"`, `"-2"`; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad rational '{s}'"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad rational '{s}'"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(Q::new(n, d))
}

pub fn to_json(x: &Q) -> Value {
    Value::Array(vec![
        Value::String(x.numer().to_string()),
        Value::String(x.denom().to_string()),
    ])
}

pub fn from_json(v: &Value) -> Result<Q, String> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            let part = |x: &Value| -> Result<BigInt, String> {
                match x {
                    Value::String(s) => s.trim().parse().map_err(|_| format!("bad integer '{s}'")),
                    Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
                    _ => Err(format!("bad rational component {x}")),
                }
            };
            let (n, d) = (part(&a[0])?, part(&a[1])?);
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Q::new(n, d))
        }
        Value::String(s) => parse_q(s),
        Value::Number(n) if n.is_i64() => Ok(qi(n.as_i64().unwrap())),
        _ => Err(format!("expected [\"num\",\"den\"], got {v}")),
    }
}

pub fn floor_i64(x: &Q) -> i64 {
    let f = x.floor().to_integer();
    i64::try_from(f).unwrap_or(if x.is_negative() { i64::MIN } else { i64::MAX })
}

pub fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
