//! JSON and CSV emission. JSON objects use sorted keys, so identical values
//! always serialize to identical bytes.

use std::fs;
use std::io::Write;
use std::path::Path;

use linkinv_core::angle::{Angle, AngleRecord};
use linkinv_core::linalg::Rat;
use linkinv_core::semicontinuity::{BoundRecord, Record, StrictRecord};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::Result;

/// Digits after the point for enclosed (irrational) angles.
const DECIMAL_PLACES: usize = 20;

/// `p/q`, or just `p` for integers.
pub fn rat_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact decimal expansion of `x` rounded half away from zero.
pub fn decimal_string(x: &Rat, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (x.abs() * Rat::from_integer(scale)).round().to_integer();
    let digits = format!("{:0>width$}", scaled.to_string(), width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

/// Big integers as JSON numbers without going through floating point.
pub fn big_number(x: &BigInt) -> Value {
    serde_json::from_str(&x.to_string()).expect("integer literal")
}

pub fn angle_fields(angle: &Angle, map: &mut Map<String, Value>) {
    match angle {
        Angle::Exact(x) => {
            map.insert("value".into(), Value::String(rat_string(x)));
        }
        Angle::Enclosure { .. } => {
            map.insert("value".into(), Value::String(decimal_string(&angle.midpoint(), DECIMAL_PLACES)));
            map.insert("enclosure_width".into(), Value::String(format!("{:.3e}", angle.width().to_f64().unwrap_or(f64::NAN))));
        }
    }
}

/// `[{"value", "multiplicity", "enclosure_width"?}, ...]` in increasing order.
pub fn angle_records(records: &[AngleRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                let mut m = Map::new();
                angle_fields(&r.angle, &mut m);
                m.insert("multiplicity".into(), r.multiplicity.into());
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn bound_json(b: &BoundRecord) -> Value {
    let mut m = Map::new();
    m.insert("holds".into(), b.holds.into());
    m.insert("lhs".into(), b.lhs.into());
    m.insert("rhs".into(), b.rhs.into());
    Value::Object(m)
}

pub fn record_json(r: &Record, bound: Option<&BoundRecord>) -> Value {
    let mut m = Map::new();
    m.insert("admissible".into(), r.admissible.into());
    m.insert("alpha".into(), rat_string(&r.alpha).into());
    m.insert("lhs_inside".into(), r.lhs_inside.into());
    m.insert("lhs_outside".into(), r.lhs_outside.into());
    m.insert("rhs_inside".into(), r.rhs_inside.into());
    m.insert("rhs_outside".into(), r.rhs_outside.into());
    m.insert("slack_inside".into(), r.slack_inside.into());
    m.insert("slack_outside".into(), r.slack_outside.into());
    if let Some(b) = bound {
        m.insert("signature_bound".into(), bound_json(b));
    }
    Value::Object(m)
}

pub fn strict_json(r: &StrictRecord) -> Value {
    let mut m = Map::new();
    m.insert("alpha".into(), rat_string(&r.alpha).into());
    m.insert("bound".into(), bound_json(&r.bound));
    Value::Object(m)
}

/// Pretty JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes to `out` through a temporary file in the same directory, so a
/// failed run leaves no partial file; without `out`, writes to stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
                _ => std::env::current_dir()?,
            };
            fs::create_dir_all(&dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rat_string(&r(5, 6)), "5/6");
        assert_eq!(rat_string(&r(4, 2)), "2");
        assert_eq!(rat_string(&r(-1, 3)), "-1/3");
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&r(1, 3), 5), "0.33333");
        assert_eq!(decimal_string(&r(2, 3), 5), "0.66667");
        assert_eq!(decimal_string(&r(-5, 4), 1), "-1.3");
        assert_eq!(decimal_string(&r(1, 1_000_000), 3), "0.000");
        assert_eq!(decimal_string(&r(7, 1), 2), "7.00");
    }

    #[test]
    fn keys_are_sorted() {
        let v = record_json(
            &Record {
                alpha: r(1, 2),
                lhs_inside: 1,
                rhs_inside: 0,
                lhs_outside: 1,
                rhs_outside: 0,
                slack_inside: 1,
                slack_outside: 1,
                admissible: true,
            },
            None,
        );
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with(r#"{"admissible":true,"alpha":"1/2","lhs_inside":1"#), "{text}");
    }

    #[test]
    fn big_integers_stay_exact() {
        let x: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big_number(&x).to_string(), "123456789012345678901234567890");
    }
}
