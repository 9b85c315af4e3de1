//! Parsing of Seifert matrix files, scenarios and rational literals.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use linkinv_core::angle::{Angle, AngleRecord};
use linkinv_core::catalog::lookup;
use linkinv_core::linalg::Rat;
use linkinv_core::semicontinuity::Mode;
use linkinv_core::spectrum::Spectrum;
use linkinv_core::SeifertMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

/// Reads a file, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::input("<stdin>", e.to_string()));
    }
    fs::read_to_string(path).map_err(|e| CliError::input(path, e.to_string()))
}

/// A matrix argument: an existing file, or failing that a catalog name.
pub fn load_matrix(arg: &str) -> Result<SeifertMatrix> {
    if arg != "-" && !Path::new(arg).exists() {
        if let Ok(s) = lookup(arg) {
            return Ok(s);
        }
        return Err(CliError::input(arg, "no such file and not a catalog name"));
    }
    parse_seifert_text(&read_source(arg)?, arg)
}

pub fn parse_json(text: &str, origin: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| CliError::input(origin, format!("invalid JSON: {e}")))
}

pub fn parse_seifert_text(text: &str, origin: &str) -> Result<SeifertMatrix> {
    parse_seifert(&parse_json(text, origin)?, origin)
}

fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| CliError::input(at, format!("expected an object, found {}", kind(v))))
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn reject_unknown(map: &Map<String, Value>, allowed: &[&str], at: &str) -> Result<()> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(CliError::input(at, format!("unknown field \"{k}\""))),
        None => Ok(()),
    }
}

/// An integer literal. `1.0` and `1e0` are rejected: the number must be
/// written as an integer and fit in `i64`.
fn integer(v: &Value, at: &str) -> Result<i64> {
    let Value::Number(num) = v else {
        return Err(CliError::input(at, format!("expected an integer, found {}", kind(v))));
    };
    let text = num.to_string();
    if text.contains(['.', 'e', 'E']) {
        return Err(CliError::input(at, format!("expected an integer, found {text}")));
    }
    text.parse().map_err(|_| CliError::input(at, format!("integer {text} out of range")))
}

/// The Seifert matrix schema: `{"n": int >= 1, "matrix": [[int]], "name"?: string}`.
pub fn parse_seifert(v: &Value, at: &str) -> Result<SeifertMatrix> {
    let map = object(v, at)?;
    reject_unknown(map, &["n", "matrix", "name"], at)?;
    let n_at = format!("{at}: field \"n\"");
    let n = integer(map.get("n").ok_or_else(|| CliError::input(at, "missing field \"n\""))?, &n_at)?;
    let n = u32::try_from(n).ok().filter(|&n| n >= 1).ok_or_else(|| CliError::input(&n_at, format!("must be >= 1, got {n}")))?;
    let rows_v = map.get("matrix").ok_or_else(|| CliError::input(at, "missing field \"matrix\""))?;
    let rows_v = rows_v.as_array().ok_or_else(|| CliError::input(format!("{at}: field \"matrix\""), "expected an array of rows"))?;
    let mut rows = Vec::with_capacity(rows_v.len());
    for (i, row) in rows_v.iter().enumerate() {
        let row_at = format!("{at}: matrix[{i}]");
        let row = row.as_array().ok_or_else(|| CliError::input(&row_at, format!("expected an array, found {}", kind(row))))?;
        if row.len() != rows_v.len() {
            return Err(CliError::input(&row_at, format!("matrix is not square: row has {} entries, expected {}", row.len(), rows_v.len())));
        }
        let parsed = row.iter().enumerate().map(|(j, x)| integer(x, &format!("{at}: matrix[{i}][{j}]"))).collect::<Result<Vec<_>>>()?;
        rows.push(parsed);
    }
    let mut s = SeifertMatrix::new(n, rows)?;
    if let Some(name) = map.get("name") {
        let name = name.as_str().ok_or_else(|| CliError::input(format!("{at}: field \"name\""), "expected a string"))?;
        s = s.with_name(name);
    }
    Ok(s)
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`, exactly.
pub fn parse_rational(text: &str) -> Option<Rat> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let q = BigInt::from_str(q).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(BigInt::from_str(p).ok()?, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = BigInt::from_str(&format!("0{int}{frac}")).ok()?;
    let x = Rat::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
    Some(if neg { -x } else { x })
}

/// A spectral value: a `p/q` or decimal string, or an integer.
fn spectral_value(v: &Value, at: &str) -> Result<Rat> {
    let parsed = match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => None,
    };
    parsed.ok_or_else(|| CliError::input(at, format!("expected a rational such as \"5/6\", found {v}")))
}

/// `[v, ...]` or `[{"value": v, "multiplicity": k}, ...]`, values in `(0, 2]`.
pub fn parse_spectrum(v: &Value, at: &str) -> Result<Spectrum> {
    let items = v.as_array().ok_or_else(|| CliError::input(at, "expected an array of spectral values"))?;
    let mut entries = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let item_at = format!("{at}[{i}]");
        let (value, mult) = match item {
            Value::Object(m) => {
                reject_unknown(m, &["value", "multiplicity"], &item_at)?;
                let value = m.get("value").ok_or_else(|| CliError::input(&item_at, "missing field \"value\""))?;
                let mult = match m.get("multiplicity") {
                    Some(k) => integer(k, &format!("{item_at}.multiplicity"))?,
                    None => 1,
                };
                (spectral_value(value, &item_at)?, mult)
            }
            other => (spectral_value(other, &item_at)?, 1),
        };
        let mult = usize::try_from(mult).map_err(|_| CliError::input(&item_at, "multiplicity must be nonnegative"))?;
        if value <= Rat::zero() || value > Rat::one() + Rat::one() {
            return Err(CliError::input(&item_at, format!("spectral value {value} not in (0, 2]")));
        }
        entries.push(AngleRecord::new(Angle::Exact(value), mult));
    }
    Ok(Spectrum::new(entries)?)
}

/// One side of a scenario: a matrix or a bare spectrum.
#[derive(Clone, Debug)]
pub enum Entry {
    Matrix(SeifertMatrix),
    Spectrum(Spectrum),
}

/// A catalog name, an inline matrix object, or `{"spectrum": [...]}`.
fn parse_entry(v: &Value, at: &str) -> Result<Entry> {
    match v {
        Value::String(name) => lookup(name).map(Entry::Matrix).map_err(|e| CliError::input(at, e.to_string())),
        Value::Object(m) if m.contains_key("spectrum") => {
            reject_unknown(m, &["spectrum"], at)?;
            Ok(Entry::Spectrum(parse_spectrum(&m["spectrum"], &format!("{at}.spectrum"))?))
        }
        Value::Object(_) => Ok(Entry::Matrix(parse_seifert(v, at)?)),
        other => Err(CliError::input(at, format!("expected a catalog name or an object, found {}", kind(other)))),
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub mode: Mode,
    pub central: Entry,
    pub locals: Vec<Entry>,
    /// `b_n` of the whole cobordism; local mode only.
    pub betti_total: Option<u64>,
    /// Relative Betti number for the strict curve inequality.
    pub betti_relative: Option<i64>,
    /// Replaces the eigenvalue angles of the central entry as excluded `α`.
    pub forbidden: Option<Vec<Rat>>,
}

/// `{"mode", "central", "locals", "betti"?: {"total"?, "relative"?}, "forbidden"?}`.
pub fn parse_scenario(v: &Value, origin: &str) -> Result<Scenario> {
    let map = object(v, origin)?;
    reject_unknown(map, &["mode", "central", "locals", "betti", "forbidden"], origin)?;
    let field = |k: &str| map.get(k).ok_or_else(|| CliError::input(origin, format!("missing field \"{k}\"")));
    let mode_v = field("mode")?;
    let mode = mode_v
        .as_str()
        .and_then(Mode::parse)
        .ok_or_else(|| CliError::input(format!("{origin}: field \"mode\""), format!("expected \"local\", \"infinity\" or \"local_to_global\", found {mode_v}")))?;
    let central = parse_entry(field("central")?, &format!("{origin}: central"))?;
    let locals_v = field("locals")?.as_array().ok_or_else(|| CliError::input(format!("{origin}: field \"locals\""), "expected an array"))?;
    let locals = locals_v.iter().enumerate().map(|(i, l)| parse_entry(l, &format!("{origin}: locals[{i}]"))).collect::<Result<Vec<_>>>()?;

    let (mut betti_total, mut betti_relative) = (None, None);
    if let Some(b) = map.get("betti") {
        let b_at = format!("{origin}: betti");
        let b = object(b, &b_at)?;
        reject_unknown(b, &["total", "relative"], &b_at)?;
        if let Some(t) = b.get("total") {
            let t = integer(t, &format!("{b_at}.total"))?;
            betti_total = Some(u64::try_from(t).map_err(|_| CliError::input(&b_at, "total must be nonnegative"))?);
        }
        if let Some(r) = b.get("relative") {
            betti_relative = Some(integer(r, &format!("{b_at}.relative"))?);
        }
    }
    let forbidden = match map.get("forbidden") {
        None => None,
        Some(f) => {
            let f_at = format!("{origin}: forbidden");
            let items = f.as_array().ok_or_else(|| CliError::input(&f_at, "expected an array"))?;
            Some(items.iter().enumerate().map(|(i, x)| spectral_value(x, &format!("{f_at}[{i}]"))).collect::<Result<Vec<_>>>()?)
        }
    };
    if mode == Mode::Local {
        let all_matrices = matches!(central, Entry::Matrix(_)) && locals.iter().all(|l| matches!(l, Entry::Matrix(_)));
        if !all_matrices {
            return Err(CliError::input(origin, "local mode needs Seifert matrices, not bare spectra"));
        }
        if forbidden.is_some() {
            return Err(CliError::input(origin, "\"forbidden\" applies to infinity and local_to_global modes only"));
        }
    } else if betti_total.is_some() || betti_relative.is_some() {
        return Err(CliError::input(origin, "\"betti\" applies to local mode only"));
    }
    if mode == Mode::Infinity && locals.len() > 1 {
        return Err(CliError::input(origin, "infinity mode compares against exactly one special fiber"));
    }
    Ok(Scenario { mode, central, locals, betti_total, betti_relative, forbidden })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("5/6"), Some(r(5, 6)));
        assert_eq!(parse_rational("0.25"), Some(r(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(r(-3, 2)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        assert_eq!(parse_rational("3"), Some(r(3, 1)));
        for bad in ["", ".", "1/0", "a", "1e3", "0.5.5"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn seifert_schema() {
        let s = parse_seifert_text(r#"{"n": 1, "matrix": [[-1, 1], [0, -1]], "name": "trefoil"}"#, "t").unwrap();
        assert_eq!((s.mu(), s.name()), (2, Some("trefoil")));
        assert_eq!(parse_seifert_text(r#"{"n": 3, "matrix": []}"#, "t").unwrap().mu(), 0);
        for bad in [
            r#"{"n": 1, "matrix": [[1, 0]]}"#,
            r#"{"n": 1, "matrix": [[1.0]]}"#,
            r#"{"n": 1, "matrix": [[1e0]]}"#,
            r#"{"n": 0, "matrix": [[1]]}"#,
            r#"{"matrix": [[1]]}"#,
            r#"{"n": 1, "matrix": [[1]], "extra": 1}"#,
            r#"{"n": 1, "matrix": [[99999999999999999999]]}"#,
            r#"[1]"#,
            r#"{"n": 1, "matrix": [[1]"#,
        ] {
            let e = parse_seifert_text(bad, "t").unwrap_err();
            assert_eq!(e.exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn diagnostics_name_the_field() {
        let e = parse_seifert_text(r#"{"n": 1, "matrix": [[1, 2], [3, 4.5]]}"#, "f.json").unwrap_err();
        assert_eq!(e.to_string(), "f.json: matrix[1][1]: expected an integer, found 4.5");
        let e = parse_seifert_text("{\n\"n\": 1,\n", "f.json").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
    }

    #[test]
    fn scenario_entries() {
        let v: Value = serde_json::from_str(
            r#"{"mode": "infinity", "central": {"spectrum": ["5/6", {"value": "7/6", "multiplicity": 2}]}, "locals": ["A1"]}"#,
        )
        .unwrap();
        let sc = parse_scenario(&v, "s").unwrap();
        let Entry::Spectrum(sp) = &sc.central else { panic!() };
        assert_eq!(sp.total(), 3);
        assert!(matches!(sc.locals[0], Entry::Matrix(_)));
        let bad: Value = serde_json::from_str(r#"{"mode": "local", "central": {"spectrum": ["1/2"]}, "locals": []}"#).unwrap();
        assert!(parse_scenario(&bad, "s").is_err());
        let bad: Value = serde_json::from_str(r#"{"mode": "local", "central": "Z9", "locals": []}"#).unwrap();
        assert!(parse_scenario(&bad, "s").is_err());
    }
}
