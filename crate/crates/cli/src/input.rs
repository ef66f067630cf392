//! Reading observations from text files and the built-in fixtures.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use epl_core::DataSet;

pub const AIRCON: &str = include_str!("../fixtures/aircon");
pub const VINYL: &str = include_str!("../fixtures/vinyl");

/// Parses whitespace- or comma-separated positive reals. Text after `#` on
/// a line is ignored.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: f64 = tok
                .parse()
                .with_context(|| format!("line {}: `{tok}` is not a number", lineno + 1))?;
            if !(v > 0.0 && v.is_finite()) {
                bail!("line {}: observation {v} is not a positive finite number", lineno + 1);
            }
            out.push(v);
        }
    }
    Ok(out)
}

pub fn fixture(name: &str) -> Option<&'static str> {
    match name {
        "aircon" => Some(AIRCON),
        "vinyl" => Some(VINYL),
        _ => None,
    }
}

/// Resolves `spec` to a data set.
///
/// A bare fixture name (`aircon`, `vinyl`) uses the embedded copy. Anything
/// else is read as a file; a missing `fixtures/<name>` path falls back to
/// the embedded fixture of that name.
pub fn load(spec: &str) -> Result<DataSet> {
    let path = Path::new(spec);
    let (text, label) = if let Some(text) = fixture(spec) {
        (text.to_string(), spec.to_string())
    } else if path.exists() {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read `{spec}`"))?;
        let label = path.file_stem().map_or(spec.into(), |s| s.to_string_lossy().into_owned());
        (text, label)
    } else {
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("");
        let in_fixtures = path.parent().and_then(|p| p.file_name()).is_some_and(|p| p == "fixtures");
        match fixture(name).filter(|_| in_fixtures) {
            Some(text) => (text.to_string(), name.to_string()),
            None => bail!("cannot read `{spec}`: no such file or fixture"),
        }
    };
    let values = parse_values(&text).with_context(|| format!("in `{spec}`"))?;
    if values.is_empty() {
        bail!("`{spec}` contains no observations");
    }
    Ok(DataSet::new(values, label)?)
}
