//! Structured run output and its JSON-lines encoding.
//!
//! A report is written as one header line (`"record": "run"`) followed by one
//! line per output record. Every line carries `format_version`.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    pub data: String,
    pub n: usize,
    pub family: String,
    pub beta: Option<f64>,
    pub shape_name: String,
    pub shape: Option<f64>,
    pub loglik: Option<f64>,
    pub se_beta: Option<f64>,
    pub se_shape: Option<f64>,
    pub ks_statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub p_value_method: String,
    pub converged: bool,
    pub iterations: usize,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub column: String,
    pub published: Option<f64>,
    pub computed: Option<f64>,
    pub abs_diff: Option<f64>,
}

impl Cell {
    pub fn new(column: impl Into<String>, published: Option<f64>, computed: Option<f64>) -> Self {
        let abs_diff = published.zip(computed).map(|(p, c)| (c - p).abs());
        Self { column: column.into(), published, computed, abs_diff }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: u8,
    pub row: String,
    pub cells: Vec<Cell>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub family: String,
    pub x: f64,
    pub pdf: Option<f64>,
    pub hazard: Option<f64>,
    pub cdf: Option<f64>,
    pub empirical_cdf: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Fit(FitRecord),
    Table(TableRow),
    Curve(CurvePoint),
    Draw { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum Header {
    Run { command: String, inputs: BTreeMap<String, String> },
}

#[derive(Serialize, Deserialize)]
struct Line<T> {
    format_version: u32,
    #[serde(flatten)]
    body: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub format_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<Record>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self { format_version: FORMAT_VERSION, command: command.into(), inputs: BTreeMap::new(), outputs: Vec::new() }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn to_json_lines(&self) -> String {
        let header = Line {
            format_version: self.format_version,
            body: Header::Run { command: self.command.clone(), inputs: self.inputs.clone() },
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for r in &self.outputs {
            let line = Line { format_version: self.format_version, body: r };
            out.push_str(&serde_json::to_string(&line).expect("finite records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty()).enumerate();
        let (_, first) = lines.next().context("empty report")?;
        let header: Line<Header> = serde_json::from_str(first).context("line 1: bad run header")?;
        check_version(header.format_version, 1)?;
        let Header::Run { command, inputs } = header.body;
        let mut outputs = Vec::new();
        for (i, l) in lines {
            let line: Line<Record> = serde_json::from_str(l).with_context(|| format!("line {}", i + 1))?;
            check_version(line.format_version, i + 1)?;
            outputs.push(line.body);
        }
        Ok(Self { format_version: header.format_version, command, inputs, outputs })
    }
}

fn check_version(v: u32, line: usize) -> Result<()> {
    if v != FORMAT_VERSION {
        bail!("line {line}: unsupported format_version {v}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        let mut r = RunReport::new("fit").input("data", "aircon").input("family", "epl");
        r.outputs.push(Record::Fit(FitRecord {
            data: "aircon".into(),
            n: 30,
            family: "epl".into(),
            beta: Some(0.010039512345678901),
            shape_name: "theta".into(),
            shape: Some(0.1 + 0.2),
            loglik: Some(-151.4),
            se_beta: None,
            se_shape: Some(1e-300),
            ks_statistic: Some(0.128),
            p_value: Some(0.66),
            p_value_method: "exact".into(),
            converged: true,
            iterations: 12,
            error: None,
        }));
        r.outputs.push(Record::Table(TableRow {
            table: 1,
            row: "theta=0.5".into(),
            cells: vec![Cell::new("mean", Some(0.4315028), Some(0.43150281))],
            note: Some("x".into()),
        }));
        r.outputs.push(Record::Curve(CurvePoint {
            family: "epl".into(),
            x: 0.0,
            pdf: Some(2.0),
            hazard: Some(2.0),
            cdf: Some(0.0),
            empirical_cdf: None,
        }));
        r.outputs.push(Record::Draw { value: 5e-324 });
        r
    }

    #[test]
    fn json_lines_round_trip() {
        let r = sample();
        let text = r.to_json_lines();
        let back = RunReport::from_json_lines(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json_lines(), text);
        assert!(text.lines().all(|l| l.starts_with("{\"format_version\":1,")));
    }

    #[test]
    fn rejects_other_versions() {
        let text = sample().to_json_lines().replace("\"format_version\":1", "\"format_version\":2");
        assert!(RunReport::from_json_lines(&text).is_err());
        assert!(RunReport::from_json_lines("").is_err());
    }
}
