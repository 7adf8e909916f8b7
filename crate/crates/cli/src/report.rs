//! Report records and their JSON, CSV and text renderings.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::Result;

pub const REPORT_VERSION: u32 = 1;

/// One `(profile, theorem)` comparison. Counts are decimal strings so that
/// 128-bit values survive any JSON consumer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub profile: String,
    pub theorem: String,
    pub bound_value: String,
    pub branch: String,
    pub search_optimum: String,
    pub agreement: bool,
    pub extremal_class_count: Option<String>,
    pub elapsed_ms: String,
}

impl ReportRecord {
    /// `agreement` holds exactly when the two values are equal.
    pub fn is_consistent(&self) -> bool {
        self.agreement == (self.bound_value == self.search_optimum)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub records: Vec<ReportRecord>,
}

impl Report {
    pub fn new(records: Vec<ReportRecord>) -> Self {
        Report {
            version: REPORT_VERSION,
            records,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Replaces every JSON number with its decimal string.
pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(
            o.into_iter()
                .map(|(k, v)| (k, stringify_numbers(v)))
                .collect(),
        ),
        other => other,
    }
}

/// `{"version": 1, "records": [...]}` plus any extra top-level keys, whose
/// numbers are stringified.
pub fn to_json(records: &[ReportRecord], extra: Vec<(&str, Value)>) -> Result<String> {
    let mut top = Map::new();
    top.insert("version".into(), Value::from(REPORT_VERSION));
    top.insert("records".into(), serde_json::to_value(records)?);
    for (k, v) in extra {
        top.insert(k.into(), stringify_numbers(v));
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(top))?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv(records: &[ReportRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        w.write_record(COLUMNS)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

const COLUMNS: [&str; 8] = [
    "profile",
    "theorem",
    "bound_value",
    "branch",
    "search_optimum",
    "agreement",
    "extremal_class_count",
    "elapsed_ms",
];

/// Left-aligned table with one header row.
pub fn to_table(records: &[ReportRecord]) -> String {
    let rows: Vec<[String; 8]> = records
        .iter()
        .map(|r| {
            [
                r.profile.clone(),
                r.theorem.clone(),
                r.bound_value.clone(),
                r.branch.clone(),
                r.search_optimum.clone(),
                r.agreement.to_string(),
                r.extremal_class_count.clone().unwrap_or_else(|| "-".into()),
                r.elapsed_ms.clone(),
            ]
        })
        .collect();
    let mut width = COLUMNS.map(str::len);
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| {
        let mut s = cells
            .iter()
            .zip(width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&COLUMNS);
    for row in &rows {
        out.push_str(&line(&row.each_ref().map(String::as_str)));
    }
    out
}
