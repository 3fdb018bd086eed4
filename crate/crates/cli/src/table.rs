//! Result tables and their CSV / JSON encodings.
//!
//! CSV files start with `# key: value` comment lines carrying the metadata
//! (the resolved config is one JSON line), followed by a single header row
//! and the records. JSON files hold a `metadata` object and a `records`
//! array of objects keyed by column name.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::config::{Format, Scenario, ScenarioConfig};
use crate::error::CliError;

pub const FLAG_COLUMN: &str = "flag";
const CONFIG_PREFIX: &str = "# config: ";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Text(_) => None,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) => Value::Null,
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(x) => write!(f, "{}", format_number(*x)),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

/// Shortest round-trip representation; scientific notation outside
/// [1e-4, 1e15).
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// One output row: data cells plus an optional flag explaining
/// non-finite or failed entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Cell>,
    pub flag: Option<String>,
}

impl Row {
    pub fn new(cells: Vec<Cell>) -> Self {
        Row { cells, flag: None }
    }

    pub fn flagged(mut self, flag: impl Into<String>) -> Self {
        let flag = flag.into();
        self.flag = Some(match self.flag.take() {
            Some(old) => format!("{old};{flag}"),
            None => flag,
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub scenario: Scenario,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    /// Scalar results of the run (extracted frequencies and the like).
    pub summary: Vec<(String, Cell)>,
    /// Scenario-level numerical failures; a non-empty list means exit code 2.
    pub warnings: Vec<String>,
    pub config: ScenarioConfig,
    pub version: String,
    pub timestamp: String,
}

impl ResultTable {
    pub fn new(scenario: Scenario, columns: &[&str], config: &ScenarioConfig) -> Self {
        ResultTable {
            scenario,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
            warnings: Vec::new(),
            config: config.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn push(&mut self, row: Row) {
        debug_assert_eq!(row.cells.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary
            .iter()
            .find(|(k, _)| k == key)
            .and_then(|(_, v)| v.as_f64())
    }

    pub fn column(&self, name: &str) -> Option<Vec<Cell>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.cells[idx].clone()).collect())
    }

    pub fn numeric_column(&self, name: &str) -> Option<Vec<f64>> {
        self.column(name)
            .map(|c| c.iter().map(|x| x.as_f64().unwrap_or(f64::NAN)).collect())
    }

    /// Marks any row holding a non-finite number that is not yet flagged.
    pub fn flag_non_finite(&mut self) {
        for row in &mut self.rows {
            if row.flag.is_none()
                && row
                    .cells
                    .iter()
                    .any(|c| matches!(c, Cell::Num(x) if !x.is_finite()))
            {
                row.flag = Some("non-finite".into());
            }
        }
    }

    fn config_json(&self) -> Result<Value, CliError> {
        let mut config = self.config.clone();
        config.scenario = Some(self.scenario);
        serde_json::to_value(&config).map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let config = serde_json::to_string(&self.config_json()?)
            .map_err(|e| CliError::Output(e.to_string()))?;
        let mut out = String::new();
        out.push_str(&format!("# scenario: {}\n", self.scenario));
        out.push_str(&format!("# version: {}\n", self.version));
        out.push_str(&format!("# timestamp: {}\n", self.timestamp));
        out.push_str(&format!("{CONFIG_PREFIX}{config}\n"));
        for (key, value) in &self.summary {
            out.push_str(&format!("# summary.{key}: {value}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("# warning: {}\n", w.replace('\n', " ")));
        }

        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = self.columns.iter().map(String::as_str).collect();
        header.push(FLAG_COLUMN);
        writer
            .write_record(&header)
            .map_err(|e| CliError::Output(e.to_string()))?;
        for row in &self.rows {
            let mut record: Vec<String> = row.cells.iter().map(Cell::to_string).collect();
            record.push(row.flag.clone().unwrap_or_default());
            writer
                .write_record(&record)
                .map_err(|e| CliError::Output(e.to_string()))?;
        }
        let body = writer
            .into_inner()
            .map_err(|e| CliError::Output(e.to_string()))?;
        out.push_str(&String::from_utf8(body).map_err(|e| CliError::Output(e.to_string()))?);
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(&row.cells)
                    .map(|(c, v)| (c.clone(), v.to_json()))
                    .collect();
                obj.insert(
                    FLAG_COLUMN.into(),
                    row.flag.as_ref().map_or(Value::Null, |f| json!(f)),
                );
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "metadata": {
                "scenario": self.scenario.to_string(),
                "version": self.version,
                "timestamp": self.timestamp,
                "config": self.config_json()?,
                "summary": summary,
                "warnings": self.warnings,
            },
            "columns": self.columns,
            "records": records,
        });
        let mut text =
            serde_json::to_string_pretty(&doc).map_err(|e| CliError::Output(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }
}

/// The configuration embedded in a CSV or JSON result file, if `text` is one.
pub fn embedded_config(text: &str) -> Result<Option<Value>, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        if let Ok(doc) = serde_json::from_str::<Value>(trimmed) {
            return match doc.pointer("/metadata/config") {
                Some(config) => Ok(Some(config.clone())),
                None => Err(CliError::Config(
                    "JSON file has no metadata.config object".into(),
                )),
            };
        }
    }
    if trimmed.starts_with('#') {
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            if let Some(json) = line.strip_prefix(CONFIG_PREFIX) {
                let value = serde_json::from_str(json).map_err(|e| {
                    CliError::Config(format!("embedded config is not valid JSON: {e}"))
                })?;
                return Ok(Some(value));
            }
        }
    }
    Ok(None)
}
