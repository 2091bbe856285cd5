//! Table emission: RFC-4180 CSV with shortest round-trip float formatting,
//! JSON result bundles, and the sidecar configuration echo.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Number(f64),
    Integer(i64),
    Text(String),
    /// Explicitly undefined value (for example q when W_q = 0); an empty
    /// CSV field and a JSON null.
    Undefined,
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            // Rust's float Display is the shortest round-trip decimal form
            Cell::Number(v) => format!("{v}"),
            Cell::Integer(v) => format!("{v}"),
            Cell::Text(t) => {
                if t.contains([',', '"', '\n']) {
                    format!("\"{}\"", t.replace('"', "\"\""))
                } else {
                    t.clone()
                }
            }
            Cell::Undefined => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Number(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map(Cell::Number).unwrap_or(Cell::Undefined)
    }
}

/// One output table plus the fully resolved configuration it came from.
#[derive(Debug)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub resolved_config: serde_json::Value,
}

pub fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl Table {
    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push_str("\r\n");
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let fields: Vec<String> = row.iter().map(Cell::csv_field).collect();
            out.push_str(&fields.join(","));
            out.push_str("\r\n");
        }
        std::fs::write(path, out).map_err(CliError::io)?;

        let sidecar = sidecar_path(path);
        let config = serde_json::to_string_pretty(&self.resolved_config)
            .map_err(|e| CliError::config(e.to_string()))?;
        std::fs::write(&sidecar, config + "\n").map_err(CliError::io)?;
        Ok(())
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        let records: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut record = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Number(v) => serde_json::json!(v),
                        Cell::Integer(v) => serde_json::json!(v),
                        Cell::Text(t) => serde_json::json!(t),
                        Cell::Undefined => serde_json::Value::Null,
                    };
                    record.insert((*name).to_string(), value);
                }
                serde_json::Value::Object(record)
            })
            .collect();
        let bundle = serde_json::json!({
            "config": self.resolved_config,
            "records": records,
        });
        let body = serde_json::to_string_pretty(&bundle)
            .map_err(|e| CliError::config(e.to_string()))?;
        std::fs::write(path, body + "\n").map_err(CliError::io)?;
        Ok(())
    }
}

/// `<out>.config.json` next to the CSV.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".config.json");
    path.with_file_name(name)
}

pub fn config_value<T: Serialize>(label: &str, config: &T) -> serde_json::Value {
    serde_json::json!({
        "tool": "aqc",
        "kind": label,
        "config": serde_json::to_value(config).expect("serialisable config"),
    })
}
