use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "gcdb-lab/1";
pub const CSV_HEADER: &str = "schema,command,quantity,value,target,abs_error,provenance";

/// One numeric or boolean result with the value it is compared against.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub quantity: String,
    pub value: Value,
    pub target: Option<f64>,
    pub abs_error: Option<f64>,
}

impl Row {
    pub fn compared(quantity: &str, value: f64, target: f64) -> Self {
        Self {
            quantity: quantity.into(),
            value: json!(value),
            target: Some(target),
            abs_error: Some((value - target).abs()),
        }
    }

    pub fn plain(quantity: &str, value: impl Serialize) -> Self {
        Self {
            quantity: quantity.into(),
            value: serde_json::to_value(value).expect("plain values serialize"),
            target: None,
            abs_error: None,
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    /// Where the comparison values come from.
    pub provenance: String,
    /// Every input that can change the output.
    pub config: Value,
    pub result: Value,
    pub rows: Vec<Row>,
    /// Set when a closed-form condition disagrees with the computed verdict.
    pub discrepancy: bool,
}

impl Report {
    pub fn new(command: &str, provenance: &str, config: Value, result: impl Serialize) -> Self {
        Self {
            command: command.into(),
            provenance: provenance.into(),
            config,
            result: serde_json::to_value(result).expect("results serialize"),
            rows: Vec::new(),
            discrepancy: false,
        }
    }

    pub fn with_rows(mut self, rows: Vec<Row>) -> Self {
        self.rows = rows;
        self
    }

    pub fn to_json(&self) -> String {
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "provenance": self.provenance,
            "config": self.config,
            "result": self.result,
            "rows": self.rows,
            "discrepancy": self.discrepancy,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("reports serialize");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let value = match &row.value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let num = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{SCHEMA},{},{},{},{},{},{}",
                field(&self.command),
                field(&row.quantity),
                field(&value),
                num(row.target),
                num(row.abs_error),
                field(&self.provenance),
            )
            .expect("writing to a String");
        }
        out
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
