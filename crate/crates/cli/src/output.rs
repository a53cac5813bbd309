use serde_json::Value;

use lagrange_core::numkit::format_sig;
use lagrange_core::spectra::EstimatorTrace;

use crate::cli::Format;

/// A command result with both renderings: a single CSV table and a JSON
/// document carrying the same fields.
pub struct Output {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    json: Value,
}

impl Output {
    pub fn new(header: Vec<&'static str>, json: Value) -> Self {
        Output { header, rows: Vec::new(), json }
    }

    pub fn with_json(mut self, json: Value) -> Self {
        self.json = json;
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    /// Appends one `shell` row per trace shell to a
    /// `record,cutoff,value,witness,certified` table.
    pub fn trace_rows(&mut self, trace: &EstimatorTrace) {
        for s in &trace.shells {
            self.row(vec!["shell".into(), num(s.cutoff), num(s.value), s.witness.clone(), s.certified.to_string()]);
        }
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).map(|s| s + "\n").map_err(|e| e.to_string()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| e.to_string();
                w.write_record(&self.header).map_err(io)?;
                for r in &self.rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}

/// Fixed 15-significant-digit rendering.
pub fn num(x: f64) -> String {
    format_sig(x)
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
