//! Report model and renderers. All three formats print the same cell
//! strings; only the framing differs, so a JSON report re-parses to
//! exactly the text report's values.

use serde_json::{Map, Value};

use crate::config::OutputFormat;

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub precision_bits: u32,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, precision_bits: u32, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            precision_bits,
            columns,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: Vec<&str>| {
            let mut parts = Vec::with_capacity(cells.len());
            for (i, cell) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    parts.push(cell.to_string());
                } else {
                    parts.push(format!("{cell: <width$}", width = widths[i]));
                }
            }
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        line(self.columns.clone());
        for row in &self.rows {
            line(row.iter().map(String::as_str).collect());
        }
        for note in &self.notes {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        fn cell(s: &str) -> String {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.to_string()));
        root.insert(
            "precision_bits".into(),
            Value::Number(self.precision_bits.into()),
        );
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).to_string(), Value::String(cell.clone()));
                }
                Value::Object(obj)
            })
            .collect();
        root.insert("rows".into(), Value::Array(rows));
        if !self.notes.is_empty() {
            root.insert(
                "notes".into(),
                Value::Array(
                    self.notes
                        .iter()
                        .map(|n| Value::String(n.clone()))
                        .collect(),
                ),
            );
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(root))
            .expect("report serializes");
        out.push('\n');
        out
    }
}
