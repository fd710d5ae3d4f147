//! JSON and CSV emission with run metadata and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub command: String,
    pub invocation: Vec<String>,
    pub version: &'static str,
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A command result: JSON fields and, for CSV, a header with rows.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub fields: Map<String, Value>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Extra `# key: value` lines for CSV.
    pub notes: Vec<(String, String)>,
}

impl Report {
    pub fn new(header: &[&str]) -> Self {
        Report {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn field(mut self, key: &str, value: impl Serialize) -> Self {
        self.fields.insert(key.into(), json!(value));
        self
    }

    pub fn note(mut self, key: &str, value: impl ToString) -> Self {
        self.notes.push((key.into(), value.to_string()));
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format, meta: &Metadata) -> String {
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("metadata".into(), json!(meta));
                doc.extend(self.fields.clone());
                let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = format!("# command: {}\n# invocation: {}\n", meta.command, meta.invocation.join(" "));
                if let Some(seed) = meta.seed {
                    s += &format!("# seed: {seed}\n");
                }
                for (k, v) in &self.notes {
                    s += &format!("# {k}: {v}\n");
                }
                s += &self.header.join(",");
                s.push('\n');
                for row in &self.rows {
                    s += &row.join(",");
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// CSV cell for a string that may contain commas.
pub fn quote(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
