//! Deterministic table output. Every file starts with comment lines holding
//! the tool version and the fully resolved parameter set; the same table can
//! be written as CSV or as a JSON document.

use std::fmt::Write as _;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format '{other}' (expected csv|json)")),
        }
    }
}

/// One cell: already-formatted number (kept textual so CSV and JSON render
/// byte-identically run to run).
pub type Row = Vec<String>;

pub struct TableDoc {
    pub command: &'static str,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
}

/// Fixed-precision scientific notation; also a valid JSON number literal.
pub fn fnum(x: f64) -> String {
    format!("{:.12e}", x)
}

pub fn inum(x: usize) -> String {
    format!("{x}")
}

impl TableDoc {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            meta: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta_kv(&mut self, key: &str, value: String) {
        self.meta.push((key.to_string(), value));
    }

    pub fn push(&mut self, row: Row) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# msp {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "# command = {}", self.command);
        for (k, v) in &self.meta {
            let _ = writeln!(s, "# {k} = {v}");
        }
        let _ = writeln!(s, "{}", self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"tool\": \"msp {}\",", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "  \"command\": \"{}\",", self.command);
        s.push_str("  \"meta\": {\n");
        for (i, (k, v)) in self.meta.iter().enumerate() {
            let comma = if i + 1 < self.meta.len() { "," } else { "" };
            let _ = writeln!(s, "    \"{k}\": \"{v}\"{comma}");
        }
        s.push_str("  },\n  \"columns\": [");
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "\"{c}\"");
        }
        s.push_str("],\n  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            let comma = if i + 1 < self.rows.len() { "," } else { "" };
            let _ = writeln!(s, "    [{}]{comma}", row.join(", "));
        }
        s.push_str("  ]\n}\n");
        s
    }

    /// Write `<stem>.csv` or `<stem>.json` under `dir`, returning the path.
    pub fn write(&self, dir: &Path, stem: &str, format: OutputFormat) -> Result<std::path::PathBuf, CliError> {
        std::fs::create_dir_all(dir).map_err(CliError::Io)?;
        let (ext, body) = match format {
            OutputFormat::Csv => ("csv", self.to_csv()),
            OutputFormat::Json => ("json", self.to_json()),
        };
        let path = dir.join(format!("{stem}.{ext}"));
        std::fs::write(&path, body).map_err(CliError::Io)?;
        Ok(path)
    }
}
