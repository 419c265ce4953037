//! Report envelope, diagnostics and output files.

use std::env;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "symtwist";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const OUT_DIR_ENV: &str = "SYMTWIST_OUT_DIR";

/// An error tied to the argument that caused it.
#[derive(Debug, Serialize)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wrapped<'a> {
            tool: &'static str,
            version: &'static str,
            error: &'a Diagnostic,
        }
        let w = Wrapped {
            tool: TOOL,
            version: VERSION,
            error: self,
        };
        serde_json::to_string_pretty(&w).expect("diagnostic serializes")
    }
}

/// What a command hands back before it is wrapped.
pub struct Outcome {
    pub result: Value,
    /// `None` for commands that only report.
    pub verdict: Option<bool>,
    /// `None` when every comparison is exact.
    pub tolerance: Option<f64>,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct Envelope<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: Value,
    pub tolerance: Option<f64>,
    pub result: &'a Value,
    pub verdict: Option<bool>,
}

/// Relative paths land in `$SYMTWIST_OUT_DIR` when it is set.
pub fn resolve(path: &Path) -> PathBuf {
    match env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn ensure_parent(path: &Path, field: &str) -> Result<(), Diagnostic> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .map_err(|e| Diagnostic::new(field, format!("{}: {e}", parent.display())))?;
    }
    Ok(())
}

pub fn write_json(envelope: &Envelope, out: Option<&Path>) -> Result<(), Diagnostic> {
    let mut text = serde_json::to_string_pretty(envelope)
        .map_err(|e| Diagnostic::new("output", e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => {
            let path = resolve(path);
            ensure_parent(&path, "out")?;
            fs::write(&path, text)
                .map_err(|e| Diagnostic::new("out", format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Diagnostic::new("output", e.to_string())),
    }
}

pub fn write_csv(table: &Table, path: &Path) -> Result<(), Diagnostic> {
    let path = resolve(path);
    ensure_parent(&path, "csv")?;
    let err = |e: csv::Error| Diagnostic::new("csv", format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(&path).map_err(err)?;
    w.write_record(&table.header).map_err(err)?;
    for row in &table.rows {
        w.write_record(row).map_err(err)?;
    }
    w.flush()
        .map_err(|e| Diagnostic::new("csv", format!("{}: {e}", path.display())))
}
