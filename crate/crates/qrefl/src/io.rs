//! Artifact output: header blocks, CSV/JSON bodies and atomic file writes.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use tempfile::NamedTempFile;

use qrefl_core::PotentialModel;

use crate::config::{ModelSpec, RunConfig};
use crate::error::{CliError, CliResult};

/// Metadata block placed first in every JSON artifact.
#[derive(Debug, Serialize)]
pub struct Meta<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub model_description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    pub config: &'a RunConfig,
}

/// Where artifacts go: a directory, or stdout for the main artifact.
pub struct Sink<'a> {
    cfg: &'a RunConfig,
    header: String,
    meta: Meta<'a>,
}

impl<'a> Sink<'a> {
    pub fn new(cfg: &'a RunConfig, model: &PotentialModel) -> CliResult<Self> {
        if let Some(dir) = &cfg.out {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        let note = matches!(cfg.model, ModelSpec::He | ModelSpec::Sio2)
            .then_some("interpolated model potential with literature length scales, not an ab-initio potential");
        Ok(Self {
            cfg,
            header: cfg.header(model),
            meta: Meta { tool: "qrefl", version: qrefl_core::VERSION, model_description: model.describe(), note, config: cfg },
        })
    }

    pub fn meta(&self) -> &Meta<'a> {
        &self.meta
    }

    /// CSV text with the comment header, a column line and the rows.
    pub fn csv(&self, columns: &[&str], rows: &[Vec<String>]) -> String {
        let mut s = self.header.clone();
        s.push_str(&columns.join(","));
        s.push('\n');
        for r in rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Main artifact: `--out/<name>` or stdout.
    pub fn main(&mut self, name: &str, body: &str) -> CliResult<()> {
        match &self.cfg.out {
            Some(dir) => {
                let p = dir.join(name);
                write_atomic(&p, body)?;
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(body.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?;
            }
        }
        Ok(())
    }

    /// Secondary artifact, only written with `--out`.
    pub fn extra(&mut self, name: &str, body: &str) -> CliResult<()> {
        match &self.cfg.out {
            Some(dir) => {
                let p = dir.join(name);
                write_atomic(&p, body)?;
            }
            None => eprintln!("note: {name} is only written with --out"),
        }
        Ok(())
    }
}

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, body: &str) -> CliResult<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(body.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Full-precision float formatting for CSV cells.
pub fn f(x: f64) -> String {
    format!("{x:.17e}")
}
