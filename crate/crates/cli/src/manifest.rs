//! Run outputs: the results table, extra files and the reproducibility
//! manifest.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use hardyscope_core::config::Thresholds;
use hardyscope_core::WalkConfig;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub hardyscope: &'static str,
}

/// Everything needed to reproduce a run. `wall_time` is the only field
/// that differs between identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub spec_hash: Option<String>,
    pub cfg: Option<WalkConfig>,
    pub thresholds: Thresholds,
    pub versions: Versions,
    pub wall_time: f64,
}

/// A results table rendered as CSV.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// What a subcommand produced.
#[derive(Debug, Default)]
pub struct Outcome {
    /// Human-readable lines for stdout.
    pub report: Vec<String>,
    pub table: Table,
    /// Additional files as `(name, contents)`.
    pub files: Vec<(String, String)>,
    /// An inequality or certificate failed; exit code 2.
    pub violation: bool,
    pub spec_hash: Option<String>,
    pub cfg: Option<WalkConfig>,
}

pub fn write_outputs(
    dir: &Path,
    name: &str,
    outcome: &Outcome,
    manifest: &RunManifest,
) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let write = |file: &str, body: &str| {
        let p = dir.join(file);
        fs::write(&p, body).with_context(|| format!("writing {}", p.display()))
    };
    write(&format!("{name}.csv"), &outcome.table.to_csv()?)?;
    write(
        &format!("{name}.manifest.json"),
        &serde_json::to_string_pretty(manifest)?,
    )?;
    for (file, body) in &outcome.files {
        write(file, body)?;
    }
    Ok(())
}
