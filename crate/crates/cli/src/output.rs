//! CSV tables with provenance comments, and JSON side files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(i64),
    B(bool),
    S(String),
}

impl Cell {
    /// Floats carry 17 significant digits so files round-trip exactly.
    pub fn render(&self) -> String {
        match self {
            Cell::F(x) if x.is_nan() => "nan".into(),
            Cell::F(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::F(x) => format!("{x:.16e}"),
            Cell::I(i) => i.to_string(),
            Cell::B(b) => u8::from(*b).to_string(),
            Cell::S(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::I(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::B(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::S(x.into())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File stem, e.g. `fs-scan` → `fs-scan.csv`.
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything an experiment produced.
#[derive(Debug, Default)]
pub struct Outputs {
    pub tables: Vec<Table>,
    pub fit: Option<Value>,
    /// Points evaluated at a degenerate ground state.
    pub degenerate_points: usize,
    pub summary: serde_json::Map<String, Value>,
    /// Set when the experiment's own consistency checks failed.
    pub failure: Option<String>,
}

impl Outputs {
    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(
            key.into(),
            serde_json::to_value(value).expect("summary value serialises"),
        );
    }
}

fn provenance(cfg: &RunConfig) -> String {
    format!(
        "# tfcompass {VERSION}\n# experiment: {}\n# config_sha256: {}\n# config: {}\n",
        cfg.experiment.name(),
        cfg.hash(),
        cfg.canonical_json()
    )
}

pub fn write_table(dir: &Path, cfg: &RunConfig, table: &Table) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.csv", table.name));
    let mut buf = provenance(cfg).into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(&table.columns)?;
        for row in &table.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
    }
    fs::write(&path, buf)?;
    Ok(path)
}

#[derive(Serialize)]
struct Metadata<'a> {
    experiment: &'a str,
    version: &'a str,
    config_sha256: String,
    config: &'a RunConfig,
    wall_time_s: f64,
    degenerate_points: usize,
    files: Vec<String>,
    summary: &'a serde_json::Map<String, Value>,
    failure: &'a Option<String>,
}

#[derive(Serialize)]
struct FitReport<'a> {
    experiment: &'a str,
    config_sha256: String,
    #[serde(flatten)]
    fit: &'a Value,
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut f = fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value).map_err(|e| CliError::Io(e.to_string()))?;
    f.write_all(b"\n")?;
    Ok(())
}

/// Writes all tables, the metadata file and (if any) the fit report.
pub fn write_all(
    dir: &Path,
    cfg: &RunConfig,
    out: &Outputs,
    wall_time_s: f64,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for t in &out.tables {
        files.push(write_table(dir, cfg, t)?);
    }
    let name = cfg.experiment.name();
    if let Some(fit) = &out.fit {
        let path = dir.join(format!("{name}.fit.json"));
        write_json(
            &path,
            &FitReport {
                experiment: name,
                config_sha256: cfg.hash(),
                fit,
            },
        )?;
        files.push(path);
    }
    let meta_path = dir.join(format!("{name}.meta.json"));
    let meta = Metadata {
        experiment: name,
        version: VERSION,
        config_sha256: cfg.hash(),
        config: cfg,
        wall_time_s,
        degenerate_points: out.degenerate_points,
        files: files
            .iter()
            .map(|p| p.file_name().unwrap_or_default().to_string_lossy().into_owned())
            .collect(),
        summary: &out.summary,
        failure: &out.failure,
    };
    write_json(&meta_path, &meta)?;
    files.push(meta_path);
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(Cell::F(0.1).render(), "1.0000000000000001e-1");
        let x = std::f64::consts::PI;
        assert_eq!(Cell::F(x).render().parse::<f64>().unwrap(), x);
        assert_eq!(Cell::B(true).render(), "1");
        assert_eq!(Cell::F(f64::NAN).render(), "nan");
    }
}
