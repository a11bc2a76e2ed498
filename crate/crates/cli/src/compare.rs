//! Validator: compares two CSV outputs produced from the same configuration.

use std::path::Path;

use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct CsvFile {
    pub config_hash: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn read_csv(path: &Path) -> Result<CsvFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let config_hash = text
        .lines()
        .take_while(|l| l.starts_with('#'))
        .find_map(|l| l.strip_prefix("# config_sha256: "))
        .map(str::to_owned);
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .flat_map(|l| [l, "\n"])
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers()?.iter().map(str::to_owned).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|r| r.iter().map(str::to_owned).collect()))
        .collect::<Result<Vec<Vec<String>>, _>>()?;
    Ok(CsvFile {
        config_hash,
        header,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub config_sha256: String,
    pub rows: usize,
    pub max_abs_diff: f64,
    pub worst_column: Option<String>,
    pub identical: bool,
}

/// Column-wise comparison; refuses files with missing or mismatched hashes.
pub fn compare(a: &CsvFile, b: &CsvFile) -> Result<Comparison, CliError> {
    let (ha, hb) = match (&a.config_hash, &b.config_hash) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(CliError::config("file without a config hash".into())),
    };
    if ha != hb {
        return Err(CliError::config(format!(
            "config hashes differ ({ha} vs {hb}); refusing to compare"
        )));
    }
    if a.header != b.header || a.rows.len() != b.rows.len() {
        return Err(CliError::config("tables differ in shape".into()));
    }
    let mut max = 0.0_f64;
    let mut worst = None;
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        for (k, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x == y {
                continue;
            }
            let d = match (x.parse::<f64>(), y.parse::<f64>()) {
                (Ok(u), Ok(v)) => (u - v).abs(),
                _ => f64::INFINITY,
            };
            if d > max || d.is_nan() {
                max = if d.is_nan() { f64::INFINITY } else { d };
                worst = Some(a.header[k].clone());
            }
        }
    }
    Ok(Comparison {
        config_sha256: ha.clone(),
        rows: a.rows.len(),
        max_abs_diff: max,
        worst_column: worst,
        identical: a.rows == b.rows,
    })
}
