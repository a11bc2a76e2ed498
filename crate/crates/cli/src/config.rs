//! Experiment configuration: built-in defaults < JSON file < command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tfcompass::solver::LiftDirection;
use tfcompass::{Boundary, ModelParams};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    GsEnergy,
    Spectrum,
    Gap,
    FidelityMap,
    FsScan,
    FsScaling,
    Concurrence,
    Entropy,
    Correlator,
    Magnetization,
    OracleValidate,
    IsingCheck,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::GsEnergy => "gs-energy",
            Experiment::Spectrum => "spectrum",
            Experiment::Gap => "gap",
            Experiment::FidelityMap => "fidelity-map",
            Experiment::FsScan => "fs-scan",
            Experiment::FsScaling => "fs-scaling",
            Experiment::Concurrence => "concurrence",
            Experiment::Entropy => "entropy",
            Experiment::Correlator => "correlator",
            Experiment::Magnetization => "magnetization",
            Experiment::OracleValidate => "oracle-validate",
            Experiment::IsingCheck => "ising-check",
        }
    }
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Self {
        Grid { start, stop, count }
    }

    pub fn validate(&self, name: &str) -> Result<(), CliError> {
        if self.count == 0 {
            return Err(CliError::config(format!("sweep.{name}.count must be >= 1")));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(CliError::config(format!("sweep.{name} bounds must be finite")));
        }
        if self.count > 1 && self.start == self.stop {
            return Err(CliError::config(format!(
                "sweep.{name} is not monotone (start == stop with count > 1)"
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k == self.count - 1 {
                    self.stop
                } else {
                    self.start + k as f64 * step
                }
            })
            .collect()
    }
}

/// Integers `start, start + step, … ≤ stop`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntRange {
    pub start: usize,
    pub stop: usize,
    #[serde(default = "one")]
    pub step: usize,
}

fn one() -> usize {
    1
}

impl IntRange {
    pub fn new(start: usize, stop: usize) -> Self {
        IntRange { start, stop, step: 1 }
    }

    pub fn validate(&self, name: &str) -> Result<(), CliError> {
        if self.step == 0 || self.stop < self.start {
            return Err(CliError::config(format!(
                "sweep.{name} must satisfy start <= stop and step >= 1"
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.stop).step_by(self.step).collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub j: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub h: Option<f64>,
    pub n_cells: Option<usize>,
    pub bc: Option<Boundary>,
    pub lift: Option<LiftDirection>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub alpha: Option<Grid>,
    pub h: Option<Grid>,
    pub n_cells: Option<Vec<usize>>,
    pub r: Option<IntRange>,
    pub l: Option<IntRange>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitFile {
    pub window: Option<[f64; 2]>,
    pub nu_range: Option<[f64; 2]>,
    pub delta: Option<f64>,
    pub richardson: Option<bool>,
    pub h_c: Option<f64>,
    pub ising_bracket: Option<[f64; 2]>,
    pub pair: Option<[usize; 2]>,
    pub synthetic_nu: Option<f64>,
    pub noise: Option<f64>,
    pub tolerance: Option<f64>,
}

/// The JSON document accepted by `--config`. Unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub experiment: Option<Experiment>,
    #[serde(default)]
    pub params: ParamsFile,
    #[serde(default)]
    pub sweep: SweepFile,
    #[serde(default)]
    pub fit: FitFile,
    pub output: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))
    }

    /// Field-wise override: every value set in `other` wins.
    pub fn overlay(mut self, other: ConfigFile) -> Self {
        macro_rules! take {
            ($($f:ident).+) => {
                if other.$($f).+.is_some() {
                    self.$($f).+ = other.$($f).+;
                }
            };
        }
        take!(experiment);
        take!(params.j);
        take!(params.alpha);
        take!(params.beta);
        take!(params.h);
        take!(params.n_cells);
        take!(params.bc);
        take!(params.lift);
        take!(sweep.alpha);
        take!(sweep.h);
        take!(sweep.n_cells);
        take!(sweep.r);
        take!(sweep.l);
        take!(fit.window);
        take!(fit.nu_range);
        take!(fit.delta);
        take!(fit.richardson);
        take!(fit.h_c);
        take!(fit.ising_bracket);
        take!(fit.pair);
        take!(fit.synthetic_nu);
        take!(fit.noise);
        take!(fit.tolerance);
        take!(output);
        self
    }
}

/// Built-in defaults of each experiment.
pub fn defaults(e: Experiment) -> ConfigFile {
    let mut c = ConfigFile {
        experiment: Some(e),
        params: ParamsFile {
            j: Some(1.0),
            alpha: Some(1.0),
            beta: Some(1.0),
            h: Some(0.0),
            n_cells: Some(100),
            bc: Some(Boundary::Abc),
            lift: Some(LiftDirection::Field),
        },
        fit: FitFile {
            delta: Some(1e-4),
            richardson: Some(false),
            tolerance: Some(1e-8),
            ..FitFile::default()
        },
        ..ConfigFile::default()
    };
    let p = &mut c.params;
    let s = &mut c.sweep;
    let f = &mut c.fit;
    match e {
        Experiment::GsEnergy => {
            p.h = Some(0.8);
            p.n_cells = Some(4);
            p.bc = Some(Boundary::Pbc);
            s.alpha = Some(Grid::new(-2.0, 2.0, 41));
            f.tolerance = Some(1e-10);
        }
        Experiment::Spectrum => {
            p.h = Some(0.5);
            p.n_cells = Some(2);
            f.tolerance = Some(1e-10);
        }
        Experiment::Gap => {
            p.n_cells = Some(6);
            s.h = Some(Grid::new(0.0, 2.0, 21));
        }
        Experiment::FidelityMap => {
            s.alpha = Some(Grid::new(-2.0, 2.0, 41));
            s.h = Some(Grid::new(-1.0, 1.0, 41));
        }
        Experiment::FsScan => {
            s.h = Some(Grid::new(-0.1, 0.1, 201));
        }
        Experiment::FsScaling => {
            s.n_cells = Some(vec![100, 200, 300, 400]);
            s.h = Some(Grid::new(0.0, 0.05, 101));
            f.nu_range = Some([0.5, 2.0]);
            f.window = Some([1.0, 1e6]);
            f.h_c = Some(0.0);
            f.noise = Some(0.0);
        }
        Experiment::Concurrence => {
            p.n_cells = Some(256);
            s.alpha = Some(Grid::new(0.6, 1.4, 3));
            s.h = Some(Grid::new(-1.0, 1.0, 41));
            f.pair = Some([0, 1]);
            f.delta = Some(1e-3);
        }
        Experiment::Entropy => {
            p.n_cells = Some(256);
        }
        Experiment::Correlator => {
            p.n_cells = Some(512);
            s.r = Some(IntRange::new(0, 64));
            f.window = Some([8.0, 64.0]);
        }
        Experiment::Magnetization => {
            p.n_cells = Some(256);
            s.h = Some(Grid::new(0.0, 0.1, 101));
            f.window = Some([1e-3, 1e-2]);
            f.h_c = Some(0.0);
        }
        Experiment::OracleValidate => {
            p.alpha = Some(0.7);
            p.h = Some(0.4);
            p.n_cells = Some(4);
        }
        Experiment::IsingCheck => {
            p.n_cells = Some(256);
            s.h = Some(Grid::new(1.5, 2.5, 101));
            f.window = Some([1e-3, 1e-2]);
            f.ising_bracket = Some([1.5, 2.5]);
        }
    }
    c
}

/// Fully resolved settings of one run; its JSON form is hashed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub params: ModelParams,
    pub lift: LiftDirection,
    pub sweep: SweepFile,
    pub fit: FitFile,
    pub seed: u64,
}

impl RunConfig {
    pub fn resolve(c: ConfigFile, seed: u64) -> Result<(Self, PathBuf), CliError> {
        let experiment = c
            .experiment
            .ok_or_else(|| CliError::config("no experiment given".into()))?;
        let p = &c.params;
        let missing = |k: &str| CliError::config(format!("params.{k} missing"));
        let params = ModelParams {
            j: p.j.ok_or_else(|| missing("j"))?,
            alpha: p.alpha.ok_or_else(|| missing("alpha"))?,
            beta: p.beta.ok_or_else(|| missing("beta"))?,
            h: p.h.ok_or_else(|| missing("h"))?,
            n_cells: p.n_cells.ok_or_else(|| missing("n_cells"))?,
            bc: p.bc.ok_or_else(|| missing("bc"))?,
        };
        params.validate()?;
        if let Some(g) = &c.sweep.alpha {
            g.validate("alpha")?;
        }
        if let Some(g) = &c.sweep.h {
            g.validate("h")?;
        }
        if let Some(r) = &c.sweep.r {
            r.validate("r")?;
        }
        if let Some(r) = &c.sweep.l {
            r.validate("l")?;
        }
        if let Some(ns) = &c.sweep.n_cells {
            if ns.is_empty() || ns.windows(2).any(|w| w[1] <= w[0]) {
                return Err(CliError::config(
                    "sweep.n_cells must be a nonempty increasing list".into(),
                ));
            }
            for &n in ns {
                params.with_cells(n).validate()?;
            }
        }
        for (name, w) in [("window", c.fit.window), ("nu_range", c.fit.nu_range)] {
            if let Some([a, b]) = w {
                if !(a.is_finite() && b.is_finite() && a <= b) {
                    return Err(CliError::config(format!("fit.{name} must be [lo, hi]")));
                }
            }
        }
        let output = c.output.clone().unwrap_or_else(|| PathBuf::from("."));
        Ok((
            RunConfig {
                experiment,
                params,
                lift: c.params.lift.unwrap_or_default(),
                sweep: c.sweep,
                fit: c.fit,
                seed,
            },
            output,
        ))
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serialises")
    }

    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.sweep
            .alpha
            .map(|g| g.values())
            .unwrap_or_else(|| vec![self.params.alpha])
    }

    pub fn hs(&self) -> Vec<f64> {
        self.sweep
            .h
            .map(|g| g.values())
            .unwrap_or_else(|| vec![self.params.h])
    }

    pub fn delta(&self) -> f64 {
        self.fit.delta.unwrap_or(1e-4)
    }

    pub fn tolerance(&self) -> f64 {
        self.fit.tolerance.unwrap_or(1e-8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_values() {
        assert_eq!(Grid::new(0.0, 1.0, 3).values(), vec![0.0, 0.5, 1.0]);
        assert_eq!(Grid::new(0.3, 9.0, 1).values(), vec![0.3]);
        assert!(Grid::new(0.0, 1.0, 0).validate("h").is_err());
        assert!(Grid::new(1.0, 1.0, 2).validate("h").is_err());
        assert_eq!(IntRange { start: 2, stop: 8, step: 3 }.values(), vec![2, 5, 8]);
    }

    #[test]
    fn strict_parsing() {
        let ok: ConfigFile = serde_json::from_str(r#"{"params": {"alpha": 0.5}}"#).unwrap();
        assert_eq!(ok.params.alpha, Some(0.5));
        assert!(serde_json::from_str::<ConfigFile>(r#"{"params": {"alpah": 0.5}}"#).is_err());
        assert!(serde_json::from_str::<ConfigFile>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn overlay_precedence() {
        let base = defaults(Experiment::FsScan);
        let file: ConfigFile =
            serde_json::from_str(r#"{"params": {"alpha": 0.5, "n_cells": 20}}"#).unwrap();
        let flags = ConfigFile {
            params: ParamsFile {
                n_cells: Some(40),
                ..ParamsFile::default()
            },
            ..ConfigFile::default()
        };
        let c = base.overlay(file).overlay(flags);
        assert_eq!(c.params.alpha, Some(0.5));
        assert_eq!(c.params.n_cells, Some(40));
        assert_eq!(c.params.j, Some(1.0));
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let (a, _) = RunConfig::resolve(defaults(Experiment::Gap), 0).unwrap();
        let (b, _) = RunConfig::resolve(defaults(Experiment::Gap), 0).unwrap();
        let (c, _) = RunConfig::resolve(defaults(Experiment::Gap), 1).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), c.hash());
    }
}
