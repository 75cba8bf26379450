//! Simulation configuration, as read from JSON and overridden by flags.
//!
//! ```json
//! { "model": "modified" | "original" | {"finite_t": 10},
//!   "matrix": {"file": "c.csv"} | {"preset": "ring"} | {"random": {"n": 5, "kind": "doubly_stochastic", "seed": 1}},
//!   "x0": {"file": "x0.csv"} | {"preset": "fig5"} | {"random": {"seed": 1}},
//!   "max_issues": 10000, "stop_tol": 1e-10, "out_dir": "out" }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::generate::{generate_matrix, random_simplex, RandomMatrixSpec};
use super::io;
use super::presets::{x0_preset, MatrixPreset};
use crate::dynamics::{ModelKind, STOP_TOL};
use crate::error::{Error, Result};
use crate::matrix::{InteractionMatrix, SimplexVector};

pub const DEFAULT_MAX_ISSUES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixSource {
    File(PathBuf),
    Preset(String),
    Random(RandomMatrixSpec),
}

impl MatrixSource {
    pub fn load(&self) -> Result<InteractionMatrix> {
        match self {
            MatrixSource::File(path) => io::read_matrix(path),
            MatrixSource::Preset(name) => Ok(MatrixPreset::from_name(name)?.matrix()),
            MatrixSource::Random(spec) => generate_matrix(spec),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum X0Source {
    File(PathBuf),
    Preset(String),
    /// Uniform on the simplex.
    Random {
        seed: u64,
    },
}

impl X0Source {
    pub fn load(&self, n: usize) -> Result<SimplexVector> {
        let x = match self {
            X0Source::File(path) => io::read_vector(path)?,
            X0Source::Preset(name) => x0_preset(name)?,
            X0Source::Random { seed } => random_simplex(n, *seed)?,
        };
        crate::matrix::check_dims(n, x.n())?;
        Ok(x)
    }
}

/// Config file contents; every field may be overridden on the command line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub model: Option<ModelKind>,
    pub matrix: Option<MatrixSource>,
    pub x0: Option<X0Source>,
    pub max_issues: Option<usize>,
    pub stop_tol: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub model: ModelKind,
    pub matrix: MatrixSource,
    pub x0: X0Source,
    pub max_issues: usize,
    pub stop_tol: f64,
    pub out_dir: PathBuf,
}

impl SimulationConfig {
    /// Fills defaults into a (merged) config file. A missing matrix source is
    /// an error; a missing x0 source means a random start with seed 0.
    pub fn resolve(file: ConfigFile) -> Result<Self> {
        let config = SimulationConfig {
            model: file.model.unwrap_or(ModelKind::Modified),
            matrix: file
                .matrix
                .ok_or_else(|| Error::InvalidArgument("no interaction matrix given".into()))?,
            x0: file.x0.unwrap_or(X0Source::Random { seed: 0 }),
            max_issues: file.max_issues.unwrap_or(DEFAULT_MAX_ISSUES),
            stop_tol: file.stop_tol.unwrap_or(STOP_TOL),
            out_dir: file.out_dir.unwrap_or_else(|| PathBuf::from(".")),
        };
        config.validate()
    }

    pub fn validate(self) -> Result<Self> {
        self.model.validate()?;
        if self.max_issues == 0 {
            return Err(Error::InvalidArgument(
                "max_issues must be at least 1".into(),
            ));
        }
        if !(self.stop_tol > 0.0) {
            return Err(Error::InvalidArgument("stop_tol must be positive".into()));
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::MatrixKind;

    #[test]
    fn full_schema_parses() {
        let text = r#"{
            "model": {"finite_t": 12},
            "matrix": {"random": {"n": 4, "kind": "doubly_stochastic", "seed": 3}},
            "x0": {"random": {"seed": 5}},
            "max_issues": 50,
            "stop_tol": 1e-8,
            "out_dir": "runs/a"
        }"#;
        let file: ConfigFile = serde_json::from_str(text).unwrap();
        let cfg = SimulationConfig::resolve(file).unwrap();
        assert_eq!(cfg.model, ModelKind::FiniteT(12));
        assert_eq!(
            cfg.matrix,
            MatrixSource::Random(RandomMatrixSpec {
                n: 4,
                kind: MatrixKind::DoublyStochastic,
                seed: 3,
                sinkhorn_tol: 1e-12
            })
        );
        assert_eq!(cfg.x0, X0Source::Random { seed: 5 });
        assert_eq!(cfg.out_dir, PathBuf::from("runs/a"));
        let c = cfg.matrix.load().unwrap();
        assert_eq!(cfg.x0.load(c.n()).unwrap().n(), 4);
    }

    #[test]
    fn presets_and_defaults() {
        let file: ConfigFile = serde_json::from_str(
            r#"{"model": "original", "matrix": {"preset": "ring"}, "x0": {"preset": "fig5"}}"#,
        )
        .unwrap();
        let cfg = SimulationConfig::resolve(file).unwrap();
        assert_eq!(cfg.max_issues, DEFAULT_MAX_ISSUES);
        assert_eq!(cfg.stop_tol, STOP_TOL);
        assert!(cfg.matrix.load().unwrap().is_doubly_stochastic());
    }

    #[test]
    fn invalid_configs() {
        assert!(SimulationConfig::resolve(ConfigFile::default()).is_err());
        let bad: std::result::Result<ConfigFile, _> =
            serde_json::from_str(r#"{"modle": "original"}"#);
        assert!(bad.is_err());
        let file = ConfigFile {
            matrix: Some(MatrixSource::Preset("ring".into())),
            stop_tol: Some(0.0),
            ..Default::default()
        };
        assert!(SimulationConfig::resolve(file).is_err());
        let dims = X0Source::Preset("fig3".into()).load(4);
        assert!(matches!(dims, Err(Error::DimensionMismatch { .. })));
    }
}
