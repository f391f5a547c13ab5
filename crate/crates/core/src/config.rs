//! Analysis configuration: a single JSON document carrying the two boundary
//! expressions with their tail declarations, the ambient dimension, window,
//! tolerances, and output selections. Every default is filled in explicitly
//! so the echoed configuration in the run document is complete.

use crate::funcspec::Tails;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA: &str = "reeb-sandwich/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionConfig {
    pub expr: String,
    pub tails: Tails<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub root_tol: f64,
    pub level_merge_tol: f64,
    pub isolation_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            root_tol: 1e-10,
            level_merge_tol: 1e-8,
            isolation_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ManifoldConfig {
    pub samples: usize,
}

impl Default for ManifoldConfig {
    fn default() -> Self {
        ManifoldConfig { samples: 10_000 }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleConfig {
    pub nx: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { nx: 4096 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Json,
    Dot,
    Svg,
}

fn default_schema() -> String {
    SCHEMA.to_string()
}

fn default_m() -> usize {
    3
}

fn default_window() -> [f64; 2] {
    [-10.0, 10.0]
}

fn default_seed() -> u64 {
    20250810
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Json, OutputKind::Dot, OutputKind::Svg]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub c1: FunctionConfig,
    pub c2: FunctionConfig,
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default = "default_window")]
    pub window: [f64; 2],
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub manifold: ManifoldConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl AnalysisConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: AnalysisConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.schema != SCHEMA {
            return Err(ConfigError::Invalid(format!(
                "unsupported schema `{}` (expected `{SCHEMA}`)",
                self.schema
            )));
        }
        if self.m < 2 {
            return Err(ConfigError::Invalid("m must be at least 2".into()));
        }
        if self.window[0] >= self.window[1] {
            return Err(ConfigError::Invalid("window must be nondegenerate".into()));
        }
        let t = &self.tolerances;
        if !(t.root_tol > 0.0 && t.level_merge_tol > 0.0 && t.isolation_tol > 0.0) {
            return Err(ConfigError::Invalid("tolerances must be positive".into()));
        }
        if self.manifold.samples == 0 {
            return Err(ConfigError::Invalid(
                "manifold sample count must be positive".into(),
            ));
        }
        if self.oracle.nx < 2048 {
            return Err(ConfigError::Invalid(
                "oracle resolution must be at least 2048".into(),
            ));
        }
        Ok(())
    }
}

/// Bundled fixture configurations, by name.
pub const FIXTURES: [(&str, &str); 6] = [
    ("example1_1", include_str!("../fixtures/example1_1.json")),
    ("example1_2", include_str!("../fixtures/example1_2.json")),
    (
        "example2_t0_0.5",
        include_str!("../fixtures/example2_t0_0.5.json"),
    ),
    (
        "example3_rotated",
        include_str!("../fixtures/example3_rotated.json"),
    ),
    (
        "example4_surrogate",
        include_str!("../fixtures/example4_surrogate.json"),
    ),
    (
        "thm4_parabolas",
        include_str!("../fixtures/thm4_parabolas.json"),
    ),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}
