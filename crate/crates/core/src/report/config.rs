// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::str::FromStr;

use super::ReportError;
use crate::models::ModelKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub model: ModelKind,
    pub orbit_spec: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tol_scale: f64,
    pub format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

/// Optional fields, layered file < flags.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigOverrides {
    pub model: Option<ModelKind>,
    pub orbit_spec: Option<Vec<f64>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol_scale: Option<f64>,
    pub format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

fn invalid(msg: impl Into<String>) -> ReportError {
    ReportError::ConfigInvalid(msg.into())
}

pub fn parse_spec(s: &str) -> Result<Vec<f64>, ReportError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| invalid(format!("bad orbit_spec entry `{t}`"))))
        .collect()
}

impl ConfigOverrides {
    /// Flat `key = value` text; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| invalid(format!("line {}: bad {what} `{value}`", lineno + 1));
            match key {
                "model" => out.model = Some(value.parse().map_err(invalid)?),
                "orbit_spec" => out.orbit_spec = Some(parse_spec(value)?),
                "samples" => out.samples = Some(value.parse().map_err(|_| bad("samples"))?),
                "seed" => out.seed = Some(value.parse().map_err(|_| bad("seed"))?),
                "tol_scale" => out.tol_scale = Some(value.parse().map_err(|_| bad("tol_scale"))?),
                "format" | "output_format" => out.format = Some(value.parse().map_err(invalid)?),
                "out" | "output_path" => out.output_path = Some(PathBuf::from(value)),
                other => return Err(invalid(format!("line {}: unknown key `{other}`", lineno + 1))),
            }
        }
        Ok(out)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, ReportError> {
        let text = std::fs::read_to_string(path).map_err(|source| ReportError::IoFailure {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// `other` wins where set.
    pub fn merge(self, other: ConfigOverrides) -> Self {
        Self {
            model: other.model.or(self.model),
            orbit_spec: other.orbit_spec.or(self.orbit_spec),
            samples: other.samples.or(self.samples),
            seed: other.seed.or(self.seed),
            tol_scale: other.tol_scale.or(self.tol_scale),
            format: other.format.or(self.format),
            output_path: other.output_path.or(self.output_path),
        }
    }
}

impl ScenarioConfig {
    pub fn default_samples(model: ModelKind) -> usize {
        match model {
            ModelKind::Su2Weyl | ModelKind::Sl2cWick => 400,
            ModelKind::Su3Flags => 200,
            ModelKind::Su3Weyl => 50,
        }
    }

    pub fn new(model: ModelKind) -> Self {
        Self {
            model,
            orbit_spec: model.default_spec(),
            samples: Self::default_samples(model),
            seed: 7,
            tol_scale: 1.0,
            format: OutputFormat::Json,
            output_path: None,
        }
    }

    pub fn from_overrides(o: ConfigOverrides) -> Result<Self, ReportError> {
        let model = o.model.ok_or_else(|| invalid("no model given"))?;
        let mut cfg = Self::new(model);
        if let Some(s) = o.orbit_spec {
            cfg.orbit_spec = s;
        }
        if let Some(n) = o.samples {
            cfg.samples = n;
        }
        if let Some(s) = o.seed {
            cfg.seed = s;
        }
        if let Some(t) = o.tol_scale {
            cfg.tol_scale = t;
        }
        if let Some(f) = o.format {
            cfg.format = f;
        }
        cfg.output_path = o.output_path;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ReportError> {
        if self.samples == 0 {
            return Err(invalid("samples must be at least 1"));
        }
        if !(self.tol_scale.is_finite() && self.tol_scale > 0.0) {
            return Err(invalid(format!("tol_scale must be positive, got {}", self.tol_scale)));
        }
        if self.orbit_spec.iter().any(|v| !v.is_finite()) {
            return Err(invalid("orbit_spec has non-finite entries"));
        }
        self.model
            .build(&self.orbit_spec)
            .map_err(|e| invalid(format!("orbit_spec {:?}: {e}", self.orbit_spec)))?;
        Ok(())
    }
}
