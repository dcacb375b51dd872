// Copyright 2026 The orbitcanon Authors
// SPDX-License-Identifier: Apache-2.0

//! Verification reports: scenario configuration, per-check records and
//! their JSON / CSV serialization.

mod config;
mod single;
mod suites;

use std::io::Write;
use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use thiserror::Error;

pub use config::{parse_spec, ConfigOverrides, OutputFormat, ScenarioConfig};
pub use single::{parse_matrix, run_single, PointSpec, SingleCommand};
pub use suites::{
    printed_curve_potential, printed_zeta_antiderivative, run_report, run_suite, Suite, BOUNDEDNESS_SAMPLES,
    CURVE_PARAMETERS,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("i/o failure on {path}: {source}")]
    IoFailure {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("serialization failed: {0}")]
    Serialize(String),
}

/// 17 significant digits; non-finite values become null.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format_float(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

fn sig17_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let body: Vec<String> = xs.iter().map(|x| format_float(*x)).collect();
    let raw = RawValue::from_string(format!("[{}]", body.join(","))).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

/// Acceptance thresholds. `tol_scale` multiplies every entry; the report
/// echoes the effective values and whether they were loosened.
#[derive(Clone, Debug, Serialize)]
pub struct CheckTolerances {
    #[serde(serialize_with = "sig17")]
    pub potential_golden: f64,
    #[serde(serialize_with = "sig17")]
    pub kaehler_density_rel: f64,
    #[serde(serialize_with = "sig17")]
    pub liouville_golden: f64,
    #[serde(serialize_with = "sig17")]
    pub beta_golden: f64,
    #[serde(serialize_with = "sig17")]
    pub nagano_golden: f64,
    #[serde(serialize_with = "sig17")]
    pub euler_field: f64,
    #[serde(serialize_with = "sig17")]
    pub symplecto_su2: f64,
    #[serde(serialize_with = "sig17")]
    pub symplecto_su3: f64,
    #[serde(serialize_with = "sig17")]
    pub momentum_compat: f64,
    #[serde(serialize_with = "sig17")]
    pub momentum_hamiltonian: f64,
    #[serde(serialize_with = "sig17")]
    pub momentum_equivariance: f64,
    #[serde(serialize_with = "sig17")]
    pub psi_equivariance: f64,
    #[serde(serialize_with = "sig17")]
    pub psi_involution: f64,
    #[serde(serialize_with = "sig17")]
    pub injectivity_min_dist: f64,
    #[serde(serialize_with = "sig17")]
    pub flow_additivity: f64,
    #[serde(serialize_with = "sig17")]
    pub positivity_floor: f64,
    #[serde(serialize_with = "sig17")]
    pub invariance: f64,
    #[serde(serialize_with = "sig17")]
    pub path_independence: f64,
    #[serde(serialize_with = "sig17")]
    pub liouville_scaling_rel: f64,
    #[serde(serialize_with = "sig17")]
    pub killing_conservation: f64,
    #[serde(serialize_with = "sig17")]
    pub hyperboloid: f64,
    #[serde(serialize_with = "sig17")]
    pub form_pullback: f64,
    #[serde(serialize_with = "sig17")]
    pub wick_involution: f64,
    #[serde(serialize_with = "sig17")]
    pub anti_liouville_rel: f64,
    #[serde(serialize_with = "sig17")]
    pub singular_time: f64,
    #[serde(serialize_with = "sig17")]
    pub appendix: f64,
    #[serde(serialize_with = "sig17")]
    pub gz_exact: f64,
    #[serde(serialize_with = "sig17")]
    pub gz_interlacing: f64,
    #[serde(serialize_with = "sig17")]
    pub gz_invariance: f64,
    #[serde(serialize_with = "sig17")]
    pub curve_potential: f64,
    #[serde(serialize_with = "sig17")]
    pub curve_point: f64,
    #[serde(serialize_with = "sig17")]
    pub scale: f64,
    pub loosened: bool,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        Self {
            potential_golden: 1e-8,
            kaehler_density_rel: 1e-4,
            liouville_golden: 1e-7,
            beta_golden: 1e-7,
            nagano_golden: 1e-6,
            euler_field: 1e-5,
            symplecto_su2: 1e-4,
            symplecto_su3: 1e-3,
            momentum_compat: 1e-5,
            momentum_hamiltonian: 1e-5,
            momentum_equivariance: 1e-9,
            psi_equivariance: 1e-6,
            psi_involution: 1e-6,
            injectivity_min_dist: 1e-8,
            flow_additivity: 1e-7,
            positivity_floor: 1e-8,
            invariance: 1e-8,
            path_independence: 1e-7,
            liouville_scaling_rel: 1e-4,
            killing_conservation: 1e-12,
            hyperboloid: 1e-10,
            form_pullback: 1e-4,
            wick_involution: 1e-9,
            anti_liouville_rel: 1e-5,
            singular_time: 1e-8,
            appendix: 1e-6,
            gz_exact: 1e-12,
            gz_interlacing: 1e-9,
            gz_invariance: 1e-9,
            curve_potential: 1e-8,
            curve_point: 1e-10,
            scale: 1.0,
            loosened: false,
        }
    }
}

impl CheckTolerances {
    /// Defaults multiplied by `scale`. The injectivity bound is a lower bound
    /// and is divided instead.
    pub fn scaled(scale: f64) -> Self {
        let d = Self::default();
        Self {
            potential_golden: d.potential_golden * scale,
            kaehler_density_rel: d.kaehler_density_rel * scale,
            liouville_golden: d.liouville_golden * scale,
            beta_golden: d.beta_golden * scale,
            nagano_golden: d.nagano_golden * scale,
            euler_field: d.euler_field * scale,
            symplecto_su2: d.symplecto_su2 * scale,
            symplecto_su3: d.symplecto_su3 * scale,
            momentum_compat: d.momentum_compat * scale,
            momentum_hamiltonian: d.momentum_hamiltonian * scale,
            momentum_equivariance: d.momentum_equivariance * scale,
            psi_equivariance: d.psi_equivariance * scale,
            psi_involution: d.psi_involution * scale,
            injectivity_min_dist: d.injectivity_min_dist / scale,
            flow_additivity: d.flow_additivity * scale,
            positivity_floor: d.positivity_floor * scale,
            invariance: d.invariance * scale,
            path_independence: d.path_independence * scale,
            liouville_scaling_rel: d.liouville_scaling_rel * scale,
            killing_conservation: d.killing_conservation * scale,
            hyperboloid: d.hyperboloid * scale,
            form_pullback: d.form_pullback * scale,
            wick_involution: d.wick_involution * scale,
            anti_liouville_rel: d.anti_liouville_rel * scale,
            singular_time: d.singular_time * scale,
            appendix: d.appendix * scale,
            gz_exact: d.gz_exact * scale,
            gz_interlacing: d.gz_interlacing * scale,
            gz_invariance: d.gz_invariance * scale,
            curve_potential: d.curve_potential * scale,
            curve_point: d.curve_point * scale,
            scale,
            loosened: scale > 1.0,
        }
    }
}

pub const DERIVED_ORACLE: &str = "derived-oracle";
pub const ERRATUM_FLAG: &str = "paper-erratum-candidate";

/// One verification record. `computed` and `reference` are the headline
/// values (for sampled checks: the worst residual against zero).
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    #[serde(serialize_with = "sig17")]
    pub computed: f64,
    #[serde(serialize_with = "sig17")]
    pub reference: f64,
    #[serde(serialize_with = "sig17")]
    pub residual: f64,
    #[serde(serialize_with = "sig17")]
    pub tolerance: f64,
    pub samples: usize,
    pub errors: usize,
    pub pass: bool,
    /// Informational records never fail the suite.
    pub informational: bool,
    pub flag: Option<String>,
    pub note: Option<String>,
}

impl CheckRecord {
    /// A value compared against a reference: passes iff |computed − reference| ≤ tolerance.
    pub fn value(name: &str, anchor: &str, computed: f64, reference: f64, tolerance: f64) -> Self {
        let residual = (computed - reference).abs();
        Self {
            name: name.to_string(),
            anchor: anchor.to_string(),
            computed,
            reference,
            residual,
            tolerance,
            samples: 1,
            errors: 0,
            pass: residual <= tolerance,
            informational: false,
            flag: None,
            note: None,
        }
    }

    /// The worst of a batch of residuals; evaluation errors count as failures.
    pub fn worst(name: &str, anchor: &str, residuals: &[Result<f64, String>], tolerance: f64) -> Self {
        let mut worst: f64 = 0.0;
        let mut errors = 0;
        let mut first_error = None;
        for r in residuals {
            match r {
                Ok(v) if v.is_finite() => worst = worst.max(*v),
                Ok(_) => errors += 1,
                Err(e) => {
                    errors += 1;
                    first_error.get_or_insert_with(|| e.clone());
                }
            }
        }
        Self {
            name: name.to_string(),
            anchor: anchor.to_string(),
            computed: worst,
            reference: 0.0,
            residual: worst,
            tolerance,
            samples: residuals.len(),
            errors,
            pass: errors == 0 && worst <= tolerance && !residuals.is_empty(),
            informational: false,
            flag: None,
            note: first_error,
        }
    }

    /// A boolean property over a batch.
    pub fn holds(name: &str, anchor: &str, failures: usize, samples: usize, note: Option<String>) -> Self {
        Self {
            name: name.to_string(),
            anchor: anchor.to_string(),
            computed: failures as f64,
            reference: 0.0,
            residual: failures as f64,
            tolerance: 0.0,
            samples,
            errors: 0,
            pass: failures == 0 && samples > 0,
            informational: false,
            flag: None,
            note,
        }
    }

    pub fn informational(mut self, flag: Option<&str>) -> Self {
        self.informational = true;
        self.flag = flag.map(str::to_string);
        self
    }

    /// Sets the note, keeping any first-error text after it.
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(err) => format!("{note}; first error: {err}"),
            None => note,
        });
        self
    }

    /// Whether the record counts as a failure of the suite.
    pub fn failed(&self) -> bool {
        !self.informational && !self.pass
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub informational: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioEcho {
    pub model: String,
    #[serde(serialize_with = "sig17_vec")]
    pub orbit_spec: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: CheckTolerances,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub section: String,
    #[serde(serialize_with = "sig17")]
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: ScenarioEcho,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub timings: Vec<Timing>,
}

/// Collects records section by section with wall-clock timings.
pub struct ReportBuilder {
    checks: Vec<CheckRecord>,
    timings: Vec<Timing>,
}

impl Default for ReportBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl ReportBuilder {
    pub fn new() -> Self {
        Self {
            checks: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn section(&mut self, name: &str, f: impl FnOnce() -> Vec<CheckRecord>) {
        let start = Instant::now();
        let records = f();
        self.timings.push(Timing {
            section: name.to_string(),
            seconds: start.elapsed().as_secs_f64(),
        });
        self.checks.extend(records);
    }

    pub fn finish(self, scenario: ScenarioEcho) -> Report {
        let mut summary = Summary {
            total: self.checks.len(),
            ..Summary::default()
        };
        for c in &self.checks {
            if c.informational {
                summary.informational += 1;
            } else if c.pass {
                summary.passed += 1;
            } else {
                summary.failed += 1;
            }
        }
        Report {
            scenario,
            checks: self.checks,
            summary,
            timings: self.timings,
        }
    }
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        serde_json::to_string_pretty(self).map_err(|e| ReportError::Serialize(e.to_string()))
    }

    /// The checks array flattened to CSV.
    pub fn to_csv(&self) -> Result<String, ReportError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let ser = |e: csv::Error| ReportError::Serialize(e.to_string());
        w.write_record([
            "name",
            "anchor",
            "computed",
            "reference",
            "residual",
            "tolerance",
            "samples",
            "errors",
            "pass",
            "informational",
            "flag",
            "note",
        ])
        .map_err(ser)?;
        for c in &self.checks {
            w.write_record([
                c.name.clone(),
                c.anchor.clone(),
                format_float(c.computed),
                format_float(c.reference),
                format_float(c.residual),
                format_float(c.tolerance),
                c.samples.to_string(),
                c.errors.to_string(),
                c.pass.to_string(),
                c.informational.to_string(),
                c.flag.clone().unwrap_or_default(),
                c.note.clone().unwrap_or_default(),
            ])
            .map_err(ser)?;
        }
        let bytes = w.into_inner().map_err(|e| ReportError::Serialize(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ReportError::Serialize(e.to_string()))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, ReportError> {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn write_to(&self, path: &std::path::Path, format: OutputFormat) -> Result<(), ReportError> {
        let body = self.render(format)?;
        let io = |source| ReportError::IoFailure {
            path: path.display().to_string(),
            source,
        };
        let mut f = std::fs::File::create(path).map_err(io)?;
        f.write_all(body.as_bytes()).map_err(io)?;
        f.write_all(b"\n").map_err(io)
    }

    /// Human summary, one line per check.
    pub fn human_summary(&self) -> String {
        let mut out = format!(
            "{} seed={} samples={}\n",
            self.scenario.model, self.scenario.seed, self.scenario.samples
        );
        for c in &self.checks {
            let status = if c.informational {
                "INFO"
            } else if c.pass {
                "PASS"
            } else {
                "FAIL"
            };
            if c.informational && c.tolerance.is_infinite() {
                out.push_str(&format!("  {status} {:<44} value={:.10e}", c.name, c.computed));
            } else {
                out.push_str(&format!(
                    "  {status} {:<44} residual={:<12.3e} tol={:.1e}",
                    c.name, c.residual, c.tolerance
                ));
            }
            if let Some(flag) = &c.flag {
                out.push_str(&format!(" [{flag}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "  {} checks: {} passed, {} failed, {} informational\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.informational
        ));
        out
    }
}
