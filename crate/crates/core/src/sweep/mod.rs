//! Parameter sweeps over charging time, with an optional secondary axis.
//!
//! ```
//! use dimer_battery::sweep::{figure_preset, run_sweep};
//!
//! let mut spec = figure_preset("fig3").unwrap();
//! spec.tau.count = 9;
//! let result = run_sweep(&spec).unwrap();
//! assert_eq!(result.rows.len(), 3 * 9);
//! ```

mod config;
mod csv;
mod plot;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{Evaluator, MetricsSample, SampleOptions, DEFAULT_POWER_STEP};
use crate::model::DimerParams;

pub use config::{parse_config, to_config_json};
pub use csv::{emit_csv, read_csv, CsvRow, CsvTable, CSV_HEADER};
pub use plot::emit_plot_script;

/// Default number of charging-time samples.
pub const DEFAULT_TAU_COUNT: usize = 401;

/// Names accepted by [`figure_preset`].
pub const PRESETS: [&str; 4] = ["fig1", "fig2", "fig3", "fig4"];

/// Per-field validation diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl FieldError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep: {}", join(.0))]
    Invalid(Vec<FieldError>),

    #[error("unknown preset `{0}` (expected one of fig1, fig2, fig3, fig4)")]
    UnknownPreset(String),

    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("malformed CSV at line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Numeric(#[from] crate::Error),
}

fn join(v: &[FieldError]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl SweepError {
    /// Process exit status: 1 for I/O and numerical failures, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            SweepError::Io(_) | SweepError::Numeric(_) => 1,
            _ => 2,
        }
    }
}

/// Secondary sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Delta,
    Nu0,
    V12,
    Temperature,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::Delta, Axis::Nu0, Axis::V12, Axis::Temperature];

    pub fn name(self) -> &'static str {
        match self {
            Axis::Delta => "delta",
            Axis::Nu0 => "nu0",
            Axis::V12 => "v12",
            Axis::Temperature => "temperature",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == s)
    }

    /// Replaces this axis' coordinate in `p`.
    pub fn apply(self, p: DimerParams, value: f64) -> crate::Result<DimerParams> {
        match self {
            Axis::Delta => p.with_delta(value),
            Axis::Nu0 => p.with_nu0(value),
            Axis::V12 => p.with_v12(value),
            Axis::Temperature => p.with_temperature(value),
        }
    }

    pub(crate) fn symbol(self) -> &'static str {
        match self {
            Axis::Delta => "{/Symbol D}",
            Axis::Nu0 => "{/Symbol n}_0",
            Axis::V12 => "V_{12}",
            Axis::Temperature => "T",
        }
    }
}

/// A column of the sweep output. Ordered as in the CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Ergotropy,
    AntiErgotropy,
    Capacity,
    Power,
    AvgPower,
    Coherence,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Ergotropy,
        Metric::AntiErgotropy,
        Metric::Capacity,
        Metric::Power,
        Metric::AvgPower,
        Metric::Coherence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Ergotropy => "ergotropy",
            Metric::AntiErgotropy => "anti_ergotropy",
            Metric::Capacity => "capacity",
            Metric::Power => "power",
            Metric::AvgPower => "avg_power",
            Metric::Coherence => "coherence",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == s)
    }

    /// Value of this metric in `s`; `None` where undefined.
    pub fn value(self, s: &MetricsSample) -> Option<f64> {
        match self {
            Metric::Ergotropy => Some(s.ergotropy),
            Metric::AntiErgotropy => Some(s.anti_ergotropy),
            Metric::Capacity => Some(s.capacity),
            Metric::Power => Some(s.power),
            Metric::AvgPower => s.avg_power,
            Metric::Coherence => Some(s.coherence_l1),
        }
    }
}

/// Uniform grid `start, ..., stop` with `count` points. A single point is `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for TauGrid {
    fn default() -> Self {
        Self {
            start: 0.0,
            stop: 2.0 * PI,
            count: DEFAULT_TAU_COUNT,
        }
    }
}

impl TauGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (k as f64 / n)
                }
            })
            .collect()
    }

    pub fn step(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.stop - self.start) / (self.count - 1) as f64
        }
    }

    fn check(&self, out: &mut Vec<FieldError>) {
        if !(self.start >= 0.0 && self.start.is_finite()) {
            out.push(FieldError::new(
                "tau_start",
                format!("must be finite and >= 0, got {}", self.start),
            ));
        }
        if !(self.stop > self.start && self.stop.is_finite()) {
            out.push(FieldError::new(
                "tau_stop",
                format!("must be finite and > tau_start, got {}", self.stop),
            ));
        }
        if self.count == 0 {
            out.push(FieldError::new("tau_count", "must be >= 1"));
        }
    }
}

/// Secondary axis with its values, in the order given.
#[derive(Debug, Clone, PartialEq)]
pub struct Vary {
    pub axis: Axis,
    pub values: Vec<f64>,
}

/// Full description of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub params: DimerParams,
    pub tau: TauGrid,
    pub vary: Option<Vary>,
    pub metrics: BTreeSet<Metric>,
    pub power_step: f64,
}

impl SweepSpec {
    /// All metrics, default grid, no secondary axis.
    pub fn new(params: DimerParams) -> Self {
        Self {
            params,
            tau: TauGrid::default(),
            vary: None,
            metrics: Metric::ALL.into_iter().collect(),
            power_step: DEFAULT_POWER_STEP,
        }
    }

    pub fn with_vary(mut self, axis: Axis, values: impl Into<Vec<f64>>) -> Self {
        self.vary = Some(Vary {
            axis,
            values: values.into(),
        });
        self
    }

    pub fn with_metrics(mut self, metrics: impl IntoIterator<Item = Metric>) -> Self {
        self.metrics = metrics.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let mut out = Vec::new();
        self.tau.check(&mut out);
        if self.metrics.is_empty() {
            out.push(FieldError::new(
                "metrics",
                "at least one metric is required",
            ));
        }
        if !(self.power_step > 0.0 && self.power_step.is_finite()) {
            out.push(FieldError::new(
                "power_step",
                format!("must be finite and > 0, got {}", self.power_step),
            ));
        }
        if let Some(v) = &self.vary {
            if v.values.is_empty() {
                out.push(FieldError::new("vary_values", "must not be empty"));
            }
            for (i, &x) in v.values.iter().enumerate() {
                if !x.is_finite() {
                    out.push(FieldError::new(
                        format!("vary_values[{i}]"),
                        format!("must be finite, got {x}"),
                    ));
                } else if let Err(e) = v.axis.apply(self.params, x) {
                    out.push(FieldError::new(format!("vary_values[{i}]"), e.to_string()));
                } else if v.values[..i].contains(&x) {
                    out.push(FieldError::new(
                        format!("vary_values[{i}]"),
                        format!("duplicate value {x}"),
                    ));
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(SweepError::Invalid(out))
        }
    }

    /// Secondary-axis values in output order (ascending), or `[None]`.
    pub fn axis_values(&self) -> Vec<Option<f64>> {
        match &self.vary {
            None => vec![None],
            Some(v) => {
                let mut xs = v.values.clone();
                xs.sort_by(f64::total_cmp);
                xs.into_iter().map(Some).collect()
            }
        }
    }

    pub fn params_at(&self, axis_value: Option<f64>) -> crate::Result<DimerParams> {
        match (&self.vary, axis_value) {
            (Some(v), Some(x)) => v.axis.apply(self.params, x),
            _ => Ok(self.params),
        }
    }
}

/// One output row: a metrics sample tagged with its secondary-axis value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub axis_value: Option<f64>,
    pub sample: MetricsSample,
}

/// Where a result came from; echoed into emitted files.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    /// Preset name or config stem.
    pub label: String,
    /// Relative path of the CSV the plot script reads.
    pub data_file: String,
    pub spec: SweepSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub provenance: Provenance,
}

impl SweepResult {
    pub fn spec(&self) -> &SweepSpec {
        &self.provenance.spec
    }

    /// Sets the label and the CSV file name `<label>.csv`.
    pub fn labeled(mut self, label: &str) -> Self {
        self.provenance.label = label.to_owned();
        self.provenance.data_file = format!("{label}.csv");
        self
    }

    /// Rows belonging to one secondary-axis value.
    pub fn series(&self, axis_value: Option<f64>) -> impl Iterator<Item = &MetricsSample> {
        self.rows
            .iter()
            .filter(move |r| r.axis_value == axis_value)
            .map(|r| &r.sample)
    }

    /// Maximum over tau of `metric` for each secondary-axis value.
    pub fn max_by_series(&self, metric: Metric) -> Vec<(Option<f64>, f64)> {
        self.spec()
            .axis_values()
            .into_iter()
            .map(|a| {
                let m = self
                    .series(a)
                    .filter_map(|s| metric.value(s))
                    .fold(f64::NEG_INFINITY, f64::max);
                (a, m)
            })
            .collect()
    }

    /// Broken row invariants, labelled by row index.
    pub fn invariant_violations(&self, tol: f64) -> Vec<String> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                r.sample
                    .invariant_violations(tol)
                    .into_iter()
                    .map(move |v| format!("row {i}: {v}"))
            })
            .collect()
    }
}

/// Evaluates every (axis value, tau) pair; rows are ordered by axis value, then tau.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    spec.validate()?;
    let taus = spec.tau.points();
    let opts = SampleOptions {
        power_step: spec.power_step,
        ..SampleOptions::default()
    };
    let series = spec
        .axis_values()
        .into_iter()
        .map(|a| Ok((a, Evaluator::new(&spec.params_at(a)?, opts)?)))
        .collect::<crate::Result<Vec<_>>>()?;

    let jobs: Vec<(usize, f64)> = (0..series.len())
        .flat_map(|s| taus.iter().map(move |&t| (s, t)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(s, tau)| {
            let (axis_value, ev) = &series[s];
            Ok(SweepRow {
                axis_value: *axis_value,
                sample: ev.sample(tau)?,
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;

    Ok(SweepResult {
        rows,
        provenance: Provenance {
            tool: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            label: "sweep".to_owned(),
            data_file: "sweep.csv".to_owned(),
            spec: spec.clone(),
        },
    })
}

/// Sweep used to draw one of the four reference figures.
///
/// | preset | fixed                         | varied                  |
/// |--------|-------------------------------|-------------------------|
/// | fig1   | ν0 = 6, V12 = 0.05, T = 0.5   | Δ ∈ {0, 4, −8, 10}      |
/// | fig2   | Δ = 0, V12 = 0.5, T = 0.5     | ν0 ∈ {2, 4, 6, 8}       |
/// | fig3   | Δ = 5, ν0 = 3.5, T = 0.5      | V12 ∈ {0, 1.5, 10}      |
/// | fig4   | Δ = 6, ν0 = 4, V12 = 0.01     | T ∈ {0.5, 1, 2}         |
pub fn figure_preset(name: &str) -> Result<SweepSpec, SweepError> {
    let (nu0, delta, v12, t, axis, values): (f64, f64, f64, f64, Axis, &[f64]) = match name {
        "fig1" => (6.0, 0.0, 0.05, 0.5, Axis::Delta, &[0.0, 4.0, -8.0, 10.0]),
        "fig2" => (2.0, 0.0, 0.5, 0.5, Axis::Nu0, &[2.0, 4.0, 6.0, 8.0]),
        "fig3" => (3.5, 5.0, 0.0, 0.5, Axis::V12, &[0.0, 1.5, 10.0]),
        "fig4" => (4.0, 6.0, 0.01, 0.5, Axis::Temperature, &[0.5, 1.0, 2.0]),
        other => return Err(SweepError::UnknownPreset(other.to_owned())),
    };
    let params = DimerParams::new(nu0, delta, v12, t)?;
    Ok(SweepSpec::new(params)
        .with_vary(axis, values.to_vec())
        .with_metrics([
            Metric::Ergotropy,
            Metric::Power,
            Metric::Coherence,
            Metric::Capacity,
        ]))
}
