//! Flat JSON sweep configuration.
//!
//! ```json
//! {"nu0": 6, "delta": 0, "v12": 0.05, "temperature": 0.5,
//!  "vary_name": "delta", "vary_values": [0, 4, -8, 10]}
//! ```
//!
//! The four model parameters are required. Grid, metrics and power step
//! default to `[0, 2π]`, 401 points, all metrics, `1e-5`. Numbers may also
//! be given as strings (`"NaN"`, `"inf"`), which lets non-finite values
//! reach validation instead of failing as JSON syntax.

use serde::{Deserialize, Serialize};

use super::{Axis, FieldError, Metric, SweepError, SweepSpec, TauGrid, Vary, DEFAULT_TAU_COUNT};
use crate::metrics::DEFAULT_POWER_STEP;
use crate::model::DimerParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Count(u64),
    Number(f64),
    Text(String),
}

impl Num {
    fn get(&self, field: &str, out: &mut Vec<FieldError>) -> Option<f64> {
        match self {
            Num::Count(n) => Some(*n as f64),
            Num::Number(x) => Some(*x),
            Num::Text(s) => match s.trim().parse::<f64>() {
                Ok(x) => Some(x),
                Err(_) => {
                    out.push(FieldError::new(field, format!("`{s}` is not a number")));
                    None
                }
            },
        }
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    nu0: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v12: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    temperature: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_start: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_stop: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_count: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vary_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vary_values: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metrics: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power_step: Option<Num>,
}

/// Parses and validates a sweep configuration.
pub fn parse_config(text: &str) -> Result<SweepSpec, SweepError> {
    let doc: ConfigDoc = serde_json::from_str(text).map_err(|e| SweepError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let spec = doc.into_spec()?;
    spec.validate()?;
    Ok(spec)
}

/// Serializes `spec` in the configuration format; `parse_config` inverts it.
pub fn to_config_json(spec: &SweepSpec) -> String {
    let doc = ConfigDoc {
        nu0: Some(Num::Number(spec.params.nu0())),
        delta: Some(Num::Number(spec.params.delta())),
        v12: Some(Num::Number(spec.params.v12())),
        temperature: Some(Num::Number(spec.params.temperature())),
        tau_start: Some(Num::Number(spec.tau.start)),
        tau_stop: Some(Num::Number(spec.tau.stop)),
        tau_count: Some(Num::Count(spec.tau.count as u64)),
        vary_name: spec.vary.as_ref().map(|v| v.axis.name().to_owned()),
        vary_values: spec
            .vary
            .as_ref()
            .map(|v| v.values.iter().map(|&x| Num::Number(x)).collect()),
        metrics: Some(spec.metrics.iter().map(|m| m.name().to_owned()).collect()),
        power_step: Some(Num::Number(spec.power_step)),
    };
    serde_json::to_string(&doc).expect("config document serializes")
}

impl ConfigDoc {
    fn into_spec(self) -> Result<SweepSpec, SweepError> {
        let mut errs = Vec::new();
        let required = |field: &'static str, v: &Option<Num>, errs: &mut Vec<FieldError>| match v {
            Some(n) => n.get(field, errs),
            None => {
                errs.push(FieldError::new(field, "required"));
                None
            }
        };
        let nu0 = required("nu0", &self.nu0, &mut errs);
        let delta = required("delta", &self.delta, &mut errs);
        let v12 = required("v12", &self.v12, &mut errs);
        let temperature = required("temperature", &self.temperature, &mut errs);

        let optional =
            |field: &'static str, v: &Option<Num>, default: f64, errs: &mut Vec<FieldError>| {
                v.as_ref().map_or(Some(default), |n| n.get(field, errs))
            };
        let defaults = TauGrid::default();
        let tau_start = optional("tau_start", &self.tau_start, defaults.start, &mut errs);
        let tau_stop = optional("tau_stop", &self.tau_stop, defaults.stop, &mut errs);
        let tau_count = optional(
            "tau_count",
            &self.tau_count,
            DEFAULT_TAU_COUNT as f64,
            &mut errs,
        )
        .and_then(|c| {
            if c >= 0.0 && c.fract() == 0.0 && c <= u32::MAX as f64 {
                Some(c as usize)
            } else {
                errs.push(FieldError::new(
                    "tau_count",
                    format!("must be a non-negative integer, got {c}"),
                ));
                None
            }
        });
        let power_step = optional(
            "power_step",
            &self.power_step,
            DEFAULT_POWER_STEP,
            &mut errs,
        );

        let metrics = match &self.metrics {
            None => Metric::ALL.into_iter().collect(),
            Some(names) => names
                .iter()
                .filter_map(|n| {
                    let m = Metric::from_name(n);
                    if m.is_none() {
                        errs.push(FieldError::new("metrics", format!("unknown metric `{n}`")));
                    }
                    m
                })
                .collect(),
        };

        let vary = match (&self.vary_name, &self.vary_values) {
            (None, None) => None,
            (Some(name), Some(values)) => {
                let axis = Axis::from_name(name);
                if axis.is_none() {
                    errs.push(FieldError::new(
                        "vary_name",
                        format!("unknown axis `{name}` (expected delta, nu0, v12 or temperature)"),
                    ));
                }
                let values: Vec<f64> = values
                    .iter()
                    .enumerate()
                    .filter_map(|(i, n)| n.get(&format!("vary_values[{i}]"), &mut errs))
                    .collect();
                axis.map(|axis| Vary { axis, values })
            }
            (Some(_), None) => {
                errs.push(FieldError::new(
                    "vary_values",
                    "required when vary_name is set",
                ));
                None
            }
            (None, Some(_)) => {
                errs.push(FieldError::new(
                    "vary_name",
                    "required when vary_values is set",
                ));
                None
            }
        };

        let params = match (nu0, delta, v12, temperature) {
            (Some(nu0), Some(delta), Some(v12), Some(t)) => {
                match DimerParams::new(nu0, delta, v12, t) {
                    Ok(p) => Some(p),
                    Err(crate::Error::InvalidParameter { name, reason }) => {
                        errs.push(FieldError::new(name, reason));
                        None
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            _ => None,
        };

        match (params, tau_start, tau_stop, tau_count, power_step) {
            (Some(params), Some(start), Some(stop), Some(count), Some(power_step))
                if errs.is_empty() =>
            {
                Ok(SweepSpec {
                    params,
                    tau: TauGrid { start, stop, count },
                    vary,
                    metrics,
                    power_step,
                })
            }
            _ => Err(SweepError::Invalid(errs)),
        }
    }
}
