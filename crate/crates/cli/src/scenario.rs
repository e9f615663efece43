//! Scenario files.
//!
//! ```json
//! {
//!   "domain": {"model": "ds", "n": 4, "marks": [[1, 0, 0, 0], [-1, 0, 0, 0]]},
//!   "seed": 7,
//!   "output": "two_mark",
//!   "tasks": [
//!     {"task": "level_curvature", "a_list": [0.5, 1.0]},
//!     {"task": "barrier_scan"},
//!     {"task": "counterexample", "n": 4, "a_grid": [0.5, 1.0, 2.0]}
//!   ]
//! }
//! ```

use std::f64::consts::FRAC_PI_2;

use anyhow::{bail, Context, Result};
use cosmotime::curvature::CmcVerdict;
use cosmotime::foliation::CurveSample;
use cosmotime::io::DomainSpec;
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub domain: Option<DomainSpec>,
    pub seed: u64,
    pub output: String,
    pub tasks: Vec<Task>,
}

fn default_points() -> usize {
    100
}
fn default_level_samples() -> usize {
    64
}
fn default_scan_samples() -> usize {
    32
}
fn default_patch_samples() -> usize {
    16
}
fn default_lambda() -> f64 {
    -2.0
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum Task {
    TauProfile {
        #[serde(default = "default_points")]
        points: usize,
    },
    LevelCurvature {
        a_list: Vec<f64>,
        #[serde(default)]
        reverse: bool,
        #[serde(default = "default_level_samples")]
        samples: usize,
    },
    BarrierScan {
        #[serde(default)]
        a_list: Option<Vec<f64>>,
        #[serde(default)]
        b_list: Option<Vec<f64>>,
        #[serde(default = "default_scan_samples")]
        samples: usize,
        /// Fails the task when the verdict differs.
        #[serde(default)]
        expect: Option<CmcVerdict>,
    },
    FoliationCheck {
        curve: Vec<CurveSample<f64>>,
    },
    GaussFlow {
        t_list: Vec<f64>,
        #[serde(default = "default_lambda")]
        lambda: f64,
        #[serde(default = "default_patch_samples")]
        samples: usize,
        #[serde(default)]
        n: Option<usize>,
    },
    Counterexample {
        n: usize,
        a_grid: Vec<f64>,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::TauProfile { .. } => "tau_profile",
            Task::LevelCurvature { .. } => "level_curvature",
            Task::BarrierScan { .. } => "barrier_scan",
            Task::FoliationCheck { .. } => "foliation_check",
            Task::GaussFlow { .. } => "gauss_flow",
            Task::Counterexample { .. } => "counterexample",
        }
    }

    fn needs_domain(&self) -> bool {
        matches!(self, Task::TauProfile { .. } | Task::LevelCurvature { .. } | Task::BarrierScan { .. })
    }
}

pub fn parse(text: &str) -> Result<Scenario> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            anyhow::anyhow!("{inner}")
        } else {
            anyhow::anyhow!("line {}, column {}, field `{path}`: {inner}", inner.line(), inner.column())
        }
    })?;
    scenario.validate()?;
    Ok(scenario)
}

fn check_levels(field: &str, list: &[f64], lo: f64, hi: f64) -> Result<()> {
    if list.is_empty() {
        bail!("{field}: must not be empty");
    }
    for (i, &a) in list.iter().enumerate() {
        if !(a > lo && a < hi) {
            bail!("{field}[{i}]: {a} outside ({lo}, {hi})");
        }
    }
    Ok(())
}

impl Scenario {
    fn validate(&self) -> Result<()> {
        if self.output.is_empty() {
            bail!("output: empty prefix");
        }
        let ads = matches!(self.domain, Some(DomainSpec::Ads { .. }));
        let level_hi = if ads { FRAC_PI_2 } else { f64::INFINITY };
        if let Some(d) = &self.domain {
            d.build::<f64>().context("domain")?;
        }
        for (i, task) in self.tasks.iter().enumerate() {
            let at = format!("tasks[{i}]");
            if task.needs_domain() && self.domain.is_none() {
                bail!("{at}: {} needs a domain", task.name());
            }
            match task {
                Task::TauProfile { points } if *points == 0 => bail!("{at}.points: must be positive"),
                Task::LevelCurvature { a_list, samples, .. } => {
                    check_levels(&format!("{at}.a_list"), a_list, 0.0, level_hi)?;
                    if *samples == 0 {
                        bail!("{at}.samples: must be positive");
                    }
                }
                Task::BarrierScan { a_list, b_list, samples, .. } => {
                    if let Some(a) = a_list {
                        check_levels(&format!("{at}.a_list"), a, 0.0, level_hi)?;
                    }
                    if let Some(b) = b_list {
                        check_levels(&format!("{at}.b_list"), b, 0.0, level_hi)?;
                    }
                    if *samples == 0 {
                        bail!("{at}.samples: must be positive");
                    }
                }
                Task::FoliationCheck { curve } => {
                    cosmotime::io::CurveSpec { curve: curve.clone() }
                        .build::<f64>()
                        .with_context(|| format!("{at}.curve"))?;
                }
                Task::GaussFlow { t_list, lambda, samples, n } => {
                    if t_list.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
                        bail!("{at}.t_list: times must be finite and non-negative");
                    }
                    if !lambda.is_finite() || (lambda.abs() - 1.0).abs() < 1e-9 {
                        bail!("{at}.lambda: must be finite and different from ±1");
                    }
                    if *samples == 0 {
                        bail!("{at}.samples: must be positive");
                    }
                    let dim = n.or(self.domain.as_ref().map(DomainSpec::n));
                    match dim {
                        Some(d) if d >= 2 => {}
                        Some(d) => bail!("{at}.n: dimension {d} too small"),
                        None => bail!("{at}.n: required without a domain"),
                    }
                }
                Task::Counterexample { n, a_grid } => {
                    if *n < 3 {
                        bail!("{at}.n: must be at least 3");
                    }
                    check_levels(&format!("{at}.a_grid"), a_grid, 0.0, f64::INFINITY)?;
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_field_path() {
        let err = parse(r#"{"seed": 1, "output": "x", "tasks": [{"task": "counterexample", "n": "four", "a_grid": [1]}]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("field `tasks[0]`") && err.contains("expected usize"), "{err}");
    }

    #[test]
    fn seed_is_mandatory() {
        assert!(parse(r#"{"output": "x", "tasks": []}"#).is_err());
    }

    #[test]
    fn rejects_levels_outside_range() {
        let text = r#"{"domain": {"model": "ads", "n": 3, "points": [{"p": [1, 0], "theta": 0}, {"p": [0, 1], "theta": 0}, {"p": [-1, 0], "theta": 0}]},
            "seed": 1, "output": "x", "tasks": [{"task": "level_curvature", "a_list": [2.0]}]}"#;
        let err = parse(text).unwrap_err().to_string();
        assert!(err.contains("tasks[0].a_list[0]"), "{err}");
    }

    #[test]
    fn domain_tasks_need_a_domain() {
        assert!(parse(r#"{"seed": 1, "output": "x", "tasks": [{"task": "barrier_scan"}]}"#).is_err());
    }
}
