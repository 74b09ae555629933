//! Run configuration: a JSON document plus `key=value` overrides.

use crate::Failure;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Sample,
    Solve,
    Telegraph,
    Limit,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sample => "sample",
            Command::Solve => "solve",
            Command::Telegraph => "telegraph",
            Command::Limit => "limit",
            Command::Verify => "verify",
        }
    }
}

/// What `sample` draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// The weighted subordinator `H(t)`.
    H,
    /// Its inverse `L(t)`.
    L,
    /// The position `S(c^2 L(t))` in `R^n`.
    X,
}

/// What `solve` tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Density,
    Cf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TelegraphConfig {
    /// Number of time-derivative terms, 2 or 3.
    pub k: u32,
    pub lambda: f64,
    pub nu: f64,
}

impl Default for TelegraphConfig {
    fn default() -> Self {
        TelegraphConfig { k: 2, lambda: 1.0, nu: 0.4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub command: Option<Command>,
    /// `[lambda, nu]` pairs.
    pub spec: Vec<(f64, f64)>,
    pub beta: f64,
    pub c: f64,
    pub n: usize,
    /// Iteration depth of the subordinator; plain process when absent.
    pub depth: Option<u32>,
    pub seed: u64,
    pub n_samples: usize,
    pub times: Vec<f64>,
    pub quantity: Quantity,
    pub output: Output,
    /// Frequencies for characteristic-function tables.
    pub xi: Vec<f64>,
    /// Radii for densities in `n >= 2` and for `limit`.
    pub radii: Vec<f64>,
    /// One-dimensional densities are written for `|x| <= x_max`.
    pub x_max: f64,
    pub fft_points: usize,
    /// First-passage refinement width relative to the level.
    pub refine_tol: f64,
    /// Laplace-inversion tolerance.
    pub tol: f64,
    /// Agreement required by closed-form checks.
    pub check_tol: f64,
    pub se_band: f64,
    pub ks_level: f64,
    pub suite: String,
    pub telegraph: TelegraphConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: None,
            spec: vec![(1.0, 0.5)],
            beta: 1.0,
            c: 1.0,
            n: 1,
            depth: None,
            seed: 0,
            n_samples: 10_000,
            times: vec![1.0],
            quantity: Quantity::L,
            output: Output::Density,
            xi: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            radii: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            x_max: 10.0,
            fft_points: 1 << 16,
            refine_tol: fracstable::subordinator::DEFAULT_REFINE_TOL,
            tol: 1e-8,
            check_tol: 1e-5,
            se_band: fracstable::verify::SE_BAND,
            ks_level: fracstable::verify::KS_LEVEL,
            suite: "telegraph".into(),
            telegraph: TelegraphConfig::default(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

/// Set `key` (dotted for nested tables) to `raw`, read as JSON when it
/// parses and as a string otherwise.
fn apply_override(doc: &mut Value, assignment: &str) -> Result<(), Failure> {
    let (key, raw) = assignment.split_once('=').ok_or_else(|| invalid(format!("override '{assignment}' is not key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_owned()));
    let mut node = doc;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(invalid(format!("bad override key '{key}'")));
        }
        let map = node.as_object_mut().ok_or_else(|| invalid(format!("'{key}' does not name a table entry")))?;
        if i + 1 == parts.len() {
            map.insert(part.to_string(), value);
            return Ok(());
        }
        node = map.entry(part.to_string()).or_insert_with(|| Value::Object(Default::default()));
    }
    Ok(())
}

impl RunConfig {
    /// Defaults, then the file, then each override in order.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self, Failure> {
        let mut doc = serde_json::to_value(RunConfig::default()).expect("defaults serialise");
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
            let file: Value = serde_json::from_str(&text).map_err(|e| invalid(format!("config is not valid JSON: {e}")))?;
            let Value::Object(entries) = file else {
                return Err(invalid("config must be a JSON object"));
            };
            for (k, v) in entries {
                if let (Some(Value::Object(base)), Value::Object(nested)) = (doc.get_mut(&k), &v) {
                    base.extend(nested.clone());
                } else {
                    doc[k.as_str()] = v;
                }
            }
        }
        for o in overrides {
            apply_override(&mut doc, o)?;
        }
        serde_json::from_value(doc).map_err(|e| invalid(format!("config: {e}")))
    }

    /// Checks shared by every command; the library validates the rest.
    pub fn validate(&self) -> Result<(), Failure> {
        if self.spec.is_empty() {
            return Err(invalid("spec needs at least one [lambda, nu] term"));
        }
        if self.spec.iter().any(|(l, _)| !(*l > 0.0)) {
            return Err(invalid("lambda must be positive"));
        }
        for (name, v) in [("refine_tol", self.refine_tol), ("tol", self.tol), ("check_tol", self.check_tol), ("se_band", self.se_band)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(format!("{name} must be positive")));
            }
        }
        if !(self.ks_level > 0.0 && self.ks_level < 1.0) {
            return Err(invalid("ks_level must lie in (0, 1)"));
        }
        if self.times.is_empty() || self.times.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(invalid("times must be a nonempty list of positive numbers"));
        }
        if self.n_samples == 0 {
            return Err(invalid("n_samples must be at least 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_reach_nested_fields() {
        let c = RunConfig::load(None, &["telegraph.lambda=2.5".into(), "spec=[[1,0.3],[2,0.9]]".into(), "suite=limit".into()]).unwrap();
        assert_eq!(c.telegraph.lambda, 2.5);
        assert_eq!(c.telegraph.k, 2);
        assert_eq!(c.spec, vec![(1.0, 0.3), (2.0, 0.9)]);
        assert_eq!(c.suite, "limit");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(RunConfig::load(None, &["sped=1".into()]), Err(Failure::Validation(_))));
        assert!(matches!(RunConfig::load(None, &["noequals".into()]), Err(Failure::Validation(_))));
    }

    #[test]
    fn negative_lambda_is_a_validation_error() {
        let c = RunConfig::load(None, &["spec=[[-1,0.5]]".into()]).unwrap();
        match c.validate() {
            Err(Failure::Validation(m)) => assert_eq!(m, "lambda must be positive"),
            other => panic!("{other:?}"),
        }
    }
}
