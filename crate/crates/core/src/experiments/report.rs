use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

/// Outcome of one acceptance threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    /// Keys of `parameters` holding the thresholds this verdict applies.
    pub thresholds: Vec<String>,
    pub passed: bool,
    pub observed: Value,
}

/// An x/y series for external plotting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSeries {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl PlotSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for (x, y) in self.x.iter().zip(&self.y) {
            out.push_str(&format!("{x},{y}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: u64,
    pub trial_seeds: Vec<u64>,
    pub trials: Vec<Value>,
    pub summary: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    /// Excluded from JSON so reruns stay byte-identical.
    #[serde(skip)]
    pub wall_clock: Duration,
    #[serde(skip)]
    pub plots: Vec<PlotSeries>,
    #[serde(skip)]
    started: Instant,
}

impl ExperimentReport {
    pub(crate) fn new(experiment: &str, seed: u64) -> Self {
        ExperimentReport {
            experiment: experiment.to_string(),
            parameters: BTreeMap::new(),
            seed,
            trial_seeds: Vec::new(),
            trials: Vec::new(),
            summary: BTreeMap::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            wall_clock: Duration::ZERO,
            plots: Vec::new(),
            started: Instant::now(),
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.wall_clock = self.started.elapsed();
        self
    }

    pub(crate) fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("parameter serializes"));
    }

    pub(crate) fn stat(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_string(), serde_json::to_value(value).expect("summary serializes"));
    }

    pub(crate) fn trial(&mut self, seed: u64, record: impl Serialize) {
        self.trial_seeds.push(seed);
        self.trials.push(serde_json::to_value(record).expect("trial record serializes"));
    }

    pub(crate) fn verdict(&mut self, name: &str, thresholds: &[&str], passed: bool, observed: impl Serialize) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            thresholds: thresholds.iter().map(|s| s.to_string()).collect(),
            passed,
            observed: serde_json::to_value(observed).expect("observation serializes"),
        });
    }

    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub(crate) fn plot(&mut self, name: impl Into<String>, x: Vec<f64>, y: Vec<f64>) {
        self.plots.push(PlotSeries { name: name.into(), x, y });
    }

    /// True when there is at least one verdict and all passed.
    pub fn passed(&self) -> bool {
        !self.verdicts.is_empty() && self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict_named(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    /// Every threshold a verdict cites is a parameter of the report.
    pub fn thresholds_present(&self) -> bool {
        self.verdicts.iter().all(|v| v.thresholds.iter().all(|t| self.parameters.contains_key(t)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report JSON serialization")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report JSON serialization")
    }

    /// Per-trial table: one row per trial, one column per scalar field.
    pub fn to_csv(&self) -> String {
        let mut columns = BTreeSet::new();
        for t in &self.trials {
            if let Value::Object(map) = t {
                columns.extend(map.iter().filter(|(_, v)| is_scalar(v)).map(|(k, _)| k.clone()));
            }
        }
        let columns: Vec<String> = columns.into_iter().collect();
        let mut out = String::from("trial_seed");
        for c in &columns {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (seed, t) in self.trial_seeds.iter().zip(&self.trials) {
            out.push_str(&seed.to_string());
            for c in &columns {
                out.push(',');
                match t.get(c) {
                    Some(Value::String(s)) => out.push_str(&csv_field(s)),
                    Some(Value::Null) | None => {}
                    Some(v) => out.push_str(&v.to_string()),
                }
            }
            out.push('\n');
        }
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Seed of trial `index`.
pub(crate) fn trial_seed(seed: u64, index: usize) -> u64 {
    seed ^ index as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_flattens_scalars() {
        let mut r = ExperimentReport::new("t", 1);
        r.param("limit", 0.5);
        r.trial(1, serde_json::json!({"rho": 0.25, "ok": true, "list": [1, 2], "msg": "a,b"}));
        r.trial(0, serde_json::json!({"rho": null, "ok": false}));
        r.verdict("v", &["limit"], true, 0.25);
        assert_eq!(r.to_csv(), "trial_seed,msg,ok,rho\n1,\"a,b\",true,0.25\n0,,false,\n");
        assert!(r.thresholds_present() && r.passed());
        r.verdict("w", &["missing"], true, 0.0);
        assert!(!r.thresholds_present());
    }
}
