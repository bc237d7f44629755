//! Sweep runner: generate each instance, decompose, audit every structural
//! invariant, and measure the bound ratios.

use std::fs;
use std::path::Path;

use quadrics_core::bounds::BoundEvaluator;
use quadrics_core::decompose::{audit, decompose};
use quadrics_core::incidence::incidence_graph;

use crate::formats::{BoundReport, InstanceJson};
use crate::gen::{gen_instance, InstanceSpec};
use crate::{Result, ToolError};

pub struct ExperimentRow {
    pub spec: InstanceSpec,
    /// Absent when generation or decomposition failed for this row.
    pub report: Option<BoundReport>,
    pub audit_ok: bool,
    pub audit_messages: Vec<String>,
}

pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
    pub any_failure: bool,
}

impl ExperimentReport {
    pub fn csv(&self) -> String {
        let mut out = String::from(BoundReport::CSV_HEADER);
        out.push_str(",audit_ok\n");
        for row in &self.rows {
            match &row.report {
                Some(r) => {
                    out.push_str(&r.csv_row());
                    out.push_str(if row.audit_ok { ",1\n" } else { ",0\n" });
                }
                None => {
                    out.push_str(&format!(
                        "{},{},,,,,,,0\n",
                        row.spec.m, row.spec.n
                    ));
                }
            }
        }
        out
    }

    pub fn max_ratio(&self) -> f64 {
        self.rows
            .iter()
            .filter_map(|r| r.report.as_ref())
            .map(|r| r.ratio)
            .fold(0.0, f64::max)
    }
}

/// Runs every spec in order. A failing row never aborts the sweep; its
/// messages are kept and, when `fail_dir` is given, the offending instance
/// is preserved there as JSON for replay.
pub fn run_experiment(
    specs: &[InstanceSpec],
    fail_dir: Option<&Path>,
    beta: (i64, u64),
    kappa: f64,
) -> Result<ExperimentReport> {
    let mut ev = BoundEvaluator::new();
    let mut rows = Vec::with_capacity(specs.len());
    let mut any_failure = false;
    for (idx, spec) in specs.iter().enumerate() {
        let row = run_one(spec, &mut ev, beta, kappa);
        if !row.audit_ok {
            any_failure = true;
            if let Some(dir) = fail_dir {
                preserve_failure(dir, idx, spec)?;
            }
        }
        rows.push(row);
    }
    Ok(ExperimentReport { rows, any_failure })
}

fn run_one(
    spec: &InstanceSpec,
    ev: &mut BoundEvaluator,
    beta: (i64, u64),
    kappa: f64,
) -> ExperimentRow {
    let (points, planes) = match gen_instance(spec) {
        Ok(x) => x,
        Err(e) => {
            return ExperimentRow {
                spec: spec.clone(),
                report: None,
                audit_ok: false,
                audit_messages: vec![e.to_string()],
            }
        }
    };
    let v = spec.kind.quadric();
    let graph = match incidence_graph(&points, &planes) {
        Ok(g) => g,
        Err(e) => {
            return ExperimentRow {
                spec: spec.clone(),
                report: None,
                audit_ok: false,
                audit_messages: vec![e.to_string()],
            }
        }
    };
    let d = match decompose(&points, &planes, &v) {
        Ok(d) => d,
        Err(e) => {
            return ExperimentRow {
                spec: spec.clone(),
                report: None,
                audit_ok: false,
                audit_messages: vec![e.to_string()],
            }
        }
    };
    let messages = audit(&d, &points, &planes, &v, &graph);
    let report = BoundReport::measure(&d, points.len(), planes.len(), ev, beta, kappa);
    ExperimentRow {
        spec: spec.clone(),
        report: Some(report),
        audit_ok: messages.is_empty(),
        audit_messages: messages,
    }
}

fn preserve_failure(dir: &Path, idx: usize, spec: &InstanceSpec) -> Result<()> {
    fs::create_dir_all(dir)?;
    // Re-generate so the file matches what the row saw; generation is
    // deterministic in the spec.
    let path = dir.join(format!("failed-{idx:04}.json"));
    match gen_instance(spec) {
        Ok((points, planes)) => {
            let json = serde_json::to_string_pretty(&InstanceJson::from_instance(&points, &planes))?;
            fs::write(&path, json)?;
        }
        Err(e) => {
            fs::write(&path, format!("{{\"generator_error\": \"{e}\"}}"))?;
        }
    }
    let spec_path = dir.join(format!("failed-{idx:04}.spec.json"));
    fs::write(&spec_path, serde_json::to_string_pretty(spec)?)?;
    Ok(())
}

/// Parses an experiment config: a JSON list of specs.
pub fn parse_config(json: &str) -> Result<Vec<InstanceSpec>> {
    serde_json::from_str(json).map_err(|e| ToolError::Input(format!("bad config: {e}")))
}
