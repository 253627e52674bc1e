//! Report structures persisted as JSON plus a flat CSV table.
//!
//! Reports are byte-reproducible for a fixed configuration; the only
//! run-dependent field is `generated_at`, which comparisons exclude.

use crate::operators::{ExtrapolationConfig, JumpRecord, LimitResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JumpReport {
    pub version: u32,
    /// Unix seconds at generation time; excluded from byte comparisons.
    pub generated_at: u64,
    pub scene: serde_json::Value,
    pub kernel: String,
    pub config: RunConfig,
    pub points: Vec<PointRow>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub a: f64,
    pub b: f64,
    pub extrapolation: ExtrapolationConfig,
    pub residual_tol: f64,
    pub ambient_dim: usize,
    pub value_dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointRow {
    pub point_id: usize,
    pub x: Vec<f64>,
    pub normal: Vec<f64>,
    pub f: f64,
    pub pv: Trace,
    pub t_plus: Trace,
    pub t_minus: Trace,
    pub jump_constant: Vec<f64>,
    pub residual_avg: f64,
    pub residual_jump: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trace {
    pub value: Vec<f64>,
    pub converged: bool,
    pub last_delta: f64,
    pub trace: Vec<(f64, Vec<f64>)>,
}

impl Trace {
    fn from_limit(limit: &LimitResult, dim: usize) -> Trace {
        Trace {
            value: limit.value[..dim].to_vec(),
            converged: limit.converged,
            last_delta: limit.last_delta,
            trace: limit
                .samples
                .iter()
                .map(|(s, v)| (*s, v[..dim].to_vec()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub points: usize,
    pub all_converged: bool,
    pub max_residual_avg: f64,
    pub max_residual_jump: f64,
    pub residuals_within_tol: bool,
}

impl PointRow {
    pub fn from_record(
        point_id: usize,
        rec: &JumpRecord,
        ambient_dim: usize,
        value_dim: usize,
    ) -> PointRow {
        PointRow {
            point_id,
            x: rec.point[..ambient_dim].to_vec(),
            normal: rec.normal[..ambient_dim].to_vec(),
            f: rec.f,
            pv: Trace::from_limit(&rec.pv, value_dim),
            t_plus: Trace::from_limit(&rec.t_plus, value_dim),
            t_minus: Trace::from_limit(&rec.t_minus, value_dim),
            jump_constant: rec.jump_constant[..value_dim].to_vec(),
            residual_avg: rec.residual_avg,
            residual_jump: rec.residual_jump,
            converged: rec.converged,
        }
    }
}

impl JumpReport {
    pub fn summarize(points: &[PointRow], residual_tol: f64) -> Summary {
        let max_avg = points
            .iter()
            .map(|p| p.residual_avg)
            .fold(0.0f64, f64::max);
        let max_jump = points
            .iter()
            .map(|p| p.residual_jump)
            .fold(0.0f64, f64::max);
        Summary {
            points: points.len(),
            all_converged: points.iter().all(|p| p.converged),
            max_residual_avg: max_avg,
            max_residual_jump: max_jump,
            residuals_within_tol: max_avg < residual_tol && max_jump < residual_tol,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// JSON with the timestamp removed, for reproducibility checks.
    pub fn to_json_without_timestamp(&self) -> String {
        let mut clone = self.clone();
        clone.generated_at = 0;
        clone.to_json()
    }

    /// Flat table: one row per evaluation point.
    pub fn to_csv(&self) -> String {
        let d = self.config.ambient_dim;
        let v = self.config.value_dim;
        let mut header = vec!["point_id".to_string()];
        let block = |name: &str, len: usize| -> Vec<String> {
            (0..len).map(|i| format!("{name}{i}")).collect()
        };
        header.extend(block("x", d));
        header.extend(block("n", d));
        header.push("f".into());
        header.extend(block("pv", v));
        header.extend(block("tplus", v));
        header.extend(block("tminus", v));
        header.extend(block("ck", v));
        header.push("res_avg".into());
        header.push("res_jump".into());
        header.push("converged".into());

        let mut out = header.join(",");
        out.push('\n');
        for p in &self.points {
            let mut cells: Vec<String> = vec![p.point_id.to_string()];
            let push_all = |cells: &mut Vec<String>, vals: &[f64]| {
                cells.extend(vals.iter().map(|x| x.to_string()));
            };
            push_all(&mut cells, &p.x);
            push_all(&mut cells, &p.normal);
            cells.push(p.f.to_string());
            push_all(&mut cells, &p.pv.value);
            push_all(&mut cells, &p.t_plus.value);
            push_all(&mut cells, &p.t_minus.value);
            push_all(&mut cells, &p.jump_constant);
            cells.push(p.residual_avg.to_string());
            cells.push(p.residual_jump.to_string());
            cells.push(p.converged.to_string());
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Exit-code contract: 0 when everything converged within the
    /// residual tolerance, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.all_converged && self.summary.residuals_within_tol {
            0
        } else {
            1
        }
    }
}

/// Sweep of the sampled cone diagnostics over a δ-ladder.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosticTable {
    pub rows: Vec<DiagnosticRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosticRow {
    pub point_id: usize,
    pub delta: f64,
    pub s_sum: f64,
    pub s_diff: f64,
}

impl DiagnosticTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("point_id,delta,s_sum,s_diff\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.point_id, r.delta, r.s_sum, r.s_diff
            ));
        }
        out
    }
}
