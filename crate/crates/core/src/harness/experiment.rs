//! Experiment driver: sweeps evaluation points over a scene, verifies
//! the jump identities, and assembles persistable reports.

use crate::error::{Error, Result};
use crate::harness::report::{
    DiagnosticRow, DiagnosticTable, JumpReport, PointRow, RunConfig,
};
use crate::harness::scene::{default_evaluation_points, SceneSpec, ShapeSpec};
use crate::kernel::{sphere_volume, Kernel};
use crate::measure::RadonMeasure;
use crate::operators::{
    self, assemble_record, cone_samples, double_layer_transform, jump_constant,
    jump_residuals_at_param, run_ladder, truncated_transform, ExtrapolationConfig, JumpRecord,
    Side,
};
use crate::vec3::Vec3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelChoice {
    Riesz { n: u32 },
    CauchyPower { j: u32 },
    /// The Riesz kernel paired with the surface normal; scalar jump ½f.
    DoubleLayer,
}

impl KernelChoice {
    pub fn label(&self) -> String {
        match self {
            KernelChoice::Riesz { n } => format!("riesz(n={n})"),
            KernelChoice::CauchyPower { j } => format!("cauchy-power(j={j})"),
            KernelChoice::DoubleLayer => "double-layer".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum PointSpec {
    Count(usize),
    List(Vec<(usize, [f64; 2])>),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub scene: SceneSpec,
    pub kernel: KernelChoice,
    pub points: PointSpec,
    pub a: f64,
    pub b: f64,
    /// Defaults to `ExtrapolationConfig::for_diameter(scene diameter)`.
    pub extrapolation: Option<ExtrapolationConfig>,
    /// Residual threshold feeding the exit-code contract.
    pub residual_tol: f64,
    pub out_json: Option<PathBuf>,
    pub out_csv: Option<PathBuf>,
    pub out_plot: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(scene: SceneSpec, kernel: KernelChoice, points: usize) -> ExperimentConfig {
        ExperimentConfig {
            scene,
            kernel,
            points: PointSpec::Count(points),
            a: 0.5,
            b: 0.25,
            extrapolation: None,
            residual_tol: 1e-3,
            out_json: None,
            out_csv: None,
            out_plot: None,
        }
    }
}

/// Thread pool honoring the JUMPLAB_THREADS cap. Results do not depend
/// on the pool size: each point is evaluated serially and collected by
/// index.
fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("JUMPLAB_THREADS") {
        if let Ok(k) = value.parse::<usize>() {
            if k >= 1 {
                builder = builder.num_threads(k);
            }
        }
    }
    builder.build().expect("rayon pool")
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

struct Prepared {
    measure: RadonMeasure,
    points: Vec<(usize, [f64; 2])>,
    extrapolation: ExtrapolationConfig,
}

fn prepare(config: &ExperimentConfig) -> Result<Prepared> {
    operators::check_apertures(config.a, config.b)?;
    let measure = config.scene.build()?;
    let points = match &config.points {
        PointSpec::Count(k) => {
            if *k == 0 {
                return Err(Error::InvalidConfig("need at least one point".into()));
            }
            default_evaluation_points(measure.carrier(), *k)
        }
        PointSpec::List(list) => list.clone(),
    };
    // Atoms must stay clear of the evaluation points.
    for (patch, t) in &points {
        if *patch >= measure.carrier().patches().len() {
            return Err(Error::InvalidConfig(format!("no patch {patch}")));
        }
        let x = measure.carrier().patches()[*patch].position(t);
        for atom in measure.atoms() {
            if atom.position().dist(&x) < 1e-12 * measure.scene_diameter() {
                return Err(Error::InvalidConfig(
                    "an atom coincides with an evaluation point".into(),
                ));
            }
        }
    }
    let extrapolation = config
        .extrapolation
        .unwrap_or_else(|| ExtrapolationConfig::for_diameter(measure.scene_diameter()));
    extrapolation.validate()?;
    Ok(Prepared {
        measure,
        points,
        extrapolation,
    })
}

fn assemble_report(
    config: &ExperimentConfig,
    prepared: &Prepared,
    kernel_label: String,
    records: Vec<JumpRecord>,
    value_dim: usize,
) -> JumpReport {
    let ambient = prepared.measure.carrier().ambient_dim();
    let rows: Vec<PointRow> = records
        .iter()
        .enumerate()
        .map(|(i, r)| PointRow::from_record(i, r, ambient, value_dim))
        .collect();
    let summary = JumpReport::summarize(&rows, config.residual_tol);
    JumpReport {
        version: 1,
        generated_at: now_unix(),
        scene: serde_json::to_value(&config.scene).expect("scene serializes"),
        kernel: kernel_label,
        config: RunConfig {
            a: config.a,
            b: config.b,
            extrapolation: prepared.extrapolation,
            residual_tol: config.residual_tol,
            ambient_dim: ambient,
            value_dim,
        },
        points: rows,
        summary,
    }
}

fn persist(config: &ExperimentConfig, report: &JumpReport) -> Result<()> {
    if let Some(path) = &config.out_json {
        std::fs::write(path, report.to_json())?;
    }
    if let Some(path) = &config.out_csv {
        std::fs::write(path, report.to_csv())?;
    }
    if let Some(path) = &config.out_plot {
        let series = crate::harness::plot::series_from_report(report);
        let svg = crate::harness::plot::render_loglog(
            "ladder distance to final value",
            "scale",
            "|T - T_final|",
            &series,
        )?;
        std::fs::write(path, svg)?;
    }
    Ok(())
}

/// Verifies the two jump identities at every evaluation point and
/// persists the report per the configured output paths.
pub fn run_experiment(config: &ExperimentConfig) -> Result<JumpReport> {
    if config.kernel == KernelChoice::DoubleLayer {
        return run_double_layer(config);
    }
    let prepared = prepare(config)?;
    let kernel = match config.kernel {
        KernelChoice::Riesz { n } => Kernel::riesz(n)?,
        KernelChoice::CauchyPower { j } => Kernel::cauchy_power(j)?,
        KernelChoice::DoubleLayer => unreachable!(),
    };
    if kernel.ambient_dim() != prepared.measure.carrier().ambient_dim() {
        return Err(Error::InvalidConfig(format!(
            "kernel lives in R^{}, scene in R^{}",
            kernel.ambient_dim(),
            prepared.measure.carrier().ambient_dim()
        )));
    }
    let pool = thread_pool();
    let records: Result<Vec<JumpRecord>> = pool.install(|| {
        prepared
            .points
            .par_iter()
            .map(|(patch, t)| {
                jump_residuals_at_param(
                    &kernel,
                    &prepared.measure,
                    *patch,
                    *t,
                    config.a,
                    config.b,
                    &prepared.extrapolation,
                )
            })
            .collect()
    });
    let report = assemble_report(
        config,
        &prepared,
        kernel.name(),
        records?,
        kernel.value_dim(),
    );
    persist(config, &report)?;
    Ok(report)
}

/// Double layer specialization: verifies ½(R⁺f − R⁻f) = ½ f(x) and
/// ½(R⁺f + R⁻f) = pv Rf(x) on a closed scene; report rows are scalar.
pub fn run_double_layer(config: &ExperimentConfig) -> Result<JumpReport> {
    match config.scene.shape {
        ShapeSpec::Circle { .. } | ShapeSpec::Sphere { .. } => {}
        _ => {
            return Err(Error::InvalidConfig(
                "the double layer runs on closed oriented scenes (circle or sphere)".into(),
            ))
        }
    }
    let prepared = prepare(config)?;
    if !prepared.measure.atoms().is_empty() {
        return Err(Error::InvalidConfig(
            "the double layer acts on densities; drop the atoms".into(),
        ));
    }
    let pool = thread_pool();
    let records: Result<Vec<JumpRecord>> = pool.install(|| {
        prepared
            .points
            .par_iter()
            .map(|(patch, t)| double_layer_record(&prepared, *patch, *t, config.b))
            .collect()
    });
    let report = assemble_report(config, &prepared, "double-layer".into(), records?, 1);
    persist(config, &report)?;
    Ok(report)
}

fn double_layer_record(
    prepared: &Prepared,
    patch: usize,
    t: [f64; 2],
    b: f64,
) -> Result<JumpRecord> {
    let measure = &prepared.measure;
    let cfg = &prepared.extrapolation;
    let frame = measure.carrier().tangent_frame(patch, &t)?;
    let f = measure.density_at_param(t[0]);
    let quad = cfg.quad();
    let pv = run_ladder(cfg, |eps| {
        let r = double_layer_transform(measure, frame.point, eps, &quad);
        (r.value, r.converged)
    });
    let one_sided = |sign: f64| {
        run_ladder(cfg, |step| {
            let y = frame.point + frame.normal.scale(sign * step);
            let r = double_layer_transform(measure, y, b * step, &quad);
            (r.value, r.converged)
        })
    };
    let r_plus = one_sided(1.0);
    let r_minus = one_sided(-1.0);
    // ½(R⁺ − R⁻) = (1/ω_n)⟨C_K(N), N⟩ f = ½ f.
    Ok(assemble_record(
        &frame,
        f,
        pv,
        r_plus,
        r_minus,
        Vec3::new(0.5, 0.0, 0.0),
    ))
}

/// Sampled S_δ / S̃_δ sweep over a δ-ladder; the cone samples of the
/// smaller deltas are subsets of the largest one, so each T-evaluation
/// happens once.
pub fn diagnostic_sweep(
    config: &ExperimentConfig,
    deltas: &[f64],
    sample_count: usize,
) -> Result<DiagnosticTable> {
    if deltas.is_empty() {
        return Err(Error::InvalidConfig("delta ladder must be nonempty".into()));
    }
    let prepared = prepare(config)?;
    let kernel = match config.kernel {
        KernelChoice::Riesz { n } => Kernel::riesz(n)?,
        KernelChoice::CauchyPower { j } => Kernel::cauchy_power(j)?,
        KernelChoice::DoubleLayer => {
            return Err(Error::InvalidConfig(
                "diagnostics run on plain kernels, not the double layer".into(),
            ))
        }
    };
    let delta_max = deltas.iter().cloned().fold(0.0f64, f64::max);
    let pool = thread_pool();
    let per_point: Result<Vec<Vec<DiagnosticRow>>> = pool.install(|| {
        prepared
            .points
            .par_iter()
            .enumerate()
            .map(|(id, (patch, t))| {
                let measure = &prepared.measure;
                let cfg = &prepared.extrapolation;
                let frame = measure.carrier().tangent_frame(*patch, &t.to_owned())?;
                let f = measure.density_at_param(t[0]);
                let pv = operators::principal_value_unchecked(&kernel, measure, frame.point, cfg);
                let ck = jump_constant(&kernel, frame.normal)?;
                let quad = cfg.quad();
                let samples = cone_samples(
                    &frame,
                    config.a,
                    delta_max,
                    sample_count,
                    measure.scene_diameter(),
                );
                // Evaluate both symmetric transforms once per sample.
                let evaluated: Vec<(f64, Vec3, Vec3)> = samples
                    .iter()
                    .map(|(r, dir)| {
                        let y = frame.point + dir.scale(*r);
                        let y_star = frame.point.scale(2.0) - y;
                        let tv = truncated_transform(&kernel, measure, y, config.b * r, &quad);
                        let tv_star =
                            truncated_transform(&kernel, measure, y_star, config.b * r, &quad);
                        (*r, tv.value, tv_star.value)
                    })
                    .collect();
                let mut rows = Vec::new();
                for &delta in deltas {
                    let mut s_sum = 0.0f64;
                    let mut s_diff = 0.0f64;
                    for (r, tv, tv_star) in &evaluated {
                        if *r > delta {
                            continue;
                        }
                        s_sum = s_sum.max((pv.value() - (*tv + *tv_star).scale(0.5)).norm());
                        s_diff = s_diff.max((ck.scale(f) - (*tv - *tv_star).scale(0.5)).norm());
                    }
                    rows.push(DiagnosticRow {
                        point_id: id,
                        delta,
                        s_sum,
                        s_diff,
                    });
                }
                Ok(rows)
            })
            .collect()
    });
    Ok(DiagnosticTable {
        rows: per_point?.into_iter().flatten().collect(),
    })
}

/// One-sided non-tangential limits via the public point-based API;
/// re-exported here for the bindings.
pub fn one_sided_limits(
    kernel: &Kernel,
    measure: &RadonMeasure,
    x: Vec3,
    a: f64,
    b: f64,
    cfg: &ExtrapolationConfig,
) -> Result<(operators::LimitResult, operators::LimitResult)> {
    let plus = operators::nontangential_limit(kernel, measure, x, Side::Plus, a, b, cfg)?;
    let minus = operators::nontangential_limit(kernel, measure, x, Side::Minus, a, b, cfg)?;
    Ok((plus, minus))
}

/// ω_n helper surfaced for the report consumers.
pub fn unit_sphere_volume(n: u32) -> f64 {
    sphere_volume(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_experiment_end_to_end() {
        let config = ExperimentConfig::new(
            SceneSpec::builtin("circle").unwrap(),
            KernelChoice::Riesz { n: 1 },
            4,
        );
        let report = run_experiment(&config).unwrap();
        assert_eq!(report.points.len(), 4);
        assert!(report.summary.all_converged);
        assert!(report.summary.max_residual_avg < 1e-3);
        assert!(report.summary.max_residual_jump < 1e-3);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn double_layer_on_circle_jumps_by_half() {
        let config = ExperimentConfig::new(
            SceneSpec::builtin("circle").unwrap(),
            KernelChoice::DoubleLayer,
            4,
        );
        let report = run_experiment(&config).unwrap();
        for row in &report.points {
            let half_jump = 0.5 * (row.t_plus.value[0] - row.t_minus.value[0]);
            assert!((half_jump - 0.5 * row.f).abs() < 1e-3, "{half_jump}");
        }
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn double_layer_rejects_open_scenes() {
        let config = ExperimentConfig::new(
            SceneSpec::builtin("line").unwrap(),
            KernelChoice::DoubleLayer,
            2,
        );
        assert!(run_experiment(&config).is_err());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let config = ExperimentConfig::new(
            SceneSpec::builtin("sphere").unwrap(),
            KernelChoice::Riesz { n: 1 },
            2,
        );
        assert!(run_experiment(&config).is_err());
    }

    #[test]
    fn diagnostic_sweep_rows_and_decay() {
        let config = ExperimentConfig::new(
            SceneSpec::builtin("circle").unwrap(),
            KernelChoice::Riesz { n: 1 },
            1,
        );
        let deltas = [0.08, 0.04, 0.02];
        let table = diagnostic_sweep(&config, &deltas, 4).unwrap();
        assert_eq!(table.rows.len(), 3);
        // Nested samples: no increase as δ shrinks.
        assert!(table.rows[1].s_sum <= table.rows[0].s_sum + 1e-12);
        assert!(table.rows[2].s_sum <= table.rows[1].s_sum + 1e-12);
    }

    #[test]
    fn single_delta_gives_single_row_per_point() {
        let config = ExperimentConfig::new(
            SceneSpec::builtin("circle").unwrap(),
            KernelChoice::Riesz { n: 1 },
            2,
        );
        let table = diagnostic_sweep(&config, &[0.05], 3).unwrap();
        assert_eq!(table.rows.len(), 2);
    }

    #[test]
    fn atom_on_evaluation_point_is_a_setup_error() {
        let mut scene = SceneSpec::builtin("circle").unwrap();
        // Place an atom exactly on the first default evaluation point.
        let measure = scene.build().unwrap();
        let pts = default_evaluation_points(measure.carrier(), 2);
        let x = measure.carrier().patches()[pts[0].0].position(&pts[0].1);
        scene.measure.atoms.push((vec![x.x(), x.y()], 1.0));
        let config = ExperimentConfig::new(scene, KernelChoice::Riesz { n: 1 }, 2);
        assert!(run_experiment(&config).is_err());
    }
}
