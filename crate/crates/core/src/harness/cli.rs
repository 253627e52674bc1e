//! `jumplab` command line: verify, constants, diagnose.

use crate::error::{Error, Result};
use crate::harness::experiment::{
    diagnostic_sweep, run_experiment, ExperimentConfig, KernelChoice, PointSpec,
};
use crate::harness::plot;
use crate::harness::scene::SceneSpec;
use crate::kernel::Kernel;
use crate::operators::{jump_constant_numeric, ExtrapolationConfig};
use crate::vec3::Vec3;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "jumplab",
    about = "Truncated singular integrals, principal values and jump formulas on rectifiable sets",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the jump-identity verification over a scene.
    Verify(VerifyArgs),
    /// Print jump constants C_K(N) for a kernel and direction.
    Constants(ConstantsArgs),
    /// Sweep the sampled cone diagnostics over a delta ladder.
    Diagnose(DiagnoseArgs),
}

#[derive(Args)]
struct KernelArgs {
    /// Kernel name: riesz, cauchy-power, or double-layer.
    #[arg(long)]
    kernel: String,
    /// Riesz homogeneity dimension.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Odd power for the cauchy-power kernel.
    #[arg(long, default_value_t = 1)]
    j: u32,
}

impl KernelArgs {
    fn choice(&self) -> Result<KernelChoice> {
        match self.kernel.as_str() {
            "riesz" => Ok(KernelChoice::Riesz { n: self.n }),
            "cauchy-power" => Ok(KernelChoice::CauchyPower { j: self.j }),
            "double-layer" => Ok(KernelChoice::DoubleLayer),
            other => Err(Error::InvalidConfig(format!(
                "unknown kernel '{other}' (known: riesz, cauchy-power, double-layer)"
            ))),
        }
    }

    fn plain_kernel(&self) -> Result<Kernel> {
        match self.choice()? {
            KernelChoice::Riesz { n } => Kernel::riesz(n),
            KernelChoice::CauchyPower { j } => Kernel::cauchy_power(j),
            KernelChoice::DoubleLayer => Err(Error::InvalidConfig(
                "constants are defined for plain kernels; use riesz or cauchy-power".into(),
            )),
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Scene file path or a builtin name (circle, line, fourier, sphere).
    #[arg(long)]
    scene: String,
    #[command(flatten)]
    kernel: KernelArgs,
    /// Number of evaluation points.
    #[arg(long, default_value_t = 8)]
    points: usize,
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    #[arg(long, default_value_t = 0.25)]
    b: f64,
    /// Increment tolerance of the scale ladders.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Residual threshold for the exit code.
    #[arg(long, default_value_t = 1e-3)]
    residual_tol: f64,
    /// Report JSON output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat CSV table output path.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// SVG convergence plot output path.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[command(flatten)]
    kernel: KernelArgs,
    /// Unit direction, comma separated: x,y or x,y,z.
    #[arg(long)]
    direction: String,
    /// Also evaluate the hyperplane integral numerically.
    #[arg(long, default_value_t = false)]
    numeric: bool,
    /// Radial cutoff for the numeric evaluation.
    #[arg(long, default_value_t = 1e4)]
    radius: f64,
}

#[derive(Args)]
struct DiagnoseArgs {
    #[arg(long)]
    scene: String,
    #[command(flatten)]
    kernel: KernelArgs,
    #[arg(long, default_value_t = 2)]
    points: usize,
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    #[arg(long, default_value_t = 0.25)]
    b: f64,
    /// Comma separated deltas, e.g. 0.1,0.05,0.025.
    #[arg(long)]
    delta_ladder: String,
    /// Cone directions sampled per radius.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot of the sweep.
    #[arg(long)]
    plot: Option<PathBuf>,
}

fn load_scene(name: &str) -> Result<SceneSpec> {
    if std::path::Path::new(name).exists() {
        SceneSpec::from_json(&std::fs::read_to_string(name)?)
    } else {
        SceneSpec::builtin(name)
    }
}

fn parse_direction(text: &str) -> Result<Vec3> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidConfig(format!("direction parse: {e}")))?;
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Error::InvalidConfig(
            "direction needs two or three components".into(),
        ));
    }
    let v = Vec3::from_slice(&parts);
    if v.norm() == 0.0 {
        return Err(Error::InvalidConfig("direction must be nonzero".into()));
    }
    Ok(v.normalized())
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let scene = load_scene(&args.scene)?;
    let measure = scene.build()?;
    let mut extrapolation = ExtrapolationConfig::for_diameter(measure.scene_diameter());
    extrapolation.tol = args.tol;
    let config = ExperimentConfig {
        scene,
        kernel: args.kernel.choice()?,
        points: PointSpec::Count(args.points),
        a: args.a,
        b: args.b,
        extrapolation: Some(extrapolation),
        residual_tol: args.residual_tol,
        out_json: args.out.clone(),
        out_csv: args.csv.clone(),
        out_plot: args.plot.clone(),
    };
    let report = run_experiment(&config)?;
    println!(
        "{} points, all_converged={}, max residual_avg={:.3e}, max residual_jump={:.3e}",
        report.summary.points,
        report.summary.all_converged,
        report.summary.max_residual_avg,
        report.summary.max_residual_jump,
    );
    if config.out_json.is_none() {
        print!("{}", report.to_json());
    }
    Ok(report.exit_code())
}

fn cmd_constants(args: &ConstantsArgs) -> Result<i32> {
    let kernel = args.kernel.plain_kernel()?;
    let direction = parse_direction(&args.direction)?;
    let closed = kernel.closed_form_jump(direction);
    let dim = kernel.value_dim();
    let mut doc = serde_json::json!({
        "kernel": kernel.name(),
        "direction": direction.truncated(kernel.ambient_dim()),
    });
    if let Some(c) = closed {
        doc["closed_form"] = serde_json::json!(c.truncated(dim));
    }
    if args.numeric || closed.is_none() {
        let numeric = jump_constant_numeric(&kernel, direction, args.radius)?;
        doc["numeric"] = serde_json::json!(numeric.value.truncated(dim));
        doc["tail_bound"] = serde_json::json!(numeric.tail_bound);
    }
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    Ok(0)
}

fn cmd_diagnose(args: &DiagnoseArgs) -> Result<i32> {
    let deltas: Vec<f64> = args
        .delta_ladder
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidConfig(format!("delta ladder parse: {e}")))?;
    let config = ExperimentConfig {
        scene: load_scene(&args.scene)?,
        kernel: args.kernel.choice()?,
        points: PointSpec::Count(args.points),
        a: args.a,
        b: args.b,
        extrapolation: None,
        residual_tol: 1e-3,
        out_json: None,
        out_csv: None,
        out_plot: None,
    };
    let table = diagnostic_sweep(&config, &deltas, args.samples)?;
    let csv = table.to_csv();
    match &args.out {
        Some(path) => std::fs::write(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.plot {
        let series = plot::series_from_diagnostics(&table);
        let svg = plot::render_loglog("cone diagnostics", "delta", "sampled sup", &series)?;
        std::fs::write(path, svg)?;
    }
    Ok(0)
}

/// Entry point: 0 on success, 1 on residual/convergence violations,
/// 2 on setup errors.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Constants(args) => cmd_constants(args),
        Command::Diagnose(args) => cmd_diagnose(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}
