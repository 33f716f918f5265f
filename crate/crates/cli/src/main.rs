//! `slicespace`: norms, invariant suites, radial profiles and kernel grids for
//! slice regular functions given as power series.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use slicespace::kernels::{bergman_project, EmbeddingOperator};
use slicespace::quadrature::DiskRule;
use slicespace::spaces::*;
use slicespace::suites::{run_suite, SuiteOptions};
use slicespace::{Complex64, Error, Quaternion, SlicePowerSeries, SliceRegular, UnitImaginary};

#[derive(Parser)]
#[command(name = "slicespace", version, about = "Function spaces of slice regular functions on the quaternionic unit ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the norm of a series in one space.
    Norm {
        /// Series JSON: {"coeffs": [[w,x,y,z], ...]}.
        input: PathBuf,
        #[arg(long, value_enum)]
        space: Space,
        #[command(flatten)]
        params: SpaceArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded invariant suite.
    Check {
        #[arg(long, value_parser = ["bloch", "bergman", "besov", "dirichlet", "kernels", "all"])]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance of supremum-based checks.
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        /// Size of each random family.
        #[arg(long, default_value_t = 12)]
        count: usize,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radial profiles as CSV: r, (1 − r²)·max|∂f|, max circle mean of |f|ᵖ.
    Profile {
        input: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bergman projection (or, with --t, the embedding operator) of a series
    /// on a polar grid of C(e₁), as JSON.
    Grid {
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long)]
        t: Option<f64>,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Bloch,
    Hinf,
    Bergman,
    Besov,
    Dirichlet,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    p: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Besov derivative order.
    #[arg(long, default_value_t = 1)]
    n: usize,
}

#[derive(Args)]
struct QuadArgs {
    #[arg(long)]
    radial: Option<usize>,
    #[arg(long)]
    angular: Option<usize>,
    #[arg(long)]
    clip: Option<f64>,
    #[arg(long)]
    sphere_samples: Option<usize>,
}

impl QuadArgs {
    fn apply(&self, mut c: Config) -> Result<Config, Error> {
        c.radial = self.radial.unwrap_or(c.radial);
        c.angular = self.angular.unwrap_or(c.angular);
        c.clip = self.clip.unwrap_or(c.clip);
        c.sphere_samples = self.sphere_samples.unwrap_or(c.sphere_samples);
        c.validate()?;
        Ok(c)
    }
}

enum Failure {
    Check,
    Input(String),
    Param(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::MissingAxis | Error::AxisMismatch | Error::OutsideBall(_) => {
                Failure::Param(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("SLICESPACE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // the pool can only be configured once; a failure leaves the default
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Param(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Norm { input, space, params, quad, out } => {
            let config = quad.apply(Config::default())?;
            validate_space(space, &params)?;
            let f = read_series(&input)?;
            let report = norm(&f, space, &params, &config)?;
            emit(out.as_deref(), &to_json(&report))
        }
        Command::Check { suite, seed, tol, count, quad, out } => {
            if !(tol > 0.0) {
                return Err(Failure::Param("--tol must be positive".into()));
            }
            let config = quad.apply(Config::suite())?;
            let opts = SuiteOptions { seed, sup_tol: tol, config, count };
            let report = run_suite(&suite, &opts)?;
            emit(out.as_deref(), &to_json(&report))?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Profile { input, p, quad, out } => {
            if !(p > 0.0) {
                return Err(Failure::Param("p must be positive".into()));
            }
            let config = quad.apply(Config::default())?;
            let f = read_series(&input)?;
            emit(out.as_deref(), &profile_csv(&f, p, &config))
        }
        Command::Grid { input, alpha, t, quad, out } => {
            if !(alpha > -1.0) {
                return Err(Failure::Param("alpha must exceed -1".into()));
            }
            let config = quad.apply(Config::default())?;
            let f = read_series(&input)?;
            emit(out.as_deref(), &to_json(&kernel_grid(&f, alpha, t, &config)?))
        }
    }
}

fn validate_space(space: Space, a: &SpaceArgs) -> Result<(), Error> {
    match space {
        Space::Bergman => BergmanParams::new(a.p, a.alpha).map(drop),
        Space::Besov => BesovParams::new(a.p, a.n).map(drop),
        _ => Ok(()),
    }
}

fn read_series(path: &Path) -> Result<SlicePowerSeries, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn norm(f: &SlicePowerSeries, space: Space, a: &SpaceArgs, config: &Config) -> Result<NormReport, Error> {
    Ok(match space {
        Space::Bloch => bloch_norm(f, config),
        Space::Hinf => hinf_norm(f, config),
        Space::Dirichlet => dirichlet_norm(f, config)?,
        Space::Bergman => bergman_norm_sup(f, BergmanParams::new(a.p, a.alpha)?, config)?,
        Space::Besov if a.n == 1 && a.p > 1.0 => besov_norm(f, a.p, config)?,
        Space::Besov => besov_norm_small_p(f, BesovParams::new(a.p, a.n)?, config)?,
    })
}

/// `sup_i ρ_{p,n,i}` with the Möbius supremum over a fixed parameter grid.
fn besov_norm_small_p(f: &SlicePowerSeries, params: BesovParams, config: &Config) -> Result<NormReport, Error> {
    let grid = a_grid(32, 0.75);
    let f: Arc<dyn SliceRegular> = Arc::new(f.clone());
    let per_axis: Vec<AxisValue> = config
        .axes()
        .into_iter()
        .map(|i| Ok(AxisValue { axis: i, value: besov_seminorm_small_p(f.clone(), params, i, &grid, config)? }))
        .collect::<Result<_, Error>>()?;
    let value = per_axis.iter().map(|v| v.value).fold(0.0, f64::max);
    let mut params_map = std::collections::BTreeMap::new();
    params_map.insert("p".to_owned(), params.p);
    params_map.insert("n".to_owned(), params.n as f64);
    Ok(NormReport { space: "besov".into(), value, per_axis, params: params_map, config: *config })
}

fn profile_csv(f: &SlicePowerSeries, p: f64, config: &Config) -> String {
    let axes = config.axes();
    let mut radii: Vec<f64> = (1..=config.radial).map(|k| config.clip * k as f64 / config.radial as f64).collect();
    // resolve the boundary layer below the clip radius
    radii.extend((2..=6).map(|k| 1.0 - 10f64.powi(-k)).filter(|&r| r < config.clip));
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let mut out = String::from("r,derivative_profile,circle_mean\n");
    let dt = std::f64::consts::TAU / config.angular as f64;
    for r in radii {
        let mut deriv = 0.0f64;
        let mut mean = 0.0f64;
        for &i in &axes {
            deriv = deriv.max(bloch_profile(f, i, r, config.angular));
            let g = f.restrict(i);
            let m = (0..config.angular)
                .map(|t| g(Complex64::from_polar(r, dt * t as f64), 0)[0].norm().powf(p))
                .sum::<f64>()
                / config.angular as f64;
            mean = mean.max(m);
        }
        let _ = writeln!(out, "{r},{deriv},{mean}");
    }
    out
}

#[derive(Serialize)]
struct KernelGrid {
    axis: UnitImaginary,
    alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    z: Vec<[f64; 2]>,
    value: Vec<Quaternion>,
}

fn kernel_grid(f: &SlicePowerSeries, alpha: f64, t: Option<f64>, config: &Config) -> Result<KernelGrid, Error> {
    let i = UnitImaginary::E1;
    let rule = DiskRule::new(config.radial, config.angular);
    let (nr, nt) = (8, 16);
    let z: Vec<Complex64> = (1..=nr)
        .flat_map(|a| {
            (0..nt).map(move |b| Complex64::from_polar(0.9 * a as f64 / nr as f64, std::f64::consts::TAU * b as f64 / nt as f64))
        })
        .collect();
    let value = match t {
        Some(t) => {
            let op = EmbeddingOperator::new(f, alpha, t, i, &rule)?;
            z.iter().map(|&w| op.apply(w, i)).collect()
        }
        None => {
            let g = f.restrict(i);
            let proj = bergman_project(|w| g(w, 0)[0], alpha, i, &rule)?;
            z.iter().map(|&w| proj.on_slice(w, 0)[0]).collect()
        }
    };
    Ok(KernelGrid { axis: i, alpha, t, z: z.iter().map(|w| [w.re, w.im]).collect(), value })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
