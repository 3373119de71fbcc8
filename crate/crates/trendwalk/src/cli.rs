//! Command-line surface. The `trendwalk` binary is a thin wrapper over
//! [`run`].
//!
//! Exit codes: 0 success (and significant, when a threshold is given),
//! 2 trend not significant at `--confidence`, 1 any error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ensemble::{self, Binning};
use crate::error::{Error, Result};
use crate::estimators;
use crate::report::{self, ReportMethod};
use crate::series::{SampleSeries, EQUIDISTANT_TOL};
use crate::synth::{self, GridSpec};
use crate::walk;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_SIGNIFICANT: i32 = 2;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "TRENDWALK_SEED";

/// Decorrelates Poisson grid draws from noise draws sharing a master seed.
const GRID_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Parser)]
#[command(
    name = "trendwalk",
    version,
    about = "Linear trends from the signed area of a pinned data walk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a trend and report its significance.
    Fit(FitArgs),
    /// Emit walk positions as `j,z` CSV.
    Walk(WalkArgs),
    /// Generate a synthetic `x,y` series.
    Generate(GenerateArgs),
    /// Pure-noise Monte Carlo of the area statistic.
    Ensemble(EnsembleArgs),
    /// Walk-ratio slope against least squares on irregular grids.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Dw,
    Lls,
    Both,
}

impl From<MethodArg> for ReportMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dw => ReportMethod::Dw,
            MethodArg::Lls => ReportMethod::Lls,
            MethodArg::Both => ReportMethod::Both,
        }
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    #[arg(long)]
    pub text: bool,
    /// Exit with 2 when |t_area| is below this threshold.
    #[arg(long)]
    pub confidence: Option<f64>,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Detrend with the walk slope first.
    #[arg(long)]
    pub residual: bool,
    /// Append the noise-free parabola scaled by the fitted slope.
    #[arg(long)]
    pub with_reference: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub slope: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub intercept: f64,
    #[arg(long, default_value = "gaussian:0,1")]
    pub noise: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "unit")]
    pub grid: String,
    /// Defaults to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub realizations: usize,
    #[arg(long, default_value = "gaussian:0,1")]
    pub noise: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed number of histogram bins instead of Freedman–Diaconis.
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value = "poisson:1")]
    pub grid: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub realizations: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub slope: f64,
    #[arg(long, default_value = "gaussian:0,1")]
    pub noise: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if matches!(e, Error::NotEquidistant { .. }) {
                let _ = writeln!(
                    stderr,
                    "hint: use `trendwalk compare` or `--method lls` for irregular grids"
                );
            }
            EXIT_ERROR
        }
    }
}

fn seed_or_env(seed: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::SpecString {
            position: 1,
            message: format!("{SEED_ENV}=`{v}` is not an unsigned integer"),
        }),
        Err(_) => Ok(seed),
    }
}

fn open_output<'a>(
    path: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn read_input(path: &PathBuf) -> Result<SampleSeries> {
    report::read_series(File::open(path)?)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Fit(a) => {
            let series = read_input(&a.input)?;
            let r = report::trend_report(&series, a.method.into())?;
            if a.json {
                writeln!(stdout, "{}", report::to_json(&r)?)?;
            } else {
                writeln!(stdout, "n: {}", r.n)?;
                writeln!(stdout, "equidistant: {}", r.equidistant)?;
                writeln!(stdout, "slope: {}", r.slope)?;
                writeln!(stdout, "intercept: {}", r.intercept)?;
                writeln!(stdout, "area: {}", r.area)?;
                writeln!(stdout, "reference_area: {}", r.reference_area)?;
                writeln!(stdout, "ssr: {}", r.ssr)?;
                writeln!(stdout, "sigma_noise: {}", opt(r.sigma_noise))?;
                writeln!(stdout, "sigma_area: {}", opt(r.sigma_area))?;
                writeln!(stdout, "t_area: {}", opt(r.t_area))?;
                writeln!(stdout, "t_ls: {}", opt(r.t_ls))?;
                writeln!(stdout, "zero_crossings_raw: {}", r.zero_crossings_raw)?;
                writeln!(
                    stdout,
                    "zero_crossings_residual: {}",
                    r.zero_crossings_residual
                )?;
                if let Some(d) = r.slope_discrepancy {
                    writeln!(stdout, "slope_dw: {}", opt(r.slope_dw))?;
                    writeln!(stdout, "slope_lls: {}", opt(r.slope_lls))?;
                    writeln!(stdout, "slope_discrepancy: {d:e}")?;
                }
                if r.perfect_fit {
                    writeln!(stdout, "perfect fit")?;
                }
            }
            Ok(match a.confidence {
                Some(t) if !r.is_significant(t) => EXIT_NOT_SIGNIFICANT,
                _ => EXIT_OK,
            })
        }
        Command::Walk(a) => {
            let series = read_input(&a.input)?;
            let slope = if a.residual || a.with_reference {
                Some(estimators::dw_slope_with_tol(&series, EQUIDISTANT_TOL)?)
            } else {
                None
            };
            let w = match slope {
                Some(s) if a.residual => estimators::residual_walk(&series, s)?,
                _ => walk::build_walk(&series)?,
            };
            let reference: Option<Vec<f64>> = slope.filter(|_| a.with_reference).map(|s| {
                // parabola is in unit-span terms
                let unit_slope = s * series.span();
                walk::reference_parabola(series.len())
                    .into_iter()
                    .map(|z| unit_slope * z)
                    .collect()
            });
            let mut out = BufWriter::new(File::create(&a.output)?);
            report::write_walk(&mut out, &w, reference.as_deref())?;
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Generate(a) => {
            let seed = seed_or_env(a.seed)?;
            let noise = report::parse_noise(&a.noise, seed)?;
            let grid = report::parse_grid(&a.grid, a.n, seed.wrapping_add(GRID_SEED_OFFSET))?;
            let series = synth::gen_series(&grid, a.slope, a.intercept, &noise)?;
            let mut out = open_output(&a.output, stdout)?;
            report::write_series(&mut out, &series)?;
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Ensemble(a) => {
            let seed = seed_or_env(a.seed)?;
            let noise = report::parse_noise(&a.noise, seed)?;
            let binning = a.bins.map(Binning::Fixed).unwrap_or_default();
            let s = ensemble::run_area_ensemble_with(a.n, &noise, a.realizations, binning)?;
            let mut out = open_output(&a.output, stdout)?;
            if a.json {
                writeln!(out, "{}", report::to_json(&s)?)?;
            } else {
                writeln!(out, "n: {}", s.n)?;
                writeln!(out, "realizations: {}", s.realizations)?;
                writeln!(out, "mean_area: {}", s.mean_area)?;
                writeln!(out, "var_area: {}", s.var_area)?;
                writeln!(out, "theory_var_area: {}", s.theory_var_area)?;
                writeln!(out, "var_slope: {}", s.var_slope)?;
                writeln!(out, "theory_slope_variance: {}", s.theory_slope_variance)?;
                writeln!(out, "ks_statistic: {}", opt(s.ks_statistic))?;
                writeln!(out, "mean_zero_crossings: {}", s.mean_zero_crossings)?;
                writeln!(out, "mode_zero_crossings: {}", s.mode_zero_crossings)?;
                writeln!(
                    out,
                    "bridge_mean_zero_crossings: {}",
                    s.bridge_mean_zero_crossings
                )?;
                writeln!(
                    out,
                    "bridge_mode_zero_crossings: {}",
                    s.bridge_mode_zero_crossings
                )?;
            }
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Compare(a) => {
            let seed = seed_or_env(a.seed)?;
            let noise = report::parse_noise(&a.noise, seed)?;
            let grid: GridSpec =
                report::parse_grid(&a.grid, a.n, seed.wrapping_add(GRID_SEED_OFFSET))?;
            let c = ensemble::compare_irregular(&grid, a.slope, &noise, a.realizations)?;
            let mut out = open_output(&a.output, stdout)?;
            if a.json {
                writeln!(out, "{}", report::to_json(&c)?)?;
            } else {
                writeln!(out, "n: {}", c.n)?;
                writeln!(out, "realizations: {}", c.realizations)?;
                writeln!(out, "excluded: {}", c.excluded)?;
                writeln!(out, "max_rel_dev: {:e}", c.max_rel_dev)?;
                writeln!(out, "mean_rel_dev: {:e}", c.mean_rel_dev)?;
            }
            out.flush()?;
            Ok(EXIT_OK)
        }
    }
}
