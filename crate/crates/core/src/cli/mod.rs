//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a computed quantity misses its
//! tolerance or the numerics fail, 2 on usage or configuration errors.

mod config;
mod output;
mod selftest;

pub use config::{Outputs, QuadOverrides, RunConfig};
pub use output::{emit_csv, emit_record, format_float};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::asymptotics::{translation_asymptotics, AsymptoticCase, Direction};
use crate::error::{Error, Result};
use crate::geometry::Vector2;
use crate::kernel::{
    fit_mu, smeared_kernel, spectral_i, spectral_smeared_oracle, KernelParams, Regulator,
    DEFAULT_U_GRID,
};
use crate::quadrature::QuadSpec;
use crate::scattering::{neutrality_decay, run_amplitude};
use crate::testfn::{Correlation, GridSpec, TestFunction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable read when `--jobs` is absent.
pub const JOBS_ENV: &str = "INFRASCAT_JOBS";

#[derive(Debug, Parser)]
#[command(name = "infrascat", version, about = "Scattering amplitudes of charged infraparticles in the 2d massless free field")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = JOBS_ENV)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute S_T over the T grid and extrapolate to T = ∞.
    Amplitude {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// CSV of (T, Re S_T, Im S_T, err); stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Footer record with the extrapolated value and the target.
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Fit the scale μ_v of a regulator.
    MuFit {
        /// `sharp:R` (v = 1 below R) or `exp:S` (v = exp(-k/S)).
        #[arg(long, default_value = "sharp:1")]
        regulator: String,
        /// Points u at which I(u) - ln(μ u) - iπ/2 is sampled.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_U_GRID.to_vec())]
        u_grid: Vec<f64>,
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Compare the closed-form smeared kernel with its spectral integral.
    KernelCheck {
        /// Take f, g, regulator and tolerances from this file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Relative translation of the two functions.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec![1.5, 0.4])]
        shift: Vec<f64>,
        /// Largest accepted relative difference.
        #[arg(long, default_value_t = 1e-5)]
        tolerance: f64,
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Large-translation behaviour of a smeared kernel.
    Asymptotics {
        /// spacelike, timelike, lightlike+ or lightlike-.
        #[arg(long)]
        case: String,
        /// Decay exponent of the offset r_t = |t|^-α (1, 1)/√2.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = crate::asymptotics::DEFAULT_T_GRID.to_vec())]
        t_grid: Vec<f64>,
        /// Take f and the kernel scale from this file (default: unit-charge bump).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Overlap of two Weyl operators moved apart along a light ray.
    Neutrality {
        /// Direction of the light ray, `+` or `-`.
        #[arg(long, default_value = "+", allow_hyphen_values = true, value_parser = parse_lambda)]
        lambda: f64,
        #[arg(long, value_delimiter = ',', default_values_t = crate::asymptotics::DEFAULT_T_GRID.to_vec())]
        t_grid: Vec<f64>,
        /// Take f and g from this file (default: charges ±√(4π)).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Run the quick internal checks.
    Selftest {
        /// Seed for the sampled points.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn parse_lambda(s: &str) -> std::result::Result<f64, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(1.0),
        "-" | "−" | "-1" | "minus" => Ok(-1.0),
        _ => Err(format!("expected + or -, got '{s}'")),
    }
}

/// Parse `argv` (program name first), run, and return the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        // A pool may already exist when dispatch runs twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_TOLERANCE,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::InvalidInput(_) | Error::Io { .. } | Error::GridTooCoarse(_) => {
            EXIT_USAGE
        }
        _ => EXIT_TOLERANCE,
    }
}

fn load(path: &Option<PathBuf>) -> Result<Option<RunConfig>> {
    path.as_deref().map(RunConfig::load).transpose()
}

fn or_config(flag: &Option<PathBuf>, from_config: &Option<PathBuf>) -> Option<PathBuf> {
    flag.clone().or_else(|| from_config.clone())
}

fn charged_bump(q: f64) -> Result<TestFunction> {
    TestFunction::radial_bump(Vector2::ZERO, (1.0, 1.0), 1.0)?.normalize_to_charge(q)
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Amplitude {
            config,
            out,
            record,
        } => {
            let cfg = RunConfig::load(&config)?;
            let collision = cfg.collision()?;
            let result = run_amplitude(&collision)?;
            let rows: Vec<Vec<f64>> = result
                .samples
                .iter()
                .map(|s| vec![s.big_t, s.s_t.re, s.s_t.im, s.err])
                .collect();
            emit_csv(
                &["T", "re_s_t", "im_s_t", "err"],
                &rows,
                or_config(&out, &cfg.outputs.csv).as_deref(),
            )?;
            let series = &result.series;
            let unitary = series.within_unit_disk(5.0);
            let pass = series.gap() <= cfg.tolerance && unitary;
            let footer = json!({
                "extrapolated_re": series.extrapolated.re,
                "extrapolated_im": series.extrapolated.im,
                "target_re": series.target.re,
                "target_im": series.target.im,
                "gap": series.gap(),
                "extrapolation_error": series.extrapolation_error,
                "low_confidence": series.low_confidence,
                "unitarity_ok": unitary,
                "ratio_ln_t_slope": result.audit.as_ref().map(|a| a.ratio_slope),
                "tolerance": cfg.tolerance,
                "pass": pass,
            });
            emit_record(&footer, or_config(&record, &cfg.outputs.record).as_deref())?;
            Ok(pass)
        }
        Command::MuFit {
            regulator,
            u_grid,
            record,
        } => {
            let v: Regulator = regulator.parse()?;
            let spec = QuadSpec::default();
            let fit = fit_mu(&v, &u_grid, &spec)?;
            let i1 = spectral_i(1.0, &v, &spec)?;
            let rec = json!({
                "regulator": regulator,
                "mu_v": fit.mu_v,
                "residual": fit.residual,
                "flagged": fit.flagged,
                "u_grid": fit.u_grid,
                "i1_re": i1.value.re,
                "i1_im": i1.value.im,
            });
            emit_record(&rec, record.as_deref())?;
            Ok(!fit.flagged)
        }
        Command::KernelCheck {
            config,
            shift,
            tolerance,
            record,
        } => {
            let shift = vector_arg(&shift, "--shift")?;
            let cfg = load(&config)?;
            let (spec, v, grid, (f, g)) = match &cfg {
                Some(c) => (c.quad_spec()?, c.regulator.clone(), c.grid, c.functions()?),
                None => (
                    QuadSpec::default(),
                    Regulator::default(),
                    GridSpec::default(),
                    (charged_bump(1.0)?, charged_bump(-0.7)?.translate(Vector2::new(0.3, -0.2))),
                ),
            };
            let params = KernelParams::from_regulator(&v, &spec)?;
            let c = Correlation::correlate(&f, &g, &grid)?;
            let closed = smeared_kernel(&c, shift, &params, &spec)?;
            let oracle = spectral_smeared_oracle(&f, &g, shift, &v, &spec)?;
            let rel = (closed.value - oracle.value).norm() / oracle.value.norm().max(f64::MIN_POSITIVE);
            let rec = json!({
                "mu_v": params.mu_v(),
                "closed_re": closed.value.re,
                "closed_im": closed.value.im,
                "oracle_re": oracle.value.re,
                "oracle_im": oracle.value.im,
                "rel_error": rel,
                "tolerance": tolerance,
                "pass": rel <= tolerance,
            });
            emit_record(&rec, record.as_deref())?;
            Ok(rel <= tolerance)
        }
        Command::Asymptotics {
            case,
            alpha,
            t_grid,
            config,
            out,
            record,
        } => {
            let direction = Direction::parse(&case)?;
            let case = AsymptoticCase::new(direction, alpha, t_grid)?;
            let cfg = load(&config)?;
            let (f, spec, params, grid) = match &cfg {
                Some(c) => {
                    let spec = c.quad_spec()?;
                    (c.f.build()?, spec.clone(), c.kernel_params(&spec)?, c.grid)
                }
                None => (
                    charged_bump(1.0)?,
                    QuadSpec::default(),
                    KernelParams::canonical(),
                    GridSpec::default(),
                ),
            };
            let table = translation_asymptotics(&case, &f, &params, &spec, &grid)?;
            let rows: Vec<Vec<f64>> = table
                .rows
                .iter()
                .map(|r| vec![r.t, r.lhs.0, r.lhs.1, r.rhs.0, r.rhs.1, r.residual])
                .collect();
            emit_csv(
                &["t", "re_lhs", "im_lhs", "re_rhs", "im_rhs", "residual"],
                &rows,
                out.as_deref(),
            )?;
            let threshold = -alpha.min(1.0) + 0.15;
            let signs_ok = match direction {
                Direction::Spacelike => true,
                _ => table
                    .rows
                    .iter()
                    .all(|r| r.lhs.1.signum() == r.rhs.1.signum()),
            };
            let pass = table.slope <= threshold && signs_ok;
            let rec = json!({
                "case": case_name(direction),
                "alpha": alpha,
                "slope": table.slope,
                "slope_threshold": threshold,
                "phase_signs_ok": signs_ok,
                "pass": pass,
            });
            emit_record(&rec, record.as_deref())?;
            Ok(pass)
        }
        Command::Neutrality {
            lambda,
            t_grid,
            config,
            out,
            record,
        } => {
            let cfg = load(&config)?;
            let (f, g, spec, params, grid) = match &cfg {
                Some(c) => {
                    let spec = c.quad_spec()?;
                    let (f, g) = c.functions()?;
                    (f, g, spec.clone(), c.kernel_params(&spec)?, c.grid)
                }
                None => {
                    let q = (4.0 * std::f64::consts::PI).sqrt();
                    (
                        charged_bump(q)?,
                        charged_bump(-q)?,
                        QuadSpec::default(),
                        KernelParams::canonical(),
                        GridSpec::default(),
                    )
                }
            };
            let table = neutrality_decay(&f, &g, lambda, &t_grid, &params, &spec, &grid)?;
            let rows: Vec<Vec<f64>> = table
                .rows
                .iter()
                .map(|r| vec![r.t, r.overlap.re, r.overlap.im, r.overlap.norm()])
                .collect();
            emit_csv(&["t", "re_overlap", "im_overlap", "abs_overlap"], &rows, out.as_deref())?;
            let pass = match table.slope {
                Some(s) if table.predicted_slope != 0.0 => {
                    (s - table.predicted_slope).abs() <= 0.05 * table.predicted_slope.abs()
                }
                _ => true,
            };
            let rec = json!({
                "lambda": lambda,
                "slope": table.slope,
                "predicted_slope": table.predicted_slope,
                "selection_rule_zero": table.slope.is_none(),
                "pass": pass,
            });
            emit_record(&rec, record.as_deref())?;
            Ok(pass)
        }
        Command::Selftest { seed } => Ok(selftest::run(seed)),
    }
}

fn vector_arg(v: &[f64], name: &str) -> Result<Vector2> {
    match v {
        [a, b] => Ok(Vector2::new(*a, *b)),
        _ => Err(Error::Config(format!("{name} takes two comma-separated numbers"))),
    }
}

fn case_name(d: Direction) -> &'static str {
    match d {
        Direction::Spacelike => "spacelike",
        Direction::Timelike => "timelike",
        Direction::LightlikePlus => "lightlike+",
        Direction::LightlikeMinus => "lightlike-",
    }
}

