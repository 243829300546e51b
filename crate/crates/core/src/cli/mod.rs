//! Command line front end: solution curves, residual studies, SVG plots.

mod plot;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Error;
use crate::verification::{log_log_slope, time_ode_residual};
use crate::wave::{
    space_solution_dimensionless, space_solution_u, time_solution_dimensionless, time_solution_u,
    FractionalOrder, SpaceFractionalWave, TimeFractionalWave,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// u(t̃) of the time-fractional wave.
    Time,
    /// u(x̃) of the space-fractional wave.
    Space,
    /// Residual refinement study of the time-fractional equation.
    Verify,
}

#[derive(Debug, Parser)]
#[command(
    name = "fracwave",
    version,
    about = "Fractional electromagnetic plane waves: solution curves and residual checks"
)]
struct Args {
    #[arg(long, value_enum, default_value_t = Mode::Time)]
    mode: Mode,

    /// Comma-separated orders γ (or δ) in (0, 1].
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75,1.0")]
    orders: Vec<f64>,

    /// Tie σ (σₓ) to the order; the default.
    #[arg(long, conflicts_with = "free")]
    coupled: bool,

    /// Take σ (σₓ) from the command line.
    #[arg(long)]
    free: bool,

    /// Fractional time parameter σ, free mode only.
    #[arg(long)]
    sigma: Option<f64>,

    /// Fractional space parameter σₓ, free mode only.
    #[arg(long = "sigma-x")]
    sigma_x: Option<f64>,

    /// Fundamental frequency ω₀ = 1/T₀.
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,

    /// Wavevector k = 1/λ.
    #[arg(long, default_value_t = 1.0)]
    k: f64,

    /// Upper end of s = t/T₀ (or x/λ).
    #[arg(long, default_value_t = 10.0)]
    range: f64,

    #[arg(long, default_value_t = 1001)]
    samples: usize,

    #[arg(long, default_value = "fig1.csv")]
    out: PathBuf,

    /// Also write an SVG next to the CSV.
    #[arg(long)]
    plot: bool,

    /// Comma-separated grid sizes for verify mode.
    #[arg(long, value_delimiter = ',', default_value = "256,512,1024,2048")]
    grids: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Coupled,
    /// Carries σ for time and verify modes, σₓ for space mode.
    Free(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    /// Ascending, without duplicates.
    pub orders: Vec<FractionalOrder>,
    pub coupling: Coupling,
    pub omega0: f64,
    pub k: f64,
    pub range_max: f64,
    pub samples: usize,
    pub output_path: PathBuf,
    pub plot: bool,
    pub grids: Vec<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("order {order}: {source}")]
    Order { order: f64, source: Error },
}

/// Files written by a successful run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub csv: PathBuf,
    pub svg: Option<PathBuf>,
}

fn usage(kind: ErrorKind, message: impl std::fmt::Display) -> clap::Error {
    Args::command().error(kind, message)
}

fn positive(flag: &str, v: f64) -> Result<f64, clap::Error> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(
            ErrorKind::ValueValidation,
            format!("invalid value '{v}' for '--{flag}': must be positive"),
        ))
    }
}

/// Parses and validates a full argument vector, program name included.
///
/// Help and version requests come back as errors of the matching kind;
/// [`clap::Error::exit`] prints them and exits with status 0.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;

    let mut orders = Vec::with_capacity(args.orders.len());
    for &v in &args.orders {
        let order = FractionalOrder::new(v).map_err(|_| {
            usage(
                ErrorKind::ValueValidation,
                format!("invalid value '{v}' for '--orders': orders must lie in (0, 1]"),
            )
        })?;
        orders.push(order);
    }
    if orders.is_empty() {
        return Err(usage(
            ErrorKind::ValueValidation,
            "'--orders' needs at least one value",
        ));
    }
    orders.sort_by(|a, b| a.value().total_cmp(&b.value()));
    orders.dedup();

    let (needed, unused) = match args.mode {
        Mode::Space => (("sigma-x", args.sigma_x), ("sigma", args.sigma)),
        Mode::Time | Mode::Verify => (("sigma", args.sigma), ("sigma-x", args.sigma_x)),
    };
    if unused.1.is_some() {
        return Err(usage(
            ErrorKind::ArgumentConflict,
            format!("'--{}' does not apply to this mode", unused.0),
        ));
    }
    let coupling = if args.free {
        match needed.1 {
            Some(v) => Coupling::Free(positive(needed.0, v)?),
            None => {
                return Err(usage(
                    ErrorKind::MissingRequiredArgument,
                    format!("'--free' requires '--{}'", needed.0),
                ))
            }
        }
    } else {
        if needed.1.is_some() {
            return Err(usage(
                ErrorKind::ArgumentConflict,
                format!("'--{}' is only accepted with '--free'", needed.0),
            ));
        }
        Coupling::Coupled
    };

    let omega0 = positive("omega0", args.omega0)?;
    if let (Mode::Time | Mode::Verify, Coupling::Free(sigma)) = (args.mode, coupling) {
        if sigma > 1.0 / omega0 {
            return Err(usage(
                ErrorKind::ValueValidation,
                format!("'--sigma' {sigma} exceeds the period T0 = {}", 1.0 / omega0),
            ));
        }
    }
    if args.samples < 2 {
        return Err(usage(
            ErrorKind::ValueValidation,
            "'--samples' must be at least 2",
        ));
    }
    if args.mode == Mode::Verify {
        if args.grids.len() < 3 || args.grids.windows(2).any(|w| w[1] <= w[0]) {
            return Err(usage(
                ErrorKind::ValueValidation,
                "'--grids' needs at least three strictly increasing sizes",
            ));
        }
        if args.grids[0] < crate::verification::MIN_GRID {
            return Err(usage(
                ErrorKind::ValueValidation,
                format!(
                    "'--grids' sizes must be at least {}",
                    crate::verification::MIN_GRID
                ),
            ));
        }
    }

    Ok(RunConfig {
        mode: args.mode,
        orders,
        coupling,
        omega0,
        k: positive("k", args.k)?,
        range_max: positive("range", args.range)?,
        samples: args.samples,
        output_path: args.out,
        plot: args.plot,
        grids: args.grids,
    })
}

/// Column label for an order, `u_gamma_0.25` or `u_delta_0.25`.
pub fn column_name(mode: Mode, order: FractionalOrder) -> String {
    let symbol = if mode == Mode::Space {
        "delta"
    } else {
        "gamma"
    };
    format!("u_{symbol}_{:?}", order.value())
}

fn cell(v: f64) -> String {
    format!("{v:.16e}")
}

fn abscissae(cfg: &RunConfig) -> Vec<f64> {
    let last = (cfg.samples - 1) as f64;
    (0..cfg.samples)
        .map(|i| cfg.range_max * i as f64 / last)
        .collect()
}

fn curve(cfg: &RunConfig, order: FractionalOrder, s: &[f64]) -> crate::Result<Vec<f64>> {
    let one = Complex64::new(1.0, 0.0);
    match (cfg.mode, cfg.coupling) {
        (Mode::Space, Coupling::Coupled) => s
            .iter()
            .map(|&x| space_solution_dimensionless(order, x))
            .collect(),
        (Mode::Space, Coupling::Free(sigma_x)) => {
            let w = SpaceFractionalWave::free(order, cfg.k, sigma_x, 1.0, one)?;
            let lambda = w.wavelength();
            s.iter()
                .map(|&x| space_solution_u(&w, x * lambda))
                .collect()
        }
        (_, Coupling::Coupled) => s
            .iter()
            .map(|&t| time_solution_dimensionless(order, t))
            .collect(),
        (_, Coupling::Free(sigma)) => {
            let w = TimeFractionalWave::free(order, cfg.omega0, sigma, cfg.k, one)?;
            let period = w.period();
            s.iter().map(|&t| time_solution_u(&w, t * period)).collect()
        }
    }
}

/// Computes every curve, in parallel over orders, keeping input order.
pub fn curves(cfg: &RunConfig) -> Result<(Vec<f64>, Vec<Vec<f64>>), RunError> {
    let s = abscissae(cfg);
    let columns = cfg
        .orders
        .par_iter()
        .map(|&order| {
            curve(cfg, order, &s).map_err(|source| RunError::Order {
                order: order.value(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((s, columns))
}

pub fn curves_csv(cfg: &RunConfig, s: &[f64], columns: &[Vec<f64>]) -> String {
    let mut out = String::from("s");
    for &order in &cfg.orders {
        out.push(',');
        out.push_str(&column_name(cfg.mode, order));
    }
    out.push('\n');
    for (i, &si) in s.iter().enumerate() {
        out.push_str(&cell(si));
        for col in columns {
            out.push(',');
            out.push_str(&cell(col[i]));
        }
        out.push('\n');
    }
    out
}

fn study_wave(cfg: &RunConfig, order: FractionalOrder) -> crate::Result<TimeFractionalWave> {
    let one = Complex64::new(1.0, 0.0);
    match cfg.coupling {
        Coupling::Coupled => TimeFractionalWave::coupled(order, cfg.omega0, cfg.k, one),
        Coupling::Free(sigma) => TimeFractionalWave::free(order, cfg.omega0, sigma, cfg.k, one),
    }
}

/// Verify-mode CSV. Rows for orders that completed are kept even when a
/// later order fails; the first failure is returned alongside.
pub fn verify_csv(cfg: &RunConfig) -> (String, Option<RunError>) {
    let t_max = cfg.range_max / cfg.omega0;
    let pairs: Vec<(FractionalOrder, usize)> = cfg
        .orders
        .iter()
        .flat_map(|&o| cfg.grids.iter().map(move |&n| (o, n)))
        .collect();
    let residuals: Vec<crate::Result<f64>> = pairs
        .par_iter()
        .map(|&(order, n)| time_ode_residual(&study_wave(cfg, order)?, t_max, n))
        .collect();

    let mut out = String::from("order,grid,dt,residual_inf,empirical_order\n");
    let mut failure = None;
    let dts: Vec<f64> = cfg.grids.iter().map(|&n| t_max / n as f64).collect();
    for (row, &order) in residuals.chunks(cfg.grids.len()).zip(&cfg.orders) {
        let values = match row.iter().cloned().collect::<crate::Result<Vec<f64>>>() {
            Ok(v) => v,
            Err(source) => {
                failure.get_or_insert(RunError::Order {
                    order: order.value(),
                    source,
                });
                continue;
            }
        };
        let slope = log_log_slope(&dts, &values);
        for ((n, dt), r) in cfg.grids.iter().zip(&dts).zip(&values) {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                cell(order.value()),
                n,
                cell(*dt),
                cell(*r),
                cell(slope)
            );
        }
    }
    (out, failure)
}

fn write(path: &Path, contents: &str) -> Result<(), RunError> {
    fs::write(path, contents).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn svg_path(csv: &Path) -> PathBuf {
    csv.with_extension("svg")
}

pub fn run(cfg: &RunConfig) -> Result<RunOutput, RunError> {
    let csv = cfg.output_path.clone();
    if cfg.mode == Mode::Verify {
        let (text, failure) = verify_csv(cfg);
        write(&csv, &text)?;
        return match failure {
            Some(e) => Err(e),
            None => Ok(RunOutput { csv, svg: None }),
        };
    }

    let (s, columns) = curves(cfg)?;
    write(&csv, &curves_csv(cfg, &s, &columns))?;
    let svg = if cfg.plot {
        let path = svg_path(&csv);
        let labels: Vec<String> = cfg
            .orders
            .iter()
            .map(|&o| {
                let symbol = if cfg.mode == Mode::Space { "δ" } else { "γ" };
                format!("{symbol} = {}", o.value())
            })
            .collect();
        let xlabel = if cfg.mode == Mode::Space {
            "x/λ"
        } else {
            "t/T₀"
        };
        write(&path, &plot::render(&s, &columns, &labels, xlabel))?;
        Some(path)
    } else {
        None
    };
    Ok(RunOutput { csv, svg })
}

/// Entry point used by the binary; returns the process exit status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_config(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cfg) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
