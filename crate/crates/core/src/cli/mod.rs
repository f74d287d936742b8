//! Command-line front end.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 validation error,
//! 4 requested criterion not applicable.

mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gns::DEFAULT_GNS_RANK_TOL;
use crate::numkernel::DEFAULT_HERMITICITY_TOL;
use crate::pullback::{DEFAULT_BOUNDARY_TOL, DEFAULT_ZERO_BLOCK_TOL};
use crate::states::{DEFAULT_PSD_TOL, DEFAULT_SCHMIDT_RANK_TOL, DEFAULT_TRACE_TOL};

pub use input::{Data, Kind, LoadedState, StateFile};
pub use report::{fmt_float, Cell, Report, Table, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INAPPLICABLE: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::parse(message)
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inapplicable(_) => EXIT_INAPPLICABLE,
            _ => EXIT_VALIDATION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Relative zero-block tolerance of the pure-state criteria.
    #[arg(long, global = true, default_value_t = DEFAULT_ZERO_BLOCK_TOL)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_HERMITICITY_TOL)]
    pub herm_tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_PSD_TOL)]
    pub psd_tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_TRACE_TOL)]
    pub trace_tol: f64,
    /// Relative slack when comparing a statistic with its bound.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUNDARY_TOL)]
    pub boundary_tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_SCHMIDT_RANK_TOL)]
    pub schmidt_tol: f64,
    /// Relative rank threshold of the GNS Gram matrix.
    #[arg(long, global = true, default_value_t = DEFAULT_GNS_RANK_TOL)]
    pub gns_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepKind {
    /// su(N) generators on C^N.
    Su,
    /// su(N) ⊗ 1 and 1 ⊗ su(N) on C^N ⊗ C^N.
    LocalProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionKind {
    /// Pure states: metric block test; density states: Ky Fan test.
    Auto,
    PureBlock,
    MaxEntanglement,
    KyFan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvolveMode {
    Schrodinger,
    Riccati,
    Both,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Pull-back tensor coefficients of a state.
    Tensors {
        state: PathBuf,
        #[arg(long, value_enum, default_value_t = RepKind::LocalProduct)]
        rep: RepKind,
        /// Local dimension; inferred from the state when omitted.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Separability or maximal-entanglement verdict.
    Separability {
        state: PathBuf,
        /// Bipartition as `AxB`; defaults to the file's dims or a square split.
        #[arg(long, value_parser = parse_dims)]
        dims: Option<(usize, usize)>,
        #[arg(long, value_enum, default_value_t = CriterionKind::Auto)]
        criterion: CriterionKind,
    },
    /// Ky Fan statistic along the Werner family.
    WernerScan {
        #[arg(long, default_value = "0", value_parser = parse_real, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, default_value = "1", value_parser = parse_real, allow_hyphen_values = true)]
        to: f64,
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Also write the table as CSV to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schrödinger and Riccati evolution of a qubit or general state.
    Evolve {
        hamiltonian: PathBuf,
        state: PathBuf,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        t_max: f64,
        /// RK4 step of the Riccati integrator.
        #[arg(long, default_value = "1e-3", value_parser = parse_real, allow_hyphen_values = true)]
        step: f64,
        #[arg(long, value_enum, default_value_t = EvolveMode::Both)]
        mode: EvolveMode,
        /// Number of output intervals on [0, t-max].
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value = "1", value_parser = parse_real, allow_hyphen_values = true)]
        hbar: f64,
        /// Also write the table as CSV to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// GNS dimensions and Gram spectrum.
    Gns { state: PathBuf },
}

#[derive(Debug, Clone, Parser)]
#[command(name = "geoqm", version, about = "Geometric analysis of finite-dimensional quantum states")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got {s:?}"))?;
    let a = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<usize>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

/// A float or a fraction `p/q`.
fn parse_real(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|e| format!("{e}"))?;
            let q: f64 = q.trim().parse().map_err(|e| format!("{e}"))?;
            p / q
        }
        None => s.trim().parse().map_err(|e| format!("{e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("{s:?} is not a finite number"))
    }
}

/// Renders a report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Csv => report.render_csv(),
        Format::Json => report.render_json(),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match commands::execute(&cli) {
        Ok(report) => {
            if out.write_all(render(&report, cli.global.format).as_bytes()).is_err() {
                return EXIT_VALIDATION;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// Runs the command line and returns the report instead of printing it.
pub fn run_report<I, S>(args: I) -> Result<Report, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::usage(e.to_string()))?;
    commands::execute(&cli)
}
