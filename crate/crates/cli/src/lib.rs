//! The `funkfin` command-line tool: evaluations and distances as JSON,
//! geodesic traces and curvature grids as CSV, and sampled verification
//! suites.
//!
//! Exit codes: 0 on success, 1 when a checked residual exceeds its
//! tolerance, 2 on usage or domain errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use funk_finsler::parse::{parse_grid, parse_vec2, parse_xi_mode, GridSpec, MetricName, SuiteName, XiMode};
use funk_finsler::{GeomError, Vec2};

pub mod check;
pub mod commands;
pub mod num;
pub mod registry;
mod sample;

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "funkfin", version, about = "Funk–Finsler metric of the Klein unit disc")]
pub struct Cli {
    /// Write data to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate F(x, ξ) with its Randers parts; prints one JSON object.
    Eval {
        #[arg(long, default_value = "klein-funk")]
        metric: MetricName,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        x: Vec2,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        xi: Vec2,
    },
    /// Distance from x to y; prints one JSON object.
    Distance {
        #[arg(long, default_value = "klein-funk")]
        metric: MetricName,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        x: Vec2,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        y: Vec2,
        /// Also integrate the length of the geodesic and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Integrate a geodesic; CSV `t,x1,x2,v1,v2,F` and a `#` summary line.
    Geodesic {
        #[arg(long, default_value = "klein-funk")]
        metric: MetricName,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        x0: Vec2,
        #[arg(long, value_parser = parse_vec2, allow_hyphen_values = true)]
        v0: Vec2,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Stop this close to the boundary.
        #[arg(long, default_value_t = 1e-9)]
        margin: f64,
    },
    /// S, Ric and K over a grid; CSV `x1,x2,S,Ric,K`, empty fields outside the domain.
    CurvatureGrid {
        #[arg(long, default_value = "klein-funk")]
        metric: MetricName,
        /// `xmin:xmax:nx,ymin:ymax:ny`
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
        grid: GridSpec,
        /// `radial`, `tangential` or `fixed:a,b`
        #[arg(long, value_parser = parse_xi_mode, default_value = "tangential")]
        xi: XiMode,
        /// Use the finite-difference oracles even where closed forms exist.
        #[arg(long)]
        numeric: bool,
    },
    /// Run a sampled verification suite and print its max residuals.
    Check {
        suite: SuiteName,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// Failure of a command.
#[derive(Debug)]
pub enum CliError {
    Geom(GeomError),
    Io(io::Error),
    Csv(csv::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Geom(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Csv(e) => write!(f, "csv error: {e}"),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Geom(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

/// Whether every checked residual was within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    OverTolerance,
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::OverTolerance
        }
    }
}

/// Runs a parsed command, writing data to `out`.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<Verdict, CliError> {
    match *command {
        Command::Eval { metric, x, xi } => commands::eval(metric, x, xi, out),
        Command::Distance { metric, x, y, verify } => commands::distance(metric, x, y, verify, out),
        Command::Geodesic {
            metric,
            x0,
            v0,
            t_end,
            step,
            margin,
        } => commands::geodesic(metric, x0, v0, t_end, step, margin, out),
        Command::CurvatureGrid {
            metric,
            ref grid,
            xi,
            numeric,
        } => commands::curvature_grid(metric, grid, xi, numeric, out),
        Command::Check { suite, seed, samples } => check::run(suite, seed, samples, out),
    }
}

/// Parses `args`, runs the command and returns the exit code. Data goes to
/// `stdout` (or the `--out` file), diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match &cli.out {
        Some(path) => File::create(path).map_err(CliError::from).and_then(|f| {
            let mut w = BufWriter::new(f);
            let verdict = execute(&cli.command, &mut w)?;
            w.flush()?;
            Ok(verdict)
        }),
        None => execute(&cli.command, stdout).and_then(|v| {
            stdout.flush()?;
            Ok(v)
        }),
    };
    match result {
        Ok(Verdict::Pass) => EXIT_OK,
        Ok(Verdict::OverTolerance) => {
            let _ = writeln!(stderr, "funkfin: residual over tolerance");
            EXIT_TOLERANCE
        }
        Err(e) => {
            let _ = writeln!(stderr, "funkfin: {e}");
            EXIT_USAGE
        }
    }
}
