//! `lah`: term generation, identity checks, series, matrix and determinant runs for
//! generalized Leonardo-Alwyn sequences.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad configuration or parameters (including DSL
//! syntax errors), 3 an under-test identity failed, 4 a must-pass identity failed without
//! confirmation or a report did not verify.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lah_core::SyntaxError;

mod commands;
mod config;

use config::{CommonArgs, GridName, Kind, Reading, RunConfig, SuiteName};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Config(String),
    Syntax { file: String, error: SyntaxError },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) | CliError::Syntax { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Config(m) => write!(f, "error: {m}"),
            CliError::Syntax { file, error } => write!(f, "{file}:{}:{}: {error}", error.line, error.column),
        }
    }
}

#[derive(Parser)]
#[command(name = "lah", version, about = "Exact generalized Leonardo-Alwyn sequences and hybrid-number identities")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first terms of the scalar or hybrid sequence
    Gen(GenArgs),
    /// Run identity checks over a parameter grid
    Check(CheckArgs),
    /// Expand the ordinary generating function and the exponential coefficients
    Series(SeriesArgs),
    /// Companion matrix, matrix-power, column-vector and characteristic-cubic runs
    Matrix(MatrixArgs),
    /// Tridiagonal determinant reconstruction
    Det(DetArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of terms
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    suite: Option<SuiteName>,
    /// Catalog name or report name; repeatable
    #[arg(long)]
    identity: Vec<String>,
    /// File of user identities, one per line
    #[arg(long)]
    dsl: Option<PathBuf>,
    #[arg(long, value_enum)]
    grid: Option<GridName>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    u_max: Option<u32>,
    #[arg(long)]
    v_max: Option<u32>,
    #[arg(long)]
    m_max: Option<u32>,
    /// Also write each report to `<dir>/<identity>.json`
    #[arg(long)]
    report_dir: Option<PathBuf>,
}

#[derive(Args)]
struct SeriesArgs {
    /// Number of coefficients
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct MatrixArgs {
    /// companion, power, column-vector or cubic
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct DetArgs {
    #[arg(long)]
    n: Option<usize>,
    /// scalar or hybrid
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, value_enum)]
    reading: Option<Reading>,
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut cfg = RunConfig::from_common(&cli.common)?;
    let name = match cli.command {
        Command::Gen(a) => {
            RunConfig::set(&mut cfg.n, a.n);
            RunConfig::set(&mut cfg.kind, a.kind);
            "gen"
        }
        Command::Check(a) => {
            RunConfig::set(&mut cfg.suite, a.suite);
            if !a.identity.is_empty() {
                cfg.identity = a.identity;
            }
            RunConfig::set(&mut cfg.dsl, a.dsl);
            RunConfig::set(&mut cfg.grid, a.grid.map(config::GridChoice::Named));
            RunConfig::set(&mut cfg.n_max, a.n_max);
            RunConfig::set(&mut cfg.u_max, a.u_max);
            RunConfig::set(&mut cfg.v_max, a.v_max);
            RunConfig::set(&mut cfg.m_max, a.m_max);
            RunConfig::set(&mut cfg.report_dir, a.report_dir);
            "check"
        }
        Command::Series(a) => {
            RunConfig::set(&mut cfg.order, a.order);
            "series"
        }
        Command::Matrix(a) => {
            RunConfig::set(&mut cfg.mode, a.mode);
            RunConfig::set(&mut cfg.m, a.m);
            "matrix"
        }
        Command::Det(a) => {
            RunConfig::set(&mut cfg.n, a.n);
            RunConfig::set(&mut cfg.mode, a.mode);
            RunConfig::set(&mut cfg.reading, a.reading);
            "det"
        }
    };
    if let Some(t) = cfg.threads {
        if t == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    match name {
        "gen" => commands::gen(&cfg),
        "check" => commands::check(&cfg),
        "series" => commands::series(&cfg),
        "matrix" => commands::matrix(&cfg),
        _ => commands::det(&cfg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
