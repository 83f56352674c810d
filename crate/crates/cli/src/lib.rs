//! `pcrank` command line: load a pairwise comparison matrix and report its
//! ranking, discrepancy and order preservation status.
//!
//! Exit codes: 0 success (for `cop`, both conditions guaranteed), 1 input or
//! usage error, 2 solver failure, 3 `cop` found a direct violation, 4 `cop`
//! found no violation but could not guarantee both conditions.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcrank_core::io::parse_judgment;
use pcrank_core::{
    parse_matrix, Analysis, Format, MatrixError, Method, PcMatrix, RevisionError, RevisionSession,
    SolverError, SolverOptions,
};
use thiserror::Error;

mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_UNGUARANTEED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "pcrank",
    version,
    about = "Rankings and discrepancy for pairwise comparison matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Matrix file, or "-" for stdin
    #[arg(long, short, global = true, default_value = "-")]
    pub input: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Auto)]
    pub format: FormatArg,
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    pub output: OutputArg,
    /// Power iteration tolerance
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = parse_tol)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iter: u64,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Eigenvector)]
    pub method: MethodArg,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Eigenvector,
    GeometricMean,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Eigenvector => Method::Eigenvector,
            MethodArg::GeometricMean => Method::GeometricMean,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Priority weights, principal eigenvalue and Saaty index
    Rank,
    /// Local discrepancy matrix and its maximum
    Discrepancy,
    /// Order preservation: direct violations and guaranteed-safety verdicts
    Cop,
    /// Point at the judgment to revise next, or apply revisions and report the result
    Advise {
        /// Revision "I,J=VALUE" (1-based), applied in order; repeatable
        #[arg(long = "step", value_parser = parse_step)]
        steps: Vec<StepArg>,
        /// Round the suggested value to two decimals in text output
        #[arg(long)]
        round_target: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepArg {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

fn parse_step(s: &str) -> Result<StepArg, String> {
    let bad = || format!("expected I,J=VALUE, got {s:?}");
    let (pos, value) = s.split_once('=').ok_or_else(bad)?;
    let (i, j) = pos.split_once(',').ok_or_else(bad)?;
    Ok(StepArg {
        i: i.trim().parse().map_err(|_| bad())?,
        j: j.trim().parse().map_err(|_| bad())?,
        value: parse_judgment(value).ok_or_else(bad)?,
    })
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Matrix(#[from] MatrixError),
    #[error("{0}")]
    Solver(#[from] SolverError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Matrix(_) => EXIT_INPUT,
            CliError::Solver(_) => EXIT_SOLVER,
        }
    }
}

impl From<RevisionError> for CliError {
    fn from(e: RevisionError) -> Self {
        match e {
            RevisionError::Matrix(e) => CliError::Matrix(e),
            RevisionError::Solver(e) => CliError::Solver(e),
            RevisionError::NothingToUndo => unreachable!("the CLI never undoes"),
        }
    }
}

impl CliConfig {
    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            tol: self.tol,
            max_iter: usize::try_from(self.max_iter).unwrap_or(usize::MAX),
        }
    }

    fn resolve_format(&self, text: &str) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Auto => detect_format(&self.input, text),
        }
    }
}

/// Extension first, then content.
pub fn detect_format(path: &Path, text: &str) -> Format {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .as_deref()
    {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        _ => Format::sniff(text),
    }
}

fn load_matrix(config: &CliConfig, stdin: &mut dyn Read) -> Result<PcMatrix, CliError> {
    let mut text = String::new();
    let path = config.input.as_path();
    if path == Path::new("-") {
        stdin
            .read_to_string(&mut text)
            .map_err(|source| CliError::Io {
                path: "stdin".into(),
                source,
            })?;
    } else {
        text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(parse_matrix(&text, config.resolve_format(&text))?)
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = &cli.config;
    let matrix = load_matrix(config, stdin)?;
    let opts = config.solver_options();
    let method = Method::from(config.method);
    let json = config.output == OutputArg::Json;

    let (body, code) = match &cli.command {
        Command::Rank | Command::Discrepancy | Command::Cop => {
            let analysis = Analysis::compute(&matrix, &opts, method)?;
            let code = match cli.command {
                Command::Cop => cop_exit_code(&analysis),
                _ => EXIT_OK,
            };
            let body = if json {
                serde_json::to_string_pretty(&analysis).expect("analysis serializes")
            } else {
                match cli.command {
                    Command::Rank => render::rank(&analysis),
                    Command::Discrepancy => render::discrepancy(&analysis),
                    _ => render::cop(&analysis),
                }
            };
            (body, code)
        }
        Command::Advise {
            steps,
            round_target,
        } => {
            let mut session = RevisionSession::open_with(matrix, opts, method)?;
            for step in steps {
                session.apply(step.i, step.j, step.value)?;
            }
            let body = if json {
                serde_json::to_string_pretty(&session.view()).expect("session serializes")
            } else {
                render::advise(&session, *round_target)
            };
            (body, EXIT_OK)
        }
    };
    let _ = writeln!(out, "{body}");
    Ok(code)
}

pub fn cop_exit_code(analysis: &Analysis) -> i32 {
    if analysis.cop.has_violations() {
        EXIT_VIOLATION
    } else if !analysis.cop.is_safe() {
        EXIT_UNGUARANTEED
    } else {
        EXIT_OK
    }
}
