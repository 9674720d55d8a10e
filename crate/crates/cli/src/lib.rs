//! Command-line front end: dataset registry, report emission and the
//! subcommands built on `graphanon-core`.

pub mod commands;
pub mod config;
pub mod format;
pub mod registry;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

use crate::registry::Registry;

#[derive(Debug, Parser)]
#[command(
    name = "graphanon",
    version,
    about = "Node anonymity in undirected networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Network statistics of an edge list, checked against published values
    Stats(commands::stats::StatsArgs),
    /// Uniqueness under each measure and distance
    Uniqueness(commands::uniqueness::UniquenessArgs),
    /// Anonymity-cascade attack, single pair or full grid
    Cascade(commands::cascade::CascadeArgs),
    /// Edge-sampling sweep with utility metrics and Pareto fronts
    Sweep(commands::sweep::SweepArgs),
    /// Wall-clock time of uniqueness computation per measure
    Bench(commands::bench::BenchArgs),
    /// Correlate measure differences with network properties
    Correlate(commands::correlate::CorrelateArgs),
    /// Download a registered dataset
    Fetch(commands::fetch::FetchArgs),
    /// Check measure ordering and published statistics on a dataset
    Verify(commands::verify::VerifyArgs),
}

/// Where datasets live.
#[derive(Clone, Debug, Args)]
pub struct DataArgs {
    /// Directory holding dataset files
    #[arg(long, env = "GRAPHANON_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,
    /// TOML manifest adding or overriding registry entries
    #[arg(long)]
    pub registry: Option<PathBuf>,
}

impl DataArgs {
    pub fn registry(&self) -> Result<Registry, Failure> {
        let r = Registry::builtin(self.data_dir.clone());
        match &self.registry {
            Some(path) => r.with_manifest(path).map_err(Failure::Usage),
            None => Ok(r),
        }
    }
}

/// Successful outcomes; `Partial` means some result carries a flag
/// (timeout, canonical-labeling limit, failed check).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    Partial,
}

impl Status {
    pub fn partial_if(flag: bool) -> Self {
        if flag {
            Status::Partial
        } else {
            Status::Complete
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) | Failure::Data(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Data(e.into())
    }
}

pub fn usage(msg: impl fmt::Display) -> Failure {
    Failure::Usage(anyhow::anyhow!("{msg}"))
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_PARTIAL: u8 = 3;

pub fn execute(cli: Cli) -> Result<Status, Failure> {
    match cli.command {
        Command::Stats(a) => commands::stats::run(&a),
        Command::Uniqueness(a) => commands::uniqueness::run(&a),
        Command::Cascade(a) => commands::cascade::run(&a),
        Command::Sweep(a) => commands::sweep::run(&a),
        Command::Bench(a) => commands::bench::run(&a),
        Command::Correlate(a) => commands::correlate::run(&a),
        Command::Fetch(a) => commands::fetch::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
    }
}

/// Parses `args` (program name first), applies `--config`, runs the
/// command and maps the outcome to an exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<String> = args
        .into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect();
    let args = match config::merge(&Cli::command(), args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(Status::Complete) => ExitCode::SUCCESS,
        Ok(Status::Partial) => ExitCode::from(EXIT_PARTIAL),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
