//! `kickout` command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 for usage or configuration errors, 2 when the
//! data cannot support the requested analysis.

mod commands;
mod config;
mod error;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{ConfigRoot, CONFIG_DIR_ENV};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "kickout", version, about = "Corner-three efficiency, movement clusters and the drive-and-kick game")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Court geometry: `nba`, `fiba`, or a path to a court JSON file.
    #[arg(long, global = true, default_value = "nba")]
    pub court: String,
    /// Seed for stochastic commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Shot-log format (inferred from the file extension when reading if omitted).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    pub force: bool,
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-zone efficiency, assist and contest gaps, distance-model decomposition.
    Summarize(commands::summarize::SummarizeArgs),
    /// Cluster pre-shot shooter/defender windows from tracking data.
    Cluster(commands::cluster::ClusterArgs),
    /// Solve the drive-and-kick game for one or more alphas.
    Game(commands::game::GameArgs),
    /// Generate a seeded synthetic shot log and tracking set.
    Synth(commands::synth::SynthArgs),
    /// Pass-origin table for corner threes.
    Passes(commands::passes::PassesArgs),
    /// Re-derive the default game configuration.
    Calibrate(commands::calibrate::CalibrateArgs),
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Vec<PathBuf>> {
    let threads = cli.global.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start thread pool: {e}")))?;
    pool.install(|| {
        let root = ConfigRoot::from_env();
        let g = &cli.global;
        match &cli.command {
            Command::Summarize(a) => commands::summarize::run(g, &root, a),
            Command::Cluster(a) => commands::cluster::run(g, &root, a),
            Command::Game(a) => commands::game::run(g, &root, a),
            Command::Synth(a) => commands::synth::run(g, &root, a),
            Command::Passes(a) => commands::passes::run(g, &root, a),
            Command::Calibrate(a) => commands::calibrate::run(g, &root, a),
        }
    })
}
