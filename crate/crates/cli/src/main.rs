//! `qpower`: exact decisiveness measures, simulations and the reference
//! table from the command line.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "qpower",
    version,
    about = "Decisiveness indices and power measures for simple games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute exact measures for a game file.
    Analyze(AnalyzeArgs),
    /// Recompute the 29 four-player reference games.
    Table4(Table4Args),
    /// Monte Carlo estimates for the query, award and bargaining processes.
    Simulate(SimulateArgs),
    /// Build and measure the coalitional manipulation game of a profile.
    Manip(ManipArgs),
    /// Check a recursion identity or self-duality for a rescaling family.
    Check(CheckArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub game: PathBuf,
    /// Builtin family name or a rescaling file.
    #[arg(long, default_value = "uniform")]
    pub rescaling: String,
    /// Comma-separated: qbar, qstar, individual, marginal, semivalue,
    /// shapley, banzhaf, profile, classify.
    #[arg(long, value_delimiter = ',')]
    pub measures: Option<Vec<String>>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct Table4Args {
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Query,
    Awards,
    Bargain,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[arg(long, default_value = "uniform")]
    pub rescaling: String,
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exact computation instead of (bargain) or alongside (query, awards)
    /// the simulation.
    #[arg(long)]
    pub exact: bool,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Round cap per bargaining trial.
    #[arg(long, default_value_t = qpower::simulate::DEFAULT_MAX_ROUNDS)]
    pub max_rounds: u64,
    /// Also report awards divided by c_n.
    #[arg(long)]
    pub normalize: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ManipArgs {
    /// Ballots such as `abc,abc,bac,cba`.
    #[arg(long)]
    pub profile: String,
    /// Score of a second place, e.g. `2/5`.
    #[arg(long)]
    pub alpha: String,
    /// Largest deviating coalition searched.
    #[arg(long, default_value_t = qpower::manipulation::DEFAULT_DEVIATION_LIMIT)]
    pub max_deviators: usize,
    /// Write the resulting game as a game file.
    #[arg(long)]
    pub emit_game: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub family: String,
    /// standard_f, F_form, extended_f, mu_form or self_dual.
    #[arg(long, default_value = "standard_f")]
    pub form: String,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    /// Divide each row by its c_n first.
    #[arg(long)]
    pub normalized: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Analyze(a) => commands::analyze(&a).map(|_| true),
        Command::Table4(a) => commands::table4(&a).map(|_| true),
        Command::Simulate(a) => commands::simulate(&a).map(|_| true),
        Command::Manip(a) => commands::manip(&a).map(|_| true),
        Command::Check(a) => commands::check(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qpower: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
