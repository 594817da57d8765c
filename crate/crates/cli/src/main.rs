//! `hboot`: command-line experiments for the H-bootstrap process.
//!
//! Exit codes: 0 pass or stabilized, 1 I/O or parse failure, 2 verification
//! failure, 3 round limit reached, 4 usage error.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "hboot", version, about = "H-bootstrap percolation experiments")]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write the experiment configuration to this file, for `replay`.
    #[arg(long, global = true)]
    save_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// A complete, replayable description of one invocation.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Run the process and write its trajectory as JSON.
    Run(RunArgs),
    /// Maximum running time over all starts on `n` vertices or a graph6 stream.
    Search(SearchArgs),
    /// Check a claim and write a certificate.
    Verify(VerifyArgs),
    /// Write a generated graph as graph6.
    Construct(ConstructArgs),
    /// Run the process on seeded random starting graphs.
    Sweep(SweepArgs),
    /// Re-run a saved configuration.
    Replay(ReplayArgs),
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RunArgs {
    /// graph6 file holding the pattern H.
    #[arg(long)]
    pub pattern: PathBuf,
    /// graph6 file holding the starting graph.
    #[arg(long)]
    pub start: PathBuf,
    /// Round limit; defaults to C(n,2) + 1.
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Use the frontier engine (same output, fewer pair tests).
    #[arg(long)]
    pub frontier: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SearchArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    /// Number of vertices; required without a stream, at most 7.
    #[arg(long)]
    pub n: Option<usize>,
    /// graph6 file of starting graphs, one per line.
    #[arg(long)]
    pub stream: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub check: Check,
}

#[derive(Subcommand, Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    /// No non-edge of the graph completes a copy of the pattern.
    Stability {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The process on the graph itself ends at the complete graph.
    SelfPercolation {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The outer trajectory adds exactly the inner trajectory's edges, round by round.
    Simulation {
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        inner: PathBuf,
        /// Layout JSON naming the inner vertex set.
        #[arg(long)]
        subset: PathBuf,
        /// Group of the layout holding the inner vertices.
        #[arg(long, default_value = "base")]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random starts on 2t vertices stay within the tree bounds.
    TreeBound {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Some edge e has kappa(H - e) <= 2 and H percolates to a clique.
    GirthApplicable {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every graph of a trajectory is bipartite.
    BipartiteRounds {
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// params t, n
    StarLower,
    /// params k
    CliquePendant,
    /// params k
    GluedCliques,
    /// params n; --pattern
    Min2max3,
    /// params n; --pattern
    Min2max3Bipartite,
    ChordCycle,
    HPrime,
    CounterexampleH,
    /// --start (bipartite base graph)
    CounterexampleStart,
    /// params t
    HtGadget,
    /// params t; --start (base graph)
    HtStart,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ConstructArgs {
    pub family: Family,
    /// Comma-separated `key=value` integers, e.g. `t=4,n=9`.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
    /// Pattern for the layered families.
    #[arg(long)]
    pub pattern: Option<PathBuf>,
    /// Base graph for the gadget starting graphs.
    #[arg(long)]
    pub start: Option<PathBuf>,
    /// graph6 output; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the named vertex groups as JSON.
    #[arg(long)]
    pub layout: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SweepArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge probability; drawn per sample from [0.05, 0.5) when absent.
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ReplayArgs {
    /// Configuration written by `--save-config`.
    pub config: PathBuf,
}

/// What a successful command reports through the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Failed,
    Truncated,
}

/// An invalid request, as opposed to unreadable input.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<io::Input>().is_some() {
        return 1;
    }
    if err.downcast_ref::<Usage>().is_some() {
        return 4;
    }
    match err.downcast_ref::<hboot::Error>() {
        Some(hboot::Error::Argument(_) | hboot::Error::Refused(_)) => 4,
        _ => 1,
    }
}

fn execute(config: ExperimentConfig, save: Option<PathBuf>) -> Result<Outcome> {
    if let Some(path) = save {
        io::write_json(&serde_json::to_value(&config)?, Some(&path))?;
    }
    if let Some(jobs) = config.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("configuring worker threads")?;
    }
    match config.command {
        Command::Run(a) => commands::run(&a),
        Command::Search(a) => commands::search(&a),
        Command::Verify(a) => commands::verify(&a.check),
        Command::Construct(a) => commands::construct(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Replay(a) => {
            let value = io::read_json(&a.config)?;
            let saved: ExperimentConfig = serde_json::from_value(value)
                .map_err(|e| io::input_error(e, format!("{}: not an experiment configuration", a.config.display())))?;
            if matches!(saved.command, Command::Replay(_)) {
                return Err(Usage("a configuration cannot replay another configuration".into()).into());
            }
            execute(saved, None)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    let config = ExperimentConfig {
        command: cli.command,
        jobs: cli.jobs,
    };
    match execute(config, cli.save_config) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(2),
        Ok(Outcome::Truncated) => ExitCode::from(3),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
