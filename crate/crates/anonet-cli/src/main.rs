//! Pipeline CLI: composable commands over snapshot, edge, and tweet files,
//! driven by one declarative config. Exit codes: 0 success, 1 usage or
//! config error, 2 data error, 3 numerical non-convergence.

mod commands;
mod config;
mod context;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use anonet::classifier::ClassifierError;
use anonet::features::SentimentError;
use anonet::ingest::IngestError;
use anonet::lexicon::LexiconError;
use anonet::netgraph::NetgraphError;
use anonet::topics::TopicsError;

use config::PipelineConfig;
use context::RunContext;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("non-convergence: {0}")]
    NonConvergence(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Data(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<LexiconError> for CliError {
    fn from(e: LexiconError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<SentimentError> for CliError {
    fn from(e: SentimentError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<ClassifierError> for CliError {
    fn from(e: ClassifierError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<NetgraphError> for CliError {
    fn from(e: NetgraphError) -> Self {
        match e {
            NetgraphError::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<TopicsError> for CliError {
    fn from(e: TopicsError) -> Self {
        CliError::Data(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "anonet",
    version,
    about = "Identify affiliated accounts from profile snapshots, map influence over the follower graph, and extract tweet topics"
)]
struct Cli {
    /// Pipeline config file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the config's global seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the config's worker cap (0 = all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Override the config's output directory.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the keyword name filter to all snapshots.
    Filter,
    /// Label filter candidates with the positive-account rule.
    Label,
    /// Train the configured classifier on the labelled set.
    Train,
    /// Cross-validate the configured classifier.
    Evaluate,
    /// Score every snapshot account with the trained model.
    Classify,
    /// Run classifier-gated snowball expansion from the seeds.
    Expand,
    /// Export the influence graph's node and edge lists.
    Graph,
    /// Compute, normalize, fuse, and rank the four centrality measures.
    Centrality,
    /// Emit the top-k slice of the fused ranking.
    Rank,
    /// Creation/last-tweet histograms and the era fraction.
    Temporal,
    /// Induced subgraph of the top-k fused-score accounts.
    Subgraph,
    /// Per-influencer topic sweep and top-word reports.
    Topics,
    /// Bundle all artifacts into one human-readable summary.
    Report,
    /// Print the 62 feature names in vector order.
    Schema,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Filter => "filter",
            Command::Label => "label",
            Command::Train => "train",
            Command::Evaluate => "evaluate",
            Command::Classify => "classify",
            Command::Expand => "expand",
            Command::Graph => "graph",
            Command::Centrality => "centrality",
            Command::Rank => "rank",
            Command::Temporal => "temporal",
            Command::Subgraph => "subgraph",
            Command::Topics => "topics",
            Command::Report => "report",
            Command::Schema => "schema",
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if matches!(cli.command, Command::Schema) {
        return commands::report::cmd_schema();
    }
    let config_path = cli.config.ok_or_else(|| {
        CliError::Usage(format!("--config is required for `{}`", cli.command.name()))
    })?;
    let mut config = PipelineConfig::load(&config_path)?;
    // Flags override the config file.
    if let Some(seed) = cli.seed {
        config.seed = Some(seed);
    }
    if let Some(workers) = cli.workers {
        config.workers = workers;
    }
    if let Some(output_dir) = cli.output_dir {
        config.output_dir = output_dir;
    }

    let ctx = RunContext::new(config)?;
    if ctx.config.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(ctx.config.workers)
            .build_global()
            .map_err(|e| CliError::Config(format!("cannot set worker count: {e}")))?;
    }

    match cli.command {
        Command::Filter => commands::filtering::cmd_filter(&ctx),
        Command::Label => commands::filtering::cmd_label(&ctx),
        Command::Train => commands::modeling::cmd_train(&ctx),
        Command::Evaluate => commands::modeling::cmd_evaluate(&ctx),
        Command::Classify => commands::modeling::cmd_classify(&ctx),
        Command::Expand => commands::modeling::cmd_expand(&ctx),
        Command::Graph => commands::graphing::cmd_graph(&ctx),
        Command::Centrality => commands::graphing::cmd_centrality(&ctx),
        Command::Rank => commands::graphing::cmd_rank(&ctx),
        Command::Temporal => commands::graphing::cmd_temporal(&ctx),
        Command::Subgraph => commands::graphing::cmd_subgraph(&ctx),
        Command::Topics => commands::topic_cmd::cmd_topics(&ctx),
        Command::Report => commands::report::cmd_report(&ctx),
        Command::Schema => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
