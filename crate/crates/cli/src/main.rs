//! `steamnet`: build a per-game friendship-graph corpus, embed and cluster
//! the graphs, characterize the clusters, and emit report tables.

use clap::{Parser, Subcommand};
use steamnet_cli::config::PipelineConfig;
use steamnet_cli::errors::CliError;
use steamnet_cli::stages::{self, Stage};
use steamnet_cli::fixture;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "steamnet",
    version,
    about = "Friendship-graph corpus analysis: sample, induce per-game subgraphs, profile, embed, cluster, characterize, report"
)]
struct Cli {
    /// Pipeline configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the master seed from the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the output directory from the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for per-graph stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the base friendship graph (crawl or edge list) and prune
    /// inactive players.
    Sample,
    /// Select the top games and induce one subgraph per game.
    Subgraphs,
    /// Compute the structural profile of every game subgraph.
    Metrics,
    /// Turn subgraphs into subtree-token documents and train embeddings.
    Embed,
    /// Sweep k, then cluster the embeddings at the configured k.
    Cluster,
    /// Aggregate per-cluster metrics, tags, and genre distributions.
    Characterize,
    /// Emit the report bundle from the serialized artifacts.
    Report,
    /// Run every stage in order.
    Pipeline,
    /// Generate a synthetic fixture population plus a ready configuration.
    GenFixture {
        /// Directory to create the fixture in.
        #[arg(long, default_value = "fixture")]
        dir: PathBuf,
        #[arg(long, default_value_t = 2000)]
        players: usize,
        #[arg(long, default_value_t = 20)]
        games: usize,
        #[arg(long, default_value_t = 7)]
        fixture_seed: u64,
    },
}

fn load_config(cli: &Cli) -> Result<PipelineConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Usage("--config <file> is required for this command".into()))?;
    let mut cfg = PipelineConfig::load(path)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out_dir = out.clone();
    }
    if let Some(jobs) = cli.jobs {
        cfg.jobs = Some(jobs);
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Command::GenFixture {
        dir,
        players,
        games,
        fixture_seed,
    } = &cli.command
    {
        let cfg = fixture::generate(
            dir,
            &fixture::FixtureSpec {
                players: *players,
                games: *games,
                seed: *fixture_seed,
            },
        )?;
        println!(
            "fixture written to {}; run: steamnet --config {} pipeline",
            dir.display(),
            dir.join("config.json").display()
        );
        drop(cfg);
        return Ok(());
    }

    let cfg = load_config(&cli)?;
    if let Some(jobs) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {jobs} worker threads: {e}")))?;
    }
    match cli.command {
        Command::Sample => stages::run_stage(&cfg, Stage::Sample),
        Command::Subgraphs => stages::run_stage(&cfg, Stage::Subgraphs),
        Command::Metrics => stages::run_stage(&cfg, Stage::Metrics),
        Command::Embed => stages::run_stage(&cfg, Stage::Embed),
        Command::Cluster => stages::run_stage(&cfg, Stage::Cluster),
        Command::Characterize => stages::run_stage(&cfg, Stage::Characterize),
        Command::Report => stages::run_stage(&cfg, Stage::Report),
        Command::Pipeline => stages::run_pipeline(&cfg),
        Command::GenFixture { .. } => unreachable!("handled above"),
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are success; anything else is a
            // usage error.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
