pub mod agree;
pub mod annotate;
pub mod detect;
pub mod eval;
pub mod fit;
pub mod score;
pub mod stats;
pub mod tag;

use crate::args::{Cli, Command};
use crate::config::PipelineConfig;
use crate::failure::usage;

pub fn run(cli: &Cli) -> anyhow::Result<()> {
    let cfg = PipelineConfig::resolve(&cli.global)?;
    if let Some(seed) = cli.global.seed {
        log::debug!("--seed {seed} ignored: the pipeline is deterministic");
    }
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| usage(format!("cannot set up {threads} worker threads: {e}")))?;
    }
    match &cli.command {
        Command::Tag(args) => tag::run(&cfg, args),
        Command::Annotate(args) => annotate::run(args),
        Command::Fit(args) => fit::run(&cfg, args),
        Command::Detect(args) => detect::run(&cfg, args),
        Command::Eval(args) => eval::run(&cfg, args),
        Command::Agree(args) => agree::run(args),
        Command::Stats(args) => stats::run(&cfg, args),
        Command::Score(args) => score::run(&cfg, args),
    }
}
