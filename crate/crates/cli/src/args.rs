use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};
use mct_core::corpus::ParagraphBreak;
use mct_core::lid::TaggerKind;
use mct_core::thresholds::StrategyKind;

#[derive(Debug, Parser)]
#[command(
    name = "mct",
    version,
    about = "Find multi-sentence Hindi/English code-mixed spans in article corpora"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

/// Pipeline settings. Each overrides the matching key of `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// TOML configuration file
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Token language tagger: lexicon or external
    #[arg(long, global = true, value_name = "KIND")]
    pub tagger: Option<TaggerKind>,

    /// Shell command for the external tagger
    #[arg(long, global = true, value_name = "CMD")]
    pub tagger_command: Option<String>,

    /// Romanized Hindi wordlist for the lexicon tagger
    #[arg(long, global = true, value_name = "FILE")]
    pub hindi_lexicon: Option<PathBuf>,

    /// English wordlist for the lexicon tagger
    #[arg(long, global = true, value_name = "FILE")]
    pub english_lexicon: Option<PathBuf>,

    /// Romanize Devanagari tokens before tagging instead of tagging them Hindi
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    pub transliterate: Option<bool>,

    /// Paragraph boundary: blank (empty line) or newline
    #[arg(long, global = true, value_name = "MODE")]
    pub paragraph_break: Option<ParagraphBreak>,

    /// Threshold grid as alow:ahigh:astep,blow:bhigh:bstep
    #[arg(long, global = true, value_name = "GRID")]
    pub grid: Option<String>,

    /// Threshold strategy: la, ga, alg, sdg or mdg
    #[arg(long, global = true, value_name = "KIND")]
    pub strategy: Option<StrategyKind>,

    /// Donor pool for the sdg strategy (a source, a category or "combined")
    #[arg(long, global = true, value_name = "POOL")]
    pub donor: Option<String>,

    /// Articles handed to the worker pool at a time
    #[arg(long, global = true, value_name = "N")]
    pub batch_size: Option<usize>,

    /// Worker threads (default: one per core)
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Accepted for interface stability; the pipeline is deterministic
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    /// More log output (repeat for debug)
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Segment and language-tag raw articles
    Tag(TagArgs),
    /// Label spans interactively, or import labels in batch
    Annotate(AnnotateArgs),
    /// Fit thresholds per source, per category and on the combined pool
    Fit(FitArgs),
    /// Classify every span and emit the code-mixed ones as a dataset
    Detect(DetectArgs),
    /// Score predictions against labels
    Eval(EvalArgs),
    /// Annotator agreement between two label files
    Agree(AgreeArgs),
    /// Corpus statistics of a tagged file
    Stats(StatsArgs),
    /// Per-span dual-MEC scores under one threshold pair
    Score(ScoreArgs),
}

#[derive(Debug, Args)]
pub struct TagArgs {
    /// Article files (one JSON record per line)
    #[arg(short, long = "input", required = true, value_name = "FILE")]
    pub inputs: Vec<PathBuf>,

    /// Source name for records that lack one
    #[arg(long, value_name = "NAME")]
    pub source: Option<String>,

    /// Tagged article file, or - for standard output
    #[arg(short, long, value_name = "FILE")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnnotateArgs {
    /// Tagged article file
    #[arg(short, long, value_name = "FILE")]
    pub input: PathBuf,

    /// Annotation file; existing labels are kept and skipped
    #[arg(short, long, value_name = "FILE")]
    pub output: PathBuf,

    /// Append labels from this file instead of prompting
    #[arg(long = "import", value_name = "FILE")]
    pub import: Option<PathBuf>,

    /// Force ANSI colors on or off (default: on for terminals without NO_COLOR)
    #[arg(long, value_name = "BOOL")]
    pub color: Option<bool>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Tagged article file
    #[arg(short, long, value_name = "FILE")]
    pub input: PathBuf,

    /// Annotation file
    #[arg(short, long, value_name = "FILE")]
    pub annotations: PathBuf,

    /// Fitted thresholds (JSON)
    #[arg(short, long, value_name = "FILE")]
    pub output: PathBuf,

    /// Also write each pool's accuracy surface as a TSV table here
    #[arg(long, value_name = "DIR")]
    pub surface_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// Tagged article file
    #[arg(short, long, value_name = "FILE")]
    pub input: PathBuf,

    /// Fitted thresholds from `mct fit`
    #[arg(short, long, value_name = "FILE", required_unless_present = "thresholds")]
    pub fits: Option<PathBuf>,

    /// Apply one fixed pair ALPHA,BETA to every source instead of a strategy
    #[arg(long, value_name = "ALPHA,BETA", conflicts_with = "fits")]
    pub thresholds: Option<String>,

    /// Dataset file, or - for standard output
    #[arg(short, long, value_name = "FILE")]
    pub output: PathBuf,

    /// Write the summary as JSON here
    #[arg(long, value_name = "FILE")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Tagged article file (span counts and sources)
    #[arg(short, long, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Joined prediction/label records
    #[arg(short, long, value_name = "FILE", conflicts_with_all = ["fits", "annotations"])]
    pub predictions: Option<PathBuf>,

    /// Fitted thresholds, to compare strategies on annotated spans
    #[arg(short, long, value_name = "FILE", requires_all = ["annotations", "input"])]
    pub fits: Option<PathBuf>,

    /// Annotation file paired with --fits
    #[arg(short, long, value_name = "FILE", requires = "fits")]
    pub annotations: Option<PathBuf>,

    /// Strategies to compare (default: all five)
    #[arg(long, value_delimiter = ',', value_name = "KINDS")]
    pub strategies: Vec<StrategyKind>,

    /// Write the per-span predictions of every strategy here
    #[arg(long, value_name = "FILE")]
    pub emit_predictions: Option<PathBuf>,

    /// Write the reports as JSON here
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AgreeArgs {
    /// First annotator's labels
    pub first: PathBuf,

    /// Second annotator's labels
    pub second: PathBuf,

    /// Tagged article file, for a per-source breakdown
    #[arg(short, long, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Write the tallies as JSON here
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Tagged article file
    #[arg(short, long, value_name = "FILE")]
    pub input: PathBuf,

    /// Write the statistics as JSON here
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Tagged article file
    #[arg(short, long, value_name = "FILE")]
    pub input: PathBuf,

    /// Threshold pair ALPHA,BETA
    #[arg(long, value_name = "ALPHA,BETA")]
    pub thresholds: String,

    /// Score file, or - for standard output
    #[arg(short, long, value_name = "FILE")]
    pub output: PathBuf,
}
