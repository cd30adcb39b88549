use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Record { line: usize, message: String },

    #[error("CMI is undefined for an empty token sequence")]
    EmptySentence,

    #[error("token {0:?} has no language tag")]
    Untagged(String),

    #[error("span {0} has no sentences")]
    EmptySpan(usize),

    #[error("invalid thresholds: {0}")]
    InvalidThresholds(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("span {span_index} of article {article_id:?} appears twice")]
    DuplicateSpan { article_id: String, span_index: usize },

    #[error("no annotated spans to fit on")]
    EmptyTrainingSet,

    #[error("missing strategy input: {0}")]
    MissingStatistic(String),

    #[error("invalid lexicon {name}: {message}")]
    Lexicon { name: String, message: String },

    #[error("external tagger failed on a batch of {batch} tokens: {message}")]
    ExternalTagger { batch: usize, message: String },

    #[error("evaluation input: {0}")]
    Evaluation(String),

    #[error("label lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
}
