//! Pipeline configuration: a flat TOML file overlaid by command-line flags.
//!
//! ```toml
//! tagger = "lexicon"            # or "external"
//! tagger_command = "my-lid --stdio"
//! hindi_lexicon = "lists/hi.txt" # relative to this file
//! english_lexicon = "lists/en.txt"
//! transliterate = false
//! paragraph_break = "blank"     # or "newline"
//! grid = "0:50:1,0:0.5:0.025"
//! strategy = "mdg"
//! donor = "AAP"
//! batch_size = 256
//!
//! [categories]                  # merged over the built-in source map
//! BBC = "news"
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::Context;
use mct_core::corpus::ParagraphBreak;
use mct_core::lid::{TaggerKind, TaggerSpec};
use mct_core::thresholds::{GridSpec, StrategyKind};
use serde::{Deserialize, Serialize};

use crate::args::GlobalArgs;
use crate::failure::usage;

/// Which of the two source pools an article belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Speech,
    News,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Speech => "speech",
            Category::News => "news",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sources known without any configuration.
pub const DEFAULT_CATEGORIES: [(&str, Category); 7] = [
    ("AAP", Category::Speech),
    ("INC", Category::Speech),
    ("MKB", Category::Speech),
    ("PIB", Category::Speech),
    ("PMS", Category::Speech),
    ("DB", Category::News),
    ("DJ", Category::News),
];

pub const DEFAULT_BATCH_SIZE: usize = 256;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    tagger: Option<TaggerKind>,
    tagger_command: Option<String>,
    hindi_lexicon: Option<PathBuf>,
    english_lexicon: Option<PathBuf>,
    transliterate: Option<bool>,
    paragraph_break: Option<ParagraphBreak>,
    grid: Option<String>,
    strategy: Option<StrategyKind>,
    donor: Option<String>,
    batch_size: Option<usize>,
    #[serde(default)]
    categories: BTreeMap<String, Category>,
}

/// Fully resolved settings shared by all subcommands.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub tagger: TaggerSpec,
    pub grid: GridSpec,
    pub strategy: StrategyKind,
    pub donor: Option<String>,
    pub paragraph_break: ParagraphBreak,
    pub categories: BTreeMap<String, Category>,
    pub batch_size: usize,
}

impl PipelineConfig {
    /// Reads `--config` if given and applies the flags on top.
    pub fn resolve(flags: &GlobalArgs) -> anyhow::Result<Self> {
        let (file, base) = match &flags.config {
            Some(path) => (read_config(path)?, path.parent().map(Path::to_path_buf)),
            None => (ConfigFile::default(), None),
        };
        let relative = |p: PathBuf| match &base {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p,
        };

        let tagger = TaggerSpec {
            kind: flags.tagger.or(file.tagger).unwrap_or_default(),
            hindi_lexicon: flags.hindi_lexicon.clone().or(file.hindi_lexicon.map(relative)),
            english_lexicon: flags.english_lexicon.clone().or(file.english_lexicon.map(relative)),
            command: flags.tagger_command.clone().or(file.tagger_command),
            transliterate: flags.transliterate.or(file.transliterate).unwrap_or(false),
        };
        if tagger.kind == TaggerKind::External && tagger.command.as_deref().is_none_or(|c| c.trim().is_empty()) {
            return Err(usage("the external tagger needs --tagger-command or `tagger_command`"));
        }

        let grid = match flags.grid.as_deref().or(file.grid.as_deref()) {
            Some(text) => text
                .parse::<GridSpec>()
                .map_err(|e| usage(format!("bad grid {text:?}: {e}")))?,
            None => GridSpec::default(),
        };
        grid.cell_count().map_err(|e| usage(e.to_string()))?;

        let batch_size = flags.batch_size.or(file.batch_size).unwrap_or(DEFAULT_BATCH_SIZE);
        if batch_size == 0 {
            return Err(usage("batch size must be at least 1"));
        }

        let mut categories: BTreeMap<String, Category> = DEFAULT_CATEGORIES
            .iter()
            .map(|&(name, category)| (name.to_string(), category))
            .collect();
        categories.extend(file.categories);

        Ok(PipelineConfig {
            tagger,
            grid,
            strategy: flags.strategy.or(file.strategy).unwrap_or(StrategyKind::Mdg),
            donor: flags.donor.clone().or(file.donor),
            paragraph_break: flags.paragraph_break.or(file.paragraph_break).unwrap_or_default(),
            categories,
            batch_size,
        })
    }

    pub fn category_of(&self, source: &str) -> anyhow::Result<Category> {
        self.categories.get(source).copied().ok_or_else(|| {
            usage(format!(
                "source {source:?} has no category; add it under [categories] in the config file"
            ))
        })
    }
}

fn read_config(path: &Path) -> anyhow::Result<ConfigFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| usage(format!("{e}")))
        .with_context(|| format!("invalid config {}", path.display()))
}

/// Parses `ALPHA,BETA`.
pub fn parse_pair(text: &str) -> anyhow::Result<mct_core::metrics::ThresholdPair> {
    let bad = || usage(format!("expected ALPHA,BETA, found {text:?}"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let alpha: f64 = a.trim().parse().map_err(|_| bad())?;
    let beta: f64 = b.trim().parse().map_err(|_| bad())?;
    mct_core::metrics::ThresholdPair::new(alpha, beta).map_err(|e| usage(e.to_string()))
}
