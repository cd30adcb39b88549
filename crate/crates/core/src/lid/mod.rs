//! Token-level language annotation.
//!
//! Every token gets exactly one of Hindi, English or Other:
//!
//! * Neutral-script tokens (punctuation, numerals) and Mixed-script tokens
//!   are Other.
//! * Devanagari tokens are Hindi, unless transliteration is enabled, in
//!   which case they are romanized and looked up like Roman tokens.
//! * Roman tokens are looked up in the wordlists or sent to an external
//!   tagger process.

mod external;
mod lexicon;
mod translit;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Article, LanguageTag, Script, Token};
use crate::error::{Error, Result};

pub use external::run_external_tagger;
pub use lexicon::{parse_wordlist, read_wordlist, LexiconTagger, DEFAULT_ENGLISH, DEFAULT_HINDI_ROMAN};
pub use translit::{transliterate_deva, CharMapRomanizer, Romanizer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaggerKind {
    #[default]
    Lexicon,
    External,
}

impl FromStr for TaggerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lexicon" => Ok(TaggerKind::Lexicon),
            "external" => Ok(TaggerKind::External),
            _ => Err(format!("tagger must be `lexicon` or `external`, got {s:?}")),
        }
    }
}

impl fmt::Display for TaggerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TaggerKind::Lexicon => "lexicon",
            TaggerKind::External => "external",
        })
    }
}

/// How to build a [`Tagger`]. Lexicon paths default to the shipped lists.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TaggerSpec {
    pub kind: TaggerKind,
    pub hindi_lexicon: Option<PathBuf>,
    pub english_lexicon: Option<PathBuf>,
    pub command: Option<String>,
    pub transliterate: bool,
}

impl TaggerSpec {
    /// Short identifier recorded in dataset provenance.
    pub fn id(&self) -> String {
        let base = match self.kind {
            TaggerKind::Lexicon => match (&self.hindi_lexicon, &self.english_lexicon) {
                (None, None) => "lexicon:shipped".to_string(),
                (h, e) => format!(
                    "lexicon:{}+{}",
                    h.as_ref().map_or("shipped".into(), |p| p.display().to_string()),
                    e.as_ref().map_or("shipped".into(), |p| p.display().to_string())
                ),
            },
            TaggerKind::External => {
                format!("external:{}", self.command.as_deref().unwrap_or(""))
            }
        };
        if self.transliterate {
            format!("{base}+translit")
        } else {
            base
        }
    }
}

enum Backend {
    Lexicon(LexiconTagger),
    External(String),
}

/// A ready-to-use tagger. Immutable once built.
pub struct Tagger {
    backend: Backend,
    romanizer: Option<Box<dyn Romanizer>>,
}

impl Tagger {
    pub fn from_spec(spec: &TaggerSpec) -> Result<Self> {
        let backend = match spec.kind {
            TaggerKind::Lexicon => {
                let hindi = match &spec.hindi_lexicon {
                    Some(path) => read_wordlist(path)?,
                    None => parse_wordlist(DEFAULT_HINDI_ROMAN),
                };
                let english = match &spec.english_lexicon {
                    Some(path) => read_wordlist(path)?,
                    None => parse_wordlist(DEFAULT_ENGLISH),
                };
                let tagger = LexiconTagger::new(hindi, english)?;
                Backend::Lexicon(tagger)
            }
            TaggerKind::External => match spec.command.as_deref().map(str::trim) {
                Some(cmd) if !cmd.is_empty() => Backend::External(cmd.to_string()),
                _ => {
                    return Err(Error::ExternalTagger {
                        batch: 0,
                        message: "no tagger command configured".into(),
                    })
                }
            },
        };
        Ok(Tagger {
            backend,
            romanizer: spec
                .transliterate
                .then(|| Box::new(CharMapRomanizer) as Box<dyn Romanizer>),
        })
    }

    pub fn lexicon(tagger: LexiconTagger) -> Self {
        Tagger {
            backend: Backend::Lexicon(tagger),
            romanizer: None,
        }
    }

    /// Replaces the romanization hook; `None` tags Devanagari as Hindi.
    pub fn with_romanizer(mut self, romanizer: Option<Box<dyn Romanizer>>) -> Self {
        self.romanizer = romanizer;
        self
    }

    /// Tags every token. Order is preserved; surfaces change only when a
    /// romanizer is set, and only for Devanagari tokens.
    pub fn tag_tokens(&self, mut tokens: Vec<Token>) -> Result<Vec<Token>> {
        let mut lookups: Vec<usize> = Vec::new();
        for (i, token) in tokens.iter_mut().enumerate() {
            match token.script {
                Script::Neutral | Script::Mixed => token.tag = Some(LanguageTag::Other),
                Script::Devanagari => match &self.romanizer {
                    None => token.tag = Some(LanguageTag::Hindi),
                    Some(romanizer) => {
                        *token = Token::new(romanizer.romanize(&token.surface));
                        lookups.push(i);
                    }
                },
                Script::Roman => lookups.push(i),
            }
        }

        match &self.backend {
            Backend::Lexicon(lexicon) => {
                for &i in &lookups {
                    tokens[i].tag = Some(lexicon.lookup(&tokens[i].surface));
                }
            }
            Backend::External(command) if !lookups.is_empty() => {
                let surfaces: Vec<&str> = lookups.iter().map(|&i| tokens[i].surface.as_str()).collect();
                let tags = run_external_tagger(&surfaces, command)?;
                for (&i, tag) in lookups.iter().zip(tags) {
                    tokens[i].tag = Some(tag);
                }
            }
            Backend::External(_) => {}
        }
        Ok(tokens)
    }

    /// Tags all tokens of a segmented article and caches sentence CMIs.
    /// External taggers see the whole article as one batch.
    pub fn tag_article(&self, mut article: Article) -> Result<Article> {
        let lengths: Vec<usize> = article
            .spans
            .iter()
            .flat_map(|span| span.sentences.iter().map(|s| s.tokens.len()))
            .collect();
        let tokens: Vec<Token> = article
            .spans
            .iter_mut()
            .flat_map(|span| span.sentences.iter_mut())
            .flat_map(|sentence| std::mem::take(&mut sentence.tokens))
            .collect();
        let mut tagged = self.tag_tokens(tokens)?.into_iter();
        let sentences = article.spans.iter_mut().flat_map(|span| span.sentences.iter_mut());
        for (sentence, n) in sentences.zip(lengths) {
            sentence.tokens = tagged.by_ref().take(n).collect();
            sentence.update_cmi()?;
        }
        Ok(article)
    }
}

/// Convenience wrapper over [`Tagger::tag_tokens`].
pub fn tag_tokens(tokens: Vec<Token>, tagger: &Tagger) -> Result<Vec<Token>> {
    tagger.tag_tokens(tokens)
}
