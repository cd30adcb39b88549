//! Articles, spans, sentences and tokens.
//!
//! An article body is split into paragraphs at line breaks, each paragraph
//! into sentences, and each sentence into tokens. One paragraph becomes one
//! [`Span`], the unit that is later classified as code-mixed or not. Only
//! spans of two or more sentences can be code-mixed spans.

mod ingest;
mod script;
mod segment;
mod tokenize;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use ingest::{ingest_articles, ArticleReader, ArticleRecord};
pub use script::{is_devanagari_letter, is_latin_letter, script_of};
pub use segment::{segment_sentences, ParagraphBreak};
pub use tokenize::tokenize;

/// Token-level language label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LanguageTag {
    #[serde(rename = "hi")]
    Hindi,
    #[serde(rename = "en")]
    English,
    /// Language-independent tokens: named entities, numbers, punctuation,
    /// abbreviations, mentions, hashtags, and anything the tagger declines.
    #[serde(rename = "other")]
    Other,
}

impl LanguageTag {
    pub const ALL: [LanguageTag; 3] = [LanguageTag::Hindi, LanguageTag::English, LanguageTag::Other];

    pub fn as_str(self) -> &'static str {
        match self {
            LanguageTag::Hindi => "hi",
            LanguageTag::English => "en",
            LanguageTag::Other => "other",
        }
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LanguageTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hi" => Ok(LanguageTag::Hindi),
            "en" => Ok(LanguageTag::English),
            "other" => Ok(LanguageTag::Other),
            _ => Err(format!("unknown language tag {s:?}")),
        }
    }
}

/// Writing system of a token, derived from its code points alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Script {
    Devanagari,
    Roman,
    /// Both Devanagari and Latin letters.
    Mixed,
    /// No Devanagari or Latin letters: punctuation, numerals, symbols.
    Neutral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub script: Script,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<LanguageTag>,
}

impl Token {
    /// Untagged token with its script classified from `surface`.
    pub fn new(surface: impl Into<String>) -> Self {
        let surface = surface.into();
        let script = script_of(&surface);
        Token {
            surface,
            script,
            tag: None,
        }
    }

    pub fn tagged(surface: impl Into<String>, tag: LanguageTag) -> Self {
        Token {
            tag: Some(tag),
            ..Token::new(surface)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub tokens: Vec<Token>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cmi: Option<f64>,
}

impl Sentence {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        let tokens = tokenize(&text);
        Sentence {
            text,
            tokens,
            cmi: None,
        }
    }

    /// Caches the CMI of the (tagged) tokens.
    pub fn update_cmi(&mut self) -> crate::Result<f64> {
        let cmi = crate::metrics::cmi_score(&self.tokens)?;
        self.cmi = Some(cmi);
        Ok(cmi)
    }
}

/// A paragraph: consecutive sentences between line-break boundaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Span {
    pub index: usize,
    pub eligible: bool,
    pub sentences: Vec<Sentence>,
}

impl Span {
    pub fn new(index: usize, sentences: Vec<Sentence>) -> Self {
        Span {
            index,
            eligible: sentences.len() > 1,
            sentences,
        }
    }

    /// Sentences joined by single spaces.
    pub fn text(&self) -> String {
        let parts: Vec<&str> = self.sentences.iter().map(|s| s.text.as_str()).collect();
        parts.join(" ")
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Article {
    pub id: String,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub date: Option<String>,
    pub body: String,
    #[serde(default)]
    pub spans: Vec<Span>,
}

impl Article {
    pub fn new(id: impl Into<String>, source: impl Into<String>, body: impl Into<String>) -> Self {
        Article {
            id: id.into(),
            source: source.into(),
            title: None,
            category: None,
            date: None,
            body: body.into(),
            spans: Vec::new(),
        }
    }

    /// Segments the body with the given paragraph rule and populates spans.
    pub fn segment(self, mode: ParagraphBreak) -> Article {
        let groups = segment_sentences(&self.body, mode);
        build_spans(self, groups)
    }

    pub fn sentence_count(&self) -> usize {
        self.spans.iter().map(|s| s.sentences.len()).sum()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.spans.iter().flat_map(|s| s.tokens())
    }
}

/// One span per paragraph group, in order. Any previous spans are replaced.
pub fn build_spans(mut article: Article, sentence_groups: Vec<Vec<String>>) -> Article {
    article.spans = sentence_groups
        .into_iter()
        .filter(|group| !group.is_empty())
        .enumerate()
        .map(|(index, group)| Span::new(index, group.into_iter().map(Sentence::new).collect()))
        .collect();
    article
}
