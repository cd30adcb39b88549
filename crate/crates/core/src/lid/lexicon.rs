use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::corpus::LanguageTag;
use crate::error::{Error, Result};

pub const DEFAULT_HINDI_ROMAN: &str = include_str!("../../lexicons/hindi_roman.txt");
pub const DEFAULT_ENGLISH: &str = include_str!("../../lexicons/english.txt");

/// Wordlist lookup for romanized tokens.
///
/// A form found only in the Hindi list is Hindi, only in the English list is
/// English. Forms in both lists or in neither are tagged Other.
#[derive(Debug, Clone)]
pub struct LexiconTagger {
    hindi_roman: HashSet<String>,
    english: HashSet<String>,
}

impl LexiconTagger {
    pub fn new(hindi_roman: HashSet<String>, english: HashSet<String>) -> Result<Self> {
        if hindi_roman.is_empty() {
            return Err(Error::Lexicon {
                name: "hindi_roman".into(),
                message: "wordlist is empty".into(),
            });
        }
        if english.is_empty() {
            return Err(Error::Lexicon {
                name: "english".into(),
                message: "wordlist is empty".into(),
            });
        }
        Ok(LexiconTagger { hindi_roman, english })
    }

    /// The wordlists shipped with the crate.
    pub fn shipped() -> Self {
        LexiconTagger::from_lists(DEFAULT_HINDI_ROMAN, DEFAULT_ENGLISH).expect("shipped lexicons are non-empty")
    }

    pub fn from_lists(hindi_roman: &str, english: &str) -> Result<Self> {
        LexiconTagger::new(parse_wordlist(hindi_roman), parse_wordlist(english))
    }

    pub fn load(hindi_roman: &Path, english: &Path) -> Result<Self> {
        LexiconTagger::new(read_wordlist(hindi_roman)?, read_wordlist(english)?)
    }

    pub fn lookup(&self, word: &str) -> LanguageTag {
        let lower;
        let key = if word.chars().any(char::is_uppercase) {
            lower = word.to_lowercase();
            lower.as_str()
        } else {
            word
        };
        match (self.hindi_roman.contains(key), self.english.contains(key)) {
            (true, false) => LanguageTag::Hindi,
            (false, true) => LanguageTag::English,
            _ => LanguageTag::Other,
        }
    }

    pub fn hindi_roman(&self) -> &HashSet<String> {
        &self.hindi_roman
    }

    pub fn english(&self) -> &HashSet<String> {
        &self.english
    }
}

/// Reads a wordlist file; an empty list is an error naming the file.
pub fn read_wordlist(path: &Path) -> Result<HashSet<String>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let words = parse_wordlist(&text);
    if words.is_empty() {
        return Err(Error::Lexicon {
            name: path.display().to_string(),
            message: "wordlist is empty".into(),
        });
    }
    Ok(words)
}

/// One form per line; `#` lines and blank lines are skipped.
pub fn parse_wordlist(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}
