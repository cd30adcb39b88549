use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::script::{is_danda, is_word_char};

/// What separates two paragraphs in an article body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParagraphBreak {
    /// One or more blank lines.
    #[default]
    Blank,
    /// Every line break.
    Newline,
}

impl FromStr for ParagraphBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "blank" => Ok(ParagraphBreak::Blank),
            "newline" => Ok(ParagraphBreak::Newline),
            _ => Err(format!("paragraph break must be `blank` or `newline`, got {s:?}")),
        }
    }
}

impl fmt::Display for ParagraphBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParagraphBreak::Blank => "blank",
            ParagraphBreak::Newline => "newline",
        })
    }
}

const CLOSERS: &[char] = &['"', '\'', '”', '’', ')', ']', '}', '»'];

/// Splits a body into paragraphs and each paragraph into sentences.
///
/// Sentences end at `।`, `॥`, `!`, `?` or `.`, optionally followed by
/// closing quotes or brackets. A `.` does not end a sentence when its word
/// contains another `.` (`U.S.`) or is a single capital letter (`J.`).
/// Dandas also split inside a whitespace-delimited chunk. Whitespace inside
/// a sentence is collapsed to single spaces.
pub fn segment_sentences(body: &str, mode: ParagraphBreak) -> Vec<Vec<String>> {
    paragraphs(body, mode)
        .into_iter()
        .map(|p| split_paragraph(&p))
        .filter(|sentences| !sentences.is_empty())
        .collect()
}

fn paragraphs(body: &str, mode: ParagraphBreak) -> Vec<String> {
    let mut out = Vec::new();
    match mode {
        ParagraphBreak::Newline => {
            out.extend(body.lines().filter(|l| !l.trim().is_empty()).map(str::to_owned));
        }
        ParagraphBreak::Blank => {
            let mut current: Vec<&str> = Vec::new();
            for line in body.lines() {
                if line.trim().is_empty() {
                    if !current.is_empty() {
                        out.push(current.join("\n"));
                        current.clear();
                    }
                } else {
                    current.push(line);
                }
            }
            if !current.is_empty() {
                out.push(current.join("\n"));
            }
        }
    }
    out
}

fn split_paragraph(paragraph: &str) -> Vec<String> {
    let mut sentences = Vec::new();
    let mut current: Vec<&str> = Vec::new();

    for chunk in paragraph.split_whitespace() {
        let mut rest = chunk;
        // Dandas split even without a following space.
        while let Some(cut) = inner_danda_cut(rest) {
            current.push(&rest[..cut]);
            sentences.push(current.join(" "));
            current.clear();
            rest = &rest[cut..];
        }
        current.push(rest);
        if ends_sentence(rest) {
            sentences.push(current.join(" "));
            current.clear();
        }
    }
    if !current.is_empty() {
        sentences.push(current.join(" "));
    }
    sentences
}

/// Byte offset just past a danda (and any closers after it) when more
/// text follows inside the same chunk.
fn inner_danda_cut(chunk: &str) -> Option<usize> {
    let (pos, c) = chunk.char_indices().find(|&(_, c)| is_danda(c))?;
    let mut cut = pos + c.len_utf8();
    for c in chunk[cut..].chars() {
        if is_danda(c) || CLOSERS.contains(&c) {
            cut += c.len_utf8();
        } else {
            break;
        }
    }
    (cut < chunk.len()).then_some(cut)
}

fn ends_sentence(chunk: &str) -> bool {
    let trimmed = chunk.trim_end_matches(CLOSERS);
    let Some(last) = trimmed.chars().last() else {
        return false;
    };
    match last {
        '!' | '?' => true,
        c if is_danda(c) => true,
        '.' => !abbreviation_dot(trimmed),
        _ => false,
    }
}

/// `chunk` ends with `.`; true when that dot belongs to an abbreviation.
fn abbreviation_dot(chunk: &str) -> bool {
    let word = chunk
        .trim_end_matches('.')
        .trim_start_matches(|c: char| !is_word_char(c));
    if word.contains('.') {
        return true;
    }
    let mut chars = word.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if c.is_uppercase())
}
