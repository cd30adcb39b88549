use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::Deserialize;
use unicode_normalization::UnicodeNormalization;

use super::Article;
use crate::error::{Error, Result};
use crate::jsonl::JsonLines;

/// Input article record. Unknown keys are ignored.
#[derive(Debug, Clone, Deserialize)]
pub struct ArticleRecord {
    pub id: String,
    #[serde(default)]
    pub source: Option<String>,
    pub body: String,
    #[serde(default)]
    pub title: Option<String>,
    #[serde(default)]
    pub category: Option<String>,
    #[serde(default)]
    pub date: Option<String>,
}

/// Streams [`Article`]s from line-delimited records, NFC-normalized.
///
/// Malformed records come out as [`Error::Record`] and the stream goes on;
/// read failures come out as [`Error::Io`] and end it.
pub struct ArticleReader<R> {
    records: JsonLines<R, ArticleRecord>,
    source_name: Option<String>,
}

impl<R: BufRead> ArticleReader<R> {
    pub fn new(reader: R, label: &str, source_name: Option<&str>) -> Self {
        ArticleReader {
            records: JsonLines::new(reader, label),
            source_name: source_name.map(nfc),
        }
    }

    fn convert(&self, record: ArticleRecord) -> Result<Article> {
        let line = self.records.line();
        let source = match (record.source.as_deref().map(nfc), &self.source_name) {
            (Some(s), Some(expected)) if &s != expected => {
                return Err(Error::Record {
                    line,
                    message: format!("source {s:?} does not match expected {expected:?}"),
                })
            }
            (Some(s), _) => s,
            (None, Some(expected)) => expected.clone(),
            (None, None) => {
                return Err(Error::Record {
                    line,
                    message: "missing field `source`".into(),
                })
            }
        };
        if record.id.trim().is_empty() {
            return Err(Error::Record {
                line,
                message: "empty `id`".into(),
            });
        }
        Ok(Article {
            id: nfc(&record.id),
            source,
            title: record.title.as_deref().map(nfc),
            category: record.category.as_deref().map(nfc),
            date: record.date,
            body: nfc(&record.body),
            spans: Vec::new(),
        })
    }
}

impl<R: BufRead> Iterator for ArticleReader<R> {
    type Item = Result<Article>;

    fn next(&mut self) -> Option<Self::Item> {
        let record = self.records.next()?;
        Some(record.and_then(|r| self.convert(r)))
    }
}

/// Opens a line-delimited article file. When `source_name` is given it
/// fills in records without a `source` and rejects records naming another.
pub fn ingest_articles(path: &Path, source_name: Option<&str>) -> Result<ArticleReader<BufReader<File>>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(ArticleReader::new(
        BufReader::new(file),
        &path.display().to_string(),
        source_name,
    ))
}

fn nfc(s: &str) -> String {
    s.nfc().collect()
}
