//! Line-delimited JSON record streams.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::marker::PhantomData;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Iterator over one JSON record per line. Blank lines are skipped.
///
/// A line that fails to parse yields [`Error::Record`] carrying its 1-based
/// line number and iteration can continue past it. A read failure yields
/// [`Error::Io`] and ends the stream.
pub struct JsonLines<R, T> {
    reader: R,
    line: usize,
    buf: String,
    done: bool,
    label: String,
    _record: PhantomData<T>,
}

impl<R: BufRead, T: DeserializeOwned> JsonLines<R, T> {
    pub fn new(reader: R, label: impl Into<String>) -> Self {
        JsonLines {
            reader,
            line: 0,
            buf: String::new(),
            done: false,
            label: label.into(),
            _record: PhantomData,
        }
    }

    /// Line number of the most recently returned record.
    pub fn line(&self) -> usize {
        self.line
    }
}

impl<T: DeserializeOwned> JsonLines<BufReader<File>, T> {
    pub fn open(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(JsonLines::new(BufReader::new(file), path.display().to_string()))
    }
}

impl<R: BufRead, T: DeserializeOwned> Iterator for JsonLines<R, T> {
    type Item = Result<T>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => {
                    self.done = true;
                    return None;
                }
                Ok(_) => {
                    self.line += 1;
                    let text = self.buf.trim();
                    if text.is_empty() {
                        continue;
                    }
                    return Some(serde_json::from_str(text).map_err(|e| Error::Record {
                        line: self.line,
                        message: e.to_string(),
                    }));
                }
                Err(source) => {
                    self.done = true;
                    return Some(Err(Error::Io {
                        path: self.label.clone().into(),
                        source,
                    }));
                }
            }
        }
    }
}

/// Writes `record` as a single JSON line.
pub fn write_record<W: Write, T: Serialize>(out: &mut W, record: &T) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")
}

/// Serde adapter writing a `bool` as `0`/`1` and reading either form.
pub mod binary {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &bool, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(u8::from(*value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<bool, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bool(bool),
            Int(i64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Bool(b) => Ok(b),
            Raw::Int(0) => Ok(false),
            Raw::Int(1) => Ok(true),
            Raw::Int(n) => Err(de::Error::custom(format!("expected 0 or 1, found {n}"))),
        }
    }
}
