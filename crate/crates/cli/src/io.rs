//! File plumbing shared by the subcommands.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use mct_core::corpus::Article;
use mct_core::jsonl::{write_record, JsonLines};
use mct_core::thresholds::Annotation;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A buffered output file, or standard output for `-`.
pub struct Output {
    inner: Box<dyn Write>,
    is_stdout: bool,
}

impl Output {
    pub fn create(path: &Path) -> anyhow::Result<Self> {
        if path.as_os_str() == "-" {
            return Ok(Output {
                inner: Box::new(BufWriter::new(io::stdout().lock())),
                is_stdout: true,
            });
        }
        let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        Ok(Output {
            inner: Box::new(BufWriter::new(file)),
            is_stdout: false,
        })
    }

    pub fn is_stdout(&self) -> bool {
        self.is_stdout
    }

    pub fn record<T: Serialize>(&mut self, record: &T) -> io::Result<()> {
        write_record(&mut self.inner, record)
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Prints a report where it will not mix with record output.
pub fn print_report(to_stderr: bool, text: &str) {
    if to_stderr {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
}

/// Streams records from a line-delimited file; any bad record is fatal.
pub fn read_records<T: DeserializeOwned>(path: &Path) -> anyhow::Result<impl Iterator<Item = anyhow::Result<T>>> {
    let label = path.display().to_string();
    let records = JsonLines::<BufReader<File>, T>::open(path)?;
    Ok(records.map(move |r| r.with_context(|| label.clone())))
}

/// Streams tagged articles as written by `mct tag`.
pub fn read_tagged(path: &Path) -> anyhow::Result<impl Iterator<Item = anyhow::Result<Article>>> {
    read_records(path)
}

pub fn read_annotations(path: &Path) -> anyhow::Result<Vec<Annotation>> {
    read_records(path)?.collect()
}

/// Writes a value as pretty JSON.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// Maps `work` over `items` in parallel, `batch` items at a time, and hands
/// the results to `sink` in input order. Memory stays bounded by one batch.
pub fn for_each_ordered<I, T, U, F, S>(items: I, batch: usize, work: F, mut sink: S) -> anyhow::Result<()>
where
    I: Iterator<Item = T>,
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync,
    S: FnMut(U) -> anyhow::Result<()>,
{
    let mut items = items.peekable();
    while items.peek().is_some() {
        let chunk: Vec<T> = items.by_ref().take(batch).collect();
        let results: Vec<U> = chunk.into_par_iter().map(&work).collect();
        for result in results {
            sink(result)?;
        }
    }
    Ok(())
}
