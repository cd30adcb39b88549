//! Single-operator binary labeling of multi-sentence spans.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs::OpenOptions;
use std::io::{BufRead, BufWriter, IsTerminal, Write};
use std::path::Path;

use anyhow::{bail, Context};
use mct_core::corpus::{LanguageTag, Span};
use mct_core::jsonl::write_record;
use mct_core::thresholds::Annotation;

use crate::args::AnnotateArgs;
use crate::failure::usage;
use crate::io::{read_annotations, read_tagged};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reply {
    Label(bool),
    Skip,
    Quit,
}

pub fn parse_reply(line: &str) -> Option<Reply> {
    match line.trim().to_ascii_lowercase().as_str() {
        "y" | "yes" | "1" => Some(Reply::Label(true)),
        "n" | "no" | "0" => Some(Reply::Label(false)),
        "s" | "skip" => Some(Reply::Skip),
        "q" | "quit" => Some(Reply::Quit),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SessionSummary {
    pub labeled: usize,
    pub skipped: usize,
    pub quit: bool,
}

/// A span as the operator sees it: one numbered line per sentence, each
/// token colored (or suffixed) by its language tag.
pub fn render_span(article_id: &str, source: &str, span: &Span, color: bool) -> String {
    let mut text = format!(
        "\n{article_id} ({source}) span {} with {} sentences\n",
        span.index,
        span.sentences.len()
    );
    for (i, sentence) in span.sentences.iter().enumerate() {
        let _ = write!(text, "  {}.", i + 1);
        for token in &sentence.tokens {
            let tag = token.tag.unwrap_or(LanguageTag::Other);
            if color {
                let code = match tag {
                    LanguageTag::Hindi => "33",
                    LanguageTag::English => "36",
                    LanguageTag::Other => "2",
                };
                let _ = write!(text, " \x1b[{code}m{}\x1b[0m", token.surface);
            } else {
                let _ = write!(text, " {}/{}", token.surface, tag);
            }
        }
        if let Some(cmi) = sentence.cmi {
            let _ = write!(text, "  [CMI {cmi:.1}]");
        }
        text.push('\n');
    }
    text
}

/// Prompts for every eligible span not already in `done`, in order, and
/// hands each label to `sink` as soon as it is given. End of input ends
/// the session like `q`.
pub fn label_session<I, R, W, S>(
    spans: I,
    done: &HashSet<(String, usize)>,
    mut input: R,
    mut screen: W,
    color: bool,
    mut sink: S,
) -> anyhow::Result<SessionSummary>
where
    I: Iterator<Item = anyhow::Result<(String, String, Span)>>,
    R: BufRead,
    W: Write,
    S: FnMut(Annotation) -> anyhow::Result<()>,
{
    let mut summary = SessionSummary::default();
    let mut line = String::new();
    for item in spans {
        let (article_id, source, span) = item?;
        if !span.eligible || done.contains(&(article_id.clone(), span.index)) {
            continue;
        }
        screen.write_all(render_span(&article_id, &source, &span, color).as_bytes())?;
        let reply = loop {
            write!(screen, "code-mixed? [y]es [n]o [s]kip [q]uit: ")?;
            screen.flush()?;
            line.clear();
            if input.read_line(&mut line)? == 0 {
                writeln!(screen)?;
                break Reply::Quit;
            }
            match parse_reply(&line) {
                Some(reply) => break reply,
                None => writeln!(screen, "please answer y, n, s or q")?,
            }
        };
        match reply {
            Reply::Label(label) => {
                sink(Annotation {
                    article_id,
                    span_index: span.index,
                    label,
                })?;
                summary.labeled += 1;
            }
            Reply::Skip => summary.skipped += 1,
            Reply::Quit => {
                summary.quit = true;
                break;
            }
        }
    }
    Ok(summary)
}

/// Every span of a tagged file with its article id and source.
pub fn tagged_spans(path: &Path) -> anyhow::Result<impl Iterator<Item = anyhow::Result<(String, String, Span)>>> {
    Ok(read_tagged(path)?.flat_map(|article| match article {
        Ok(article) => {
            let (id, source) = (article.id, article.source);
            article
                .spans
                .into_iter()
                .map(|span| Ok((id.clone(), source.clone(), span)))
                .collect::<Vec<_>>()
        }
        Err(e) => vec![Err(e)],
    }))
}

fn existing_labels(path: &Path) -> anyhow::Result<HashSet<(String, usize)>> {
    if !path.exists() {
        return Ok(HashSet::new());
    }
    let labels = read_annotations(path).context("existing annotation file")?;
    Ok(labels.into_iter().map(|a| (a.article_id, a.span_index)).collect())
}

/// Appends labels from `import` that are not yet in the output, after
/// checking that each names a span of the tagged file.
fn import_labels(
    args: &AnnotateArgs,
    import: &Path,
    done: &HashSet<(String, usize)>,
) -> anyhow::Result<(usize, usize)> {
    let labels = read_annotations(import)?;
    let mut keys = HashSet::new();
    for a in &labels {
        if !keys.insert((a.article_id.clone(), a.span_index)) {
            bail!(
                "{}: span {} of article {:?} is labeled twice",
                import.display(),
                a.span_index,
                a.article_id
            );
        }
    }
    for item in tagged_spans(&args.input)? {
        let (id, _, span) = item?;
        keys.remove(&(id, span.index));
    }
    if !keys.is_empty() {
        let mut orphans: Vec<String> = keys.iter().map(|(id, i)| format!("{id}#{i}")).collect();
        orphans.sort();
        bail!(
            "{} imported label(s) match no span in {}: {}",
            orphans.len(),
            args.input.display(),
            orphans.join(", ")
        );
    }
    let mut out = append(&args.output)?;
    let (mut added, mut kept) = (0, 0);
    for a in labels {
        if done.contains(&(a.article_id.clone(), a.span_index)) {
            kept += 1;
        } else {
            write_record(&mut out, &a)?;
            added += 1;
        }
    }
    out.flush()?;
    Ok((added, kept))
}

fn append(path: &Path) -> anyhow::Result<BufWriter<std::fs::File>> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufWriter::new(file))
}

pub fn run(args: &AnnotateArgs) -> anyhow::Result<()> {
    let done = existing_labels(&args.output)?;
    if let Some(import) = &args.import {
        let (added, kept) = import_labels(args, import, &done)?;
        println!("imported {added} label(s); {kept} already present");
        return Ok(());
    }

    let stdin = std::io::stdin();
    if !stdin.is_terminal() {
        return Err(usage(
            "annotate prompts on a terminal; to label in batch, write the labels to a file and pass --import FILE",
        ));
    }
    let color = args
        .color
        .unwrap_or_else(|| std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none());
    if !done.is_empty() {
        println!(
            "{} span(s) already labeled in {}; resuming",
            done.len(),
            args.output.display()
        );
    }
    let mut out = append(&args.output)?;
    let summary = label_session(
        tagged_spans(&args.input)?,
        &done,
        stdin.lock(),
        std::io::stdout().lock(),
        color,
        |annotation| {
            write_record(&mut out, &annotation)?;
            out.flush()?;
            Ok(())
        },
    )?;
    println!(
        "{} labeled, {} skipped{}",
        summary.labeled,
        summary.skipped,
        if summary.quit { " (stopped early)" } else { "" }
    );
    Ok(())
}
