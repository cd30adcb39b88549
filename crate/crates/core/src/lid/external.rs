use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;

use crate::corpus::LanguageTag;
use crate::error::{Error, Result};

/// Runs `command` through `sh -c` once for a batch of tokens.
///
/// The child reads one token per line on stdin and must print one tag per
/// line (`hi`, `en` or `other`) on stdout, in the same order, then exit 0.
pub fn run_external_tagger<S: AsRef<str>>(tokens: &[S], command: &str) -> Result<Vec<LanguageTag>> {
    let batch = tokens.len();
    let fail = |message: String| Error::ExternalTagger { batch, message };

    let mut child = Command::new("sh")
        .arg("-c")
        .arg(command)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| fail(format!("cannot launch `{command}`: {e}")))?;

    let mut input = String::new();
    for token in tokens {
        input.push_str(token.as_ref());
        input.push('\n');
    }
    let mut stdin = child.stdin.take().expect("stdin is piped");
    // Feed stdin from another thread so a chatty child cannot deadlock us.
    let writer = thread::spawn(move || {
        let result = stdin.write_all(input.as_bytes());
        drop(stdin);
        result
    });

    let mut stdout = String::new();
    let mut stderr = String::new();
    child
        .stdout
        .take()
        .expect("stdout is piped")
        .read_to_string(&mut stdout)
        .map_err(|e| fail(format!("reading tagger output: {e}")))?;
    child
        .stderr
        .take()
        .expect("stderr is piped")
        .read_to_string(&mut stderr)
        .map_err(|e| fail(format!("reading tagger stderr: {e}")))?;
    let status = child.wait().map_err(|e| fail(format!("waiting for tagger: {e}")))?;
    let write_result = writer.join().expect("stdin writer panicked");

    if !status.success() {
        return Err(fail(format!("tagger exited with {status}: {}", stderr.trim())));
    }
    if let Err(e) = write_result {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(fail(format!("writing tokens: {e}")));
        }
    }

    let tags = stdout
        .lines()
        .map(|line| line.trim_end_matches('\r'))
        .enumerate()
        .map(|(i, line)| {
            line.parse::<LanguageTag>()
                .map_err(|_| fail(format!("unknown tag {line:?} on output line {}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    if tags.len() != batch {
        return Err(fail(format!(
            "tag count mismatch: sent {batch} tokens, received {} tags",
            tags.len()
        )));
    }
    Ok(tags)
}
