//! Synthetic corpora with known code-mixed paragraphs.
//!
//! Words come from the shipped wordlists (forms in exactly one list) plus a
//! few Devanagari words, so the default lexicon tagger tags them exactly.
//! Sentence kinds:
//!
//! * monolingual: every word from one language, CMI 0;
//! * noisy: one foreign word among at least ten, CMI at most 10;
//! * mixed: 30 to 50 percent foreign words, CMI at least 30.
//!
//! Planted paragraphs have two or more sentences and at least one mixed
//! sentence. Every other paragraph is negative, including single-sentence
//! paragraphs even when mixed.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mct_core::lid::LexiconTagger;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const SOURCES: [&str; 7] = ["AAP", "INC", "MKB", "PIB", "PMS", "DB", "DJ"];

const DEVANAGARI: [&str; 24] = [
    "भारत",
    "सरकार",
    "लोग",
    "देश",
    "काम",
    "समय",
    "दिन",
    "बात",
    "घर",
    "पानी",
    "गांव",
    "किसान",
    "शहर",
    "बच्चे",
    "सड़क",
    "योजना",
    "विकास",
    "सपना",
    "मेहनत",
    "खुशी",
    "दुनिया",
    "राज्य",
    "जनता",
    "नदी",
];

pub struct Vocab {
    pub hindi: Vec<String>,
    pub english: Vec<String>,
}

impl Vocab {
    pub fn shipped() -> Self {
        let lexicon = LexiconTagger::shipped();
        let only = |a: &std::collections::HashSet<String>, b: &std::collections::HashSet<String>| {
            let mut words: Vec<String> = a.iter().filter(|w| w.len() >= 3 && !b.contains(*w)).cloned().collect();
            words.sort();
            words
        };
        Vocab {
            hindi: only(lexicon.hindi_roman(), lexicon.english()),
            english: only(lexicon.english(), lexicon.hindi_roman()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lang {
    Hindi,
    English,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Mono,
    Noisy,
    Mixed,
}

pub struct GenSpec {
    pub articles: usize,
    pub min_words: usize,
    pub max_words: usize,
    pub min_paragraphs: usize,
    pub max_paragraphs: usize,
    pub seed: u64,
}

impl GenSpec {
    /// Short articles for end-to-end checks.
    pub fn small(articles: usize, seed: u64) -> Self {
        GenSpec {
            articles,
            min_words: 10,
            max_words: 14,
            min_paragraphs: 3,
            max_paragraphs: 6,
            seed,
        }
    }

    /// Roughly 400-word articles for throughput checks.
    pub fn news_sized(articles: usize, seed: u64) -> Self {
        GenSpec {
            articles,
            min_words: 15,
            max_words: 22,
            min_paragraphs: 7,
            max_paragraphs: 9,
            seed,
        }
    }
}

pub struct Corpus {
    /// One JSON record per article.
    pub jsonl: String,
    /// (article id, span index) of every planted paragraph.
    pub positives: BTreeSet<(String, usize)>,
    /// Every (article id, span index, label), eligible spans only.
    pub labels: Vec<(String, usize, bool)>,
    pub words: usize,
}

struct Writer<'a> {
    vocab: &'a Vocab,
    rng: StdRng,
}

impl Writer<'_> {
    fn word(&mut self, lang: Lang) -> String {
        match lang {
            Lang::English => self.vocab.english.choose(&mut self.rng).unwrap().clone(),
            Lang::Hindi if self.rng.gen_bool(0.5) => DEVANAGARI.choose(&mut self.rng).unwrap().to_string(),
            Lang::Hindi => self.vocab.hindi.choose(&mut self.rng).unwrap().clone(),
        }
    }

    /// A sentence and its word count.
    fn sentence(&mut self, kind: Kind, min: usize, max: usize) -> (String, usize) {
        let base = if self.rng.gen_bool(0.5) {
            Lang::Hindi
        } else {
            Lang::English
        };
        let other = if base == Lang::Hindi {
            Lang::English
        } else {
            Lang::Hindi
        };
        let n = self.rng.gen_range(min.max(10)..=max.max(10));
        let foreign = match kind {
            Kind::Mono => 0,
            Kind::Noisy => 1,
            Kind::Mixed => {
                let low = (3 * n).div_ceil(10);
                self.rng.gen_range(low..=n / 2)
            }
        };
        let mut langs = vec![base; n - foreign];
        langs.extend(std::iter::repeat_n(other, foreign));
        langs.shuffle(&mut self.rng);

        let mut text = String::new();
        for (i, &lang) in langs.iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            let mut word = self.word(lang);
            if i == 0 && lang == Lang::English {
                word[..1].make_ascii_uppercase();
            }
            text.push_str(&word);
            if i + 1 < n && self.rng.gen_ratio(1, 12) {
                text.push(',');
            }
        }
        if self.rng.gen_ratio(1, 8) {
            let _ = write!(text, " {}", self.rng.gen_range(1..2030));
        }
        text.push_str(if base == Lang::Hindi { " ।" } else { "." });
        (text, n)
    }

    fn paragraph(&mut self, kinds: &[Kind], spec: &GenSpec) -> (String, usize) {
        let mut words = 0;
        let sentences: Vec<String> = kinds
            .iter()
            .map(|&k| {
                let (s, n) = self.sentence(k, spec.min_words, spec.max_words);
                words += n;
                s
            })
            .collect();
        (sentences.join(" "), words)
    }
}

#[derive(Clone, Copy)]
enum Para {
    Planted,
    Noisy,
    Mono,
    Single,
}

pub fn generate(vocab: &Vocab, spec: &GenSpec) -> Corpus {
    let mut w = Writer {
        vocab,
        rng: StdRng::seed_from_u64(spec.seed),
    };
    let mut corpus = Corpus {
        jsonl: String::new(),
        positives: BTreeSet::new(),
        labels: Vec::new(),
        words: 0,
    };
    for a in 0..spec.articles {
        let id = format!("gen-{a:05}");
        let source = SOURCES[a % SOURCES.len()];
        let count = w.rng.gen_range(spec.min_paragraphs.max(2)..=spec.max_paragraphs.max(2));
        let mut plan = vec![Para::Planted, Para::Noisy];
        while plan.len() < count {
            plan.push(match w.rng.gen_range(0..10) {
                0..=2 => Para::Planted,
                3..=4 => Para::Noisy,
                5..=7 => Para::Mono,
                _ => Para::Single,
            });
        }
        plan.shuffle(&mut w.rng);

        let mut paragraphs = Vec::new();
        for (index, para) in plan.iter().enumerate() {
            let k = w.rng.gen_range(2..=4);
            let kinds: Vec<Kind> = match para {
                Para::Planted => {
                    let mut kinds = vec![Kind::Mixed];
                    kinds.extend((1..k).map(|_| match w.rng.gen_range(0..3) {
                        0 => Kind::Mixed,
                        1 => Kind::Noisy,
                        _ => Kind::Mono,
                    }));
                    kinds.shuffle(&mut w.rng);
                    kinds
                }
                Para::Noisy => {
                    let mut kinds = vec![Kind::Noisy];
                    kinds.extend((1..k).map(|_| if w.rng.gen_bool(0.5) { Kind::Noisy } else { Kind::Mono }));
                    kinds
                }
                Para::Mono => vec![Kind::Mono; k],
                Para::Single => vec![if w.rng.gen_bool(0.5) { Kind::Mixed } else { Kind::Mono }],
            };
            let (text, words) = w.paragraph(&kinds, spec);
            corpus.words += words;
            paragraphs.push(text);
            if kinds.len() >= 2 {
                let label = matches!(para, Para::Planted);
                if label {
                    corpus.positives.insert((id.clone(), index));
                }
                corpus.labels.push((id.clone(), index, label));
            }
        }
        let record = serde_json::json!({
            "id": id,
            "source": source,
            "title": format!("Article {a}"),
            "body": paragraphs.join("\n\n"),
        });
        corpus.jsonl.push_str(&record.to_string());
        corpus.jsonl.push('\n');
    }
    corpus
}

/// Annotation records for the eligible spans of the given articles.
pub fn annotations_for(corpus: &Corpus, articles: &BTreeSet<String>) -> String {
    let mut out = String::new();
    for (id, index, label) in &corpus.labels {
        if articles.contains(id) {
            let record = serde_json::json!({"article_id": id, "span_index": index, "label": u8::from(*label)});
            out.push_str(&record.to_string());
            out.push('\n');
        }
    }
    out
}

pub fn mct() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mct"));
    cmd.env_remove("RUST_LOG").env("NO_COLOR", "1");
    cmd
}

/// Runs `mct` with `args` and returns its output.
pub fn run_mct(args: &[&str]) -> Output {
    mct().args(args).output().expect("spawn mct")
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    let mut file = std::fs::File::create(&path).unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    path
}

pub fn path_str(path: &Path) -> &str {
    path.to_str().expect("utf-8 temp path")
}

pub fn read_lines(path: &Path) -> Vec<serde_json::Value> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

/// (article id, span index) of every record after the header line.
pub fn detected(path: &Path) -> BTreeSet<(String, usize)> {
    read_lines(path)
        .into_iter()
        .filter(|v| v.get("header").is_none())
        .map(|v| {
            (
                v["article_id"].as_str().unwrap().to_string(),
                v["span_index"].as_u64().unwrap() as usize,
            )
        })
        .collect()
}
