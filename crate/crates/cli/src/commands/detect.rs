use std::collections::BTreeMap;

use anyhow::Context;
use mct_core::corpus::{Article, Span};
use mct_core::eval::{span_word_count, CorpusStatsBuilder};
use mct_core::metrics::{score_span, Moments, SpanScore};
use mct_core::thresholds::{StrategyKind, StrategySpec};
use serde::{Deserialize, Serialize};

use crate::args::DetectArgs;
use crate::config::{parse_pair, PipelineConfig};
use crate::fits::{FitFile, PoolFit, StrategyTable};
use crate::io::{for_each_ordered, print_report, read_tagged, write_json, Output};
use crate::table::{fixed, Table};

/// First line of a dataset file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetHeader {
    pub tool: String,
    pub version: String,
    pub tagger: String,
    pub paragraph_break: String,
    /// `fixed` when one pair was applied to every source.
    pub strategy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub donor: Option<String>,
    /// Strategy applied to each source that has one.
    pub sources: BTreeMap<String, StrategySpec>,
    /// The fits the strategies were built from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fits: Vec<PoolFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeaderLine {
    pub header: DatasetHeader,
}

/// One detected code-mixed span.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub article_id: String,
    pub source: String,
    pub span_index: usize,
    pub text: String,
    pub sentence_count: usize,
    pub n_cm: usize,
    pub mr: f64,
    pub mean_cmi: f64,
    pub words: usize,
    pub chars: usize,
    pub strategy: StrategySpec,
}

/// Runs the strategy on one span. For MDG the reported scores are those
/// of the first positive component pair.
pub fn detect_span(span: &Span, strategy: &StrategySpec) -> mct_core::Result<Option<SpanScore>> {
    if !span.eligible {
        return Ok(None);
    }
    let scores = strategy
        .pairs()
        .into_iter()
        .map(|pair| score_span(span, pair))
        .collect::<mct_core::Result<Vec<_>>>()?;
    let votes = scores.iter().filter(|s| s.decision).count();
    let positive = match strategy.kind() {
        StrategyKind::Mdg => votes >= 2,
        _ => votes == 1,
    };
    Ok(positive.then(|| scores.into_iter().find(|s| s.decision)).flatten())
}

pub fn detect_article(article: &Article, strategy: &StrategySpec) -> mct_core::Result<Vec<DatasetRecord>> {
    let mut records = Vec::new();
    for span in &article.spans {
        if let Some(score) = detect_span(span, strategy)? {
            let text = span.text();
            let sentence_cmis = &score.sentence_cmis;
            records.push(DatasetRecord {
                article_id: article.id.clone(),
                source: article.source.clone(),
                span_index: span.index,
                chars: text.chars().count(),
                text,
                sentence_count: span.sentences.len(),
                n_cm: score.n_cm,
                mr: score.mr,
                mean_cmi: sentence_cmis.iter().sum::<f64>() / sentence_cmis.len() as f64,
                words: span_word_count(span),
                strategy: strategy.clone(),
            });
        }
    }
    Ok(records)
}

#[derive(Debug, Default)]
struct SummaryBuilder {
    articles: CorpusStatsBuilder,
    mcts: usize,
    cmi: Moments,
    words: Moments,
    chars: Moments,
}

impl SummaryBuilder {
    fn add(&mut self, article: &Article, records: &[DatasetRecord]) {
        self.articles.add(article);
        for r in records {
            self.mcts += 1;
            self.cmi.push(r.mean_cmi);
            self.words.push(r.words as f64);
            self.chars.push(r.chars as f64);
        }
    }

    fn merge(&mut self, other: &SummaryBuilder) {
        self.articles.merge(&other.articles);
        self.mcts += other.mcts;
        self.cmi.merge(&other.cmi);
        self.words.merge(&other.words);
        self.chars.merge(&other.chars);
    }

    fn finish(&self, pool: String) -> mct_core::Result<SummaryRow> {
        let articles = self.articles.finish()?;
        let mean = |m: &Moments| if m.count() == 0 { 0.0 } else { m.summary().mean };
        Ok(SummaryRow {
            pool,
            articles: articles.articles,
            mcts: self.mcts,
            mcts_per_article: self.mcts as f64 / articles.articles as f64,
            article_avg_words: articles.avg_words,
            article_avg_chars: articles.avg_chars,
            mct_avg_cmi: mean(&self.cmi),
            mct_avg_words: mean(&self.words),
            mct_avg_chars: mean(&self.chars),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub pool: String,
    pub articles: usize,
    pub mcts: usize,
    pub mcts_per_article: f64,
    pub article_avg_words: f64,
    pub article_avg_chars: f64,
    pub mct_avg_cmi: f64,
    pub mct_avg_words: f64,
    pub mct_avg_chars: f64,
}

pub fn summary_table(rows: &[SummaryRow]) -> Table {
    let mut table = Table::new([
        "Source", "Articles", "MCTs", "MCT/Art", "Art AW", "Art AC", "MCT CMI", "MCT AW", "MCT AC",
    ]);
    for r in rows {
        table.row([
            r.pool.clone(),
            r.articles.to_string(),
            r.mcts.to_string(),
            fixed(r.mcts_per_article),
            fixed(r.article_avg_words),
            fixed(r.article_avg_chars),
            fixed(r.mct_avg_cmi),
            fixed(r.mct_avg_words),
            fixed(r.mct_avg_chars),
        ]);
    }
    table
}

pub fn run(cfg: &PipelineConfig, args: &DetectArgs) -> anyhow::Result<()> {
    let (table, header) = match (&args.thresholds, &args.fits) {
        (Some(text), _) => {
            let pair = parse_pair(text)?;
            let table = StrategyTable::fixed(cfg, pair);
            let header = header(cfg, "fixed", None, &table, Vec::new());
            (table, header)
        }
        (None, Some(path)) => {
            let fits = FitFile::load(path)?;
            let table = StrategyTable::build(cfg, &fits, cfg.strategy)?;
            let donor = (cfg.strategy == StrategyKind::Sdg).then(|| cfg.donor.clone()).flatten();
            let header = header(cfg, cfg.strategy.as_str(), donor, &table, fits.pools);
            (table, header)
        }
        (None, None) => unreachable!("clap requires --fits or --thresholds"),
    };

    let mut out = Output::create(&args.output)?;
    let to_stderr = out.is_stdout();
    out.record(&HeaderLine { header })?;

    let mut per_source: BTreeMap<String, SummaryBuilder> = BTreeMap::new();
    let label = args.input.display().to_string();
    let work = |article: anyhow::Result<Article>| -> anyhow::Result<(Article, Vec<DatasetRecord>)> {
        let article = article?;
        let strategy = table.get(&article.source)?;
        let records =
            detect_article(&article, strategy).with_context(|| format!("{label}: article {:?}", article.id))?;
        Ok((article, records))
    };
    for_each_ordered(read_tagged(&args.input)?, cfg.batch_size, work, |result| {
        let (article, records) = result?;
        for record in &records {
            out.record(record)?;
        }
        per_source
            .entry(article.source.clone())
            .or_default()
            .add(&article, &records);
        Ok(())
    })?;
    out.finish().context("writing dataset")?;

    let mut rows = Vec::new();
    let mut all = SummaryBuilder::default();
    for (source, builder) in &per_source {
        rows.push(builder.finish(source.clone())?);
        all.merge(builder);
    }
    if per_source.len() != 1 && all.articles.finish().is_ok() {
        rows.push(all.finish("all".into())?);
    }
    let report = if rows.is_empty() {
        "no articles\n".to_string()
    } else {
        summary_table(&rows).to_string()
    };
    print_report(to_stderr, &report);
    if let Some(path) = &args.summary {
        write_json(path, &rows)?;
    }
    Ok(())
}

fn header(
    cfg: &PipelineConfig,
    strategy: &str,
    donor: Option<String>,
    table: &StrategyTable,
    fits: Vec<PoolFit>,
) -> DatasetHeader {
    DatasetHeader {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        tagger: cfg.tagger.id(),
        paragraph_break: cfg.paragraph_break.to_string(),
        strategy: strategy.into(),
        donor,
        sources: table
            .resolved()
            .into_iter()
            .map(|(s, spec)| (s.to_string(), spec.clone()))
            .collect(),
        fits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mct_core::corpus::{LanguageTag, Sentence, Token};
    use mct_core::metrics::ThresholdPair;

    fn sentence(tags: &[LanguageTag]) -> Sentence {
        let mut s = Sentence {
            text: String::new(),
            tokens: tags.iter().map(|&t| Token::tagged("w", t)).collect(),
            cmi: None,
        };
        s.update_cmi().unwrap();
        s
    }

    fn pair(alpha: f64, beta: f64) -> ThresholdPair {
        ThresholdPair::new(alpha, beta).unwrap()
    }

    #[test]
    fn mdg_reports_first_positive_component() {
        use LanguageTag::{English as E, Hindi as H};
        // CMIs 25 and 0: MR = 0.5 when alpha < 25, else 0.
        let span = Span::new(0, vec![sentence(&[H, H, H, E]), sentence(&[H, H])]);
        let mdg = StrategySpec::Mdg {
            local: pair(30.0, 0.0),
            category: pair(10.0, 0.2),
            combined: pair(0.0, 0.4),
        };
        let score = detect_span(&span, &mdg).unwrap().unwrap();
        assert_eq!((score.n_cm, score.mr), (1, 0.5));

        let no = StrategySpec::Mdg {
            local: pair(30.0, 0.0),
            category: pair(10.0, 0.5),
            combined: pair(0.0, 0.4),
        };
        assert!(detect_span(&span, &no).unwrap().is_none());

        let single = Span::new(1, vec![sentence(&[H, E])]);
        let sdg = StrategySpec::Sdg {
            donor: "x".into(),
            thresholds: pair(0.0, 0.0),
        };
        assert!(detect_span(&single, &sdg).unwrap().is_none());
    }
}
