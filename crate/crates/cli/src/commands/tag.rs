use std::collections::BTreeMap;

use anyhow::Context;
use log::warn;
use mct_core::corpus::{ingest_articles, Article};
use mct_core::eval::CorpusStatsBuilder;
use mct_core::lid::Tagger;
use mct_core::Error;

use super::stats::{stats_rows, stats_table};
use crate::args::TagArgs;
use crate::config::PipelineConfig;
use crate::failure::usage;
use crate::io::{for_each_ordered, print_report, Output};

pub fn run(cfg: &PipelineConfig, args: &TagArgs) -> anyhow::Result<()> {
    let tagger = Tagger::from_spec(&cfg.tagger).map_err(|e| usage(e.to_string()))?;
    let mut out = Output::create(&args.output)?;
    let to_stderr = out.is_stdout();
    let mut per_source: BTreeMap<String, CorpusStatsBuilder> = BTreeMap::new();
    let mut malformed = 0usize;

    for input in &args.inputs {
        let label = input.display().to_string();
        let articles = ingest_articles(input, args.source.as_deref())?;
        let work = |article: Result<Article, Error>| -> Result<Article, (Option<String>, Error)> {
            let article = article.map_err(|e| (None, e))?;
            let id = article.id.clone();
            tagger
                .tag_article(article.segment(cfg.paragraph_break))
                .map_err(|e| (Some(id), e))
        };
        for_each_ordered(articles, cfg.batch_size, work, |result| match result {
            Ok(article) => {
                cfg.category_of(&article.source)?;
                per_source.entry(article.source.clone()).or_default().add(&article);
                out.record(&article)?;
                Ok(())
            }
            Err((None, e @ Error::Record { .. })) => {
                warn!("{label}: skipped {e}");
                malformed += 1;
                Ok(())
            }
            Err((Some(id), e)) => Err(anyhow::Error::new(e).context(format!("{label}: article {id:?}"))),
            Err((None, e)) => Err(anyhow::Error::new(e).context(label.clone())),
        })?;
    }
    out.finish().context("writing tagged articles")?;

    let mut report = String::new();
    if per_source.is_empty() {
        report.push_str("no articles tagged\n");
    } else {
        report.push_str(&stats_table(&stats_rows(cfg, &per_source)?).to_string());
    }
    if malformed > 0 {
        report.push_str(&format!("{malformed} malformed record(s) skipped\n"));
    }
    print_report(to_stderr, &report);
    Ok(())
}
