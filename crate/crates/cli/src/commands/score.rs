use anyhow::Context;
use mct_core::corpus::Article;
use mct_core::metrics::{score_span, SpanScore};
use serde::{Deserialize, Serialize};

use crate::args::ScoreArgs;
use crate::config::{parse_pair, PipelineConfig};
use crate::io::{for_each_ordered, read_tagged, Output};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub article_id: String,
    pub source: String,
    #[serde(flatten)]
    pub score: SpanScore,
}

pub fn run(cfg: &PipelineConfig, args: &ScoreArgs) -> anyhow::Result<()> {
    let pair = parse_pair(&args.thresholds)?;
    let mut out = Output::create(&args.output)?;
    let work = |article: anyhow::Result<Article>| -> anyhow::Result<Vec<ScoreRecord>> {
        let article = article?;
        article
            .spans
            .iter()
            .map(|span| {
                Ok(ScoreRecord {
                    article_id: article.id.clone(),
                    source: article.source.clone(),
                    score: score_span(span, pair)
                        .with_context(|| format!("article {:?} span {}", article.id, span.index))?,
                })
            })
            .collect()
    };
    for_each_ordered(read_tagged(&args.input)?, cfg.batch_size, work, |records| {
        for record in records? {
            out.record(&record)?;
        }
        Ok(())
    })?;
    out.finish()?;
    Ok(())
}
