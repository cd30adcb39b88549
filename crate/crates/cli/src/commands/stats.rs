use std::collections::BTreeMap;

use mct_core::eval::{CorpusStats, CorpusStatsBuilder};
use serde::Serialize;

use crate::args::StatsArgs;
use crate::config::PipelineConfig;
use crate::io::{read_tagged, write_json};
use crate::table::{fixed, Table};

#[derive(Debug, Serialize)]
pub struct StatsRow {
    pub pool: String,
    pub stats: CorpusStats,
}

/// Per-source statistics, then each category pool, then everything.
pub fn stats_rows(
    cfg: &PipelineConfig,
    per_source: &BTreeMap<String, CorpusStatsBuilder>,
) -> anyhow::Result<Vec<StatsRow>> {
    let mut rows = Vec::new();
    let mut pools: BTreeMap<String, CorpusStatsBuilder> = BTreeMap::new();
    let mut all = CorpusStatsBuilder::default();
    for (source, builder) in per_source {
        rows.push(StatsRow {
            pool: source.clone(),
            stats: builder.finish()?,
        });
        let category = cfg.category_of(source)?;
        pools.entry(category.to_string()).or_default().merge(builder);
        all.merge(builder);
    }
    if per_source.len() > 1 {
        for (pool, builder) in &pools {
            rows.push(StatsRow {
                pool: format!("D_{pool}"),
                stats: builder.finish()?,
            });
        }
        rows.push(StatsRow {
            pool: "all".into(),
            stats: all.finish()?,
        });
    }
    Ok(rows)
}

pub fn stats_table(rows: &[StatsRow]) -> Table {
    let mut table = Table::new(["Source", "Articles", "AW", "AC", "%H", "%E"]);
    for row in rows {
        let s = &row.stats;
        table.row([
            row.pool.clone(),
            s.articles.to_string(),
            fixed(s.avg_words),
            fixed(s.avg_chars),
            fixed(s.pct_hindi),
            fixed(s.pct_english),
        ]);
    }
    table
}

pub fn run(cfg: &PipelineConfig, args: &StatsArgs) -> anyhow::Result<()> {
    let mut per_source: BTreeMap<String, CorpusStatsBuilder> = BTreeMap::new();
    for article in read_tagged(&args.input)? {
        let article = article?;
        per_source.entry(article.source.clone()).or_default().add(&article);
    }
    if per_source.is_empty() {
        println!("no articles in {}", args.input.display());
        return Ok(());
    }
    let rows = stats_rows(cfg, &per_source)?;
    print!("{}", stats_table(&rows));
    if let Some(path) = &args.json {
        write_json(path, &rows)?;
    }
    Ok(())
}
