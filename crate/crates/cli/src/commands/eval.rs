use std::collections::{BTreeMap, HashMap};

use anyhow::bail;
use log::warn;
use mct_core::eval::{evaluate, EvalReport, PredictionRecord, PredictionSet};
use mct_core::thresholds::{classify_span, StrategyKind};
use serde::{Deserialize, Serialize};

use super::fit::join_annotations;
use crate::args::EvalArgs;
use crate::config::PipelineConfig;
use crate::fits::{FitFile, StrategyTable};
use crate::io::{read_annotations, read_records, read_tagged, write_json, Output};
use crate::table::{fixed, Table};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub source: String,
    pub strategy: String,
    pub report: EvalReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyPrediction {
    pub strategy: String,
    #[serde(flatten)]
    pub record: PredictionRecord,
}

/// Evaluates `records` per source and over all of them.
pub fn eval_rows(
    strategy: &str,
    records: &[PredictionRecord],
    articles: &HashMap<String, (String, usize)>,
) -> anyhow::Result<Vec<EvalRow>> {
    let spans: HashMap<String, usize> = articles.iter().map(|(id, (_, n))| (id.clone(), *n)).collect();
    let mut by_source: BTreeMap<&str, Vec<PredictionRecord>> = BTreeMap::new();
    for r in records {
        let (source, _) = &articles[&r.article_id];
        by_source.entry(source).or_default().push(r.clone());
    }
    let mut rows = Vec::new();
    let mut report = |source: &str, records: Vec<PredictionRecord>| -> anyhow::Result<()> {
        let set = PredictionSet::new(records)?;
        let report = evaluate(&set, &spans)?;
        if report.fmr_undefined {
            warn!("{source}/{strategy}: no monolingual spans, FMR reported as 0");
        }
        rows.push(EvalRow {
            source: source.to_string(),
            strategy: strategy.to_string(),
            report,
        });
        Ok(())
    };
    let several = by_source.len() > 1;
    for (source, records) in &by_source {
        report(source, records.clone())?;
    }
    if several {
        report("all", records.to_vec())?;
    }
    Ok(rows)
}

pub fn eval_table(rows: &[EvalRow]) -> Table {
    let mut table = Table::new([
        "Source", "Strategy", "Spans", "Acc", "FMR", "D@10", "TP", "FP", "TN", "FN",
    ]);
    for r in rows {
        let c = &r.report.counts;
        table.row([
            r.source.clone(),
            r.strategy.clone(),
            c.total().to_string(),
            fixed(r.report.accuracy_pct),
            fixed(r.report.fmr_pct),
            fixed(r.report.d_at_10_pct),
            c.tp.to_string(),
            c.fp.to_string(),
            c.tn.to_string(),
            c.fn_.to_string(),
        ]);
    }
    table
}

/// Source and span count per article; without a tagged file every article
/// counts only its predicted spans and belongs to one pool named `all`.
fn article_index(args: &EvalArgs, records: &[PredictionRecord]) -> anyhow::Result<HashMap<String, (String, usize)>> {
    let Some(path) = &args.input else {
        let set = PredictionSet::new(records.to_vec())?;
        return Ok(set
            .spans_per_article()
            .into_iter()
            .map(|(id, n)| (id, ("all".to_string(), n)))
            .collect());
    };
    let mut articles = HashMap::new();
    for article in read_tagged(path)? {
        let article = article?;
        articles.insert(article.id.clone(), (article.source.clone(), article.spans.len()));
    }
    let mut orphans: Vec<String> = records
        .iter()
        .filter(|r| articles.get(&r.article_id).is_none_or(|&(_, n)| r.span_index >= n))
        .map(|r| format!("{}#{}", r.article_id, r.span_index))
        .collect();
    if !orphans.is_empty() {
        orphans.sort();
        orphans.dedup();
        bail!(
            "{} prediction(s) match no span in {}: {}",
            orphans.len(),
            path.display(),
            orphans.join(", ")
        );
    }
    Ok(articles)
}

pub fn run(cfg: &PipelineConfig, args: &EvalArgs) -> anyhow::Result<()> {
    let rows = match (&args.predictions, &args.fits, &args.annotations) {
        (Some(path), _, _) => {
            let records: Vec<PredictionRecord> = read_records(path)?.collect::<anyhow::Result<_>>()?;
            if records.is_empty() {
                bail!("no predictions in {}", path.display());
            }
            let articles = article_index(args, &records)?;
            eval_rows("-", &records, &articles)?
        }
        (None, Some(fits), Some(annotations)) => compare_strategies(cfg, args, fits, annotations)?,
        _ => {
            return Err(crate::failure::usage(
                "eval needs --predictions, or --fits with --annotations and --input",
            ))
        }
    };
    print!("{}", eval_table(&rows));
    if let Some(path) = &args.json {
        write_json(path, &rows)?;
    }
    Ok(())
}

fn compare_strategies(
    cfg: &PipelineConfig,
    args: &EvalArgs,
    fits: &std::path::Path,
    annotations: &std::path::Path,
) -> anyhow::Result<Vec<EvalRow>> {
    let tagged = args.input.as_deref().expect("clap requires --input with --fits");
    let fits = FitFile::load(fits)?;
    let annotations = read_annotations(annotations)?;
    if annotations.is_empty() {
        bail!("no annotations to evaluate against");
    }
    let joined = join_annotations(tagged, &annotations)?;
    let kinds = if args.strategies.is_empty() {
        StrategyKind::ALL.to_vec()
    } else {
        args.strategies.clone()
    };

    let mut emitted = match &args.emit_predictions {
        Some(path) => Some(Output::create(path)?),
        None => None,
    };
    let mut rows = Vec::new();
    for kind in kinds {
        let table = match StrategyTable::build(cfg, &fits, kind) {
            Ok(table) => table,
            Err(e) => {
                warn!("{}: {e:#}; skipped", kind.as_str());
                continue;
            }
        };
        let mut records = Vec::with_capacity(joined.spans.len());
        let mut unusable = None;
        for (source, annotated) in &joined.spans {
            let strategy = match table.get(source) {
                Ok(strategy) => strategy,
                Err(e) => {
                    unusable = Some(e);
                    break;
                }
            };
            records.push(PredictionRecord {
                article_id: annotated.article_id.clone(),
                span_index: annotated.span_index,
                predicted: classify_span(&annotated.span, strategy)?,
                label: annotated.label,
            });
        }
        if let Some(e) = unusable {
            warn!("{}: {e:#}; skipped", kind.as_str());
            continue;
        }
        if let Some(out) = emitted.as_mut() {
            for record in &records {
                out.record(&StrategyPrediction {
                    strategy: kind.as_str().to_string(),
                    record: record.clone(),
                })?;
            }
        }
        rows.extend(eval_rows(kind.as_str(), &records, &joined.articles)?);
    }
    if let Some(out) = emitted {
        out.finish()?;
    }
    if rows.is_empty() {
        bail!("no strategy could be applied with the fits in this file");
    }
    // Rows grouped by source, strategies in the order requested.
    let order: HashMap<String, usize> = rows
        .iter()
        .map(|r| r.source.clone())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    rows.sort_by_key(|r| (r.source == "all", order[&r.source]));
    Ok(rows)
}
