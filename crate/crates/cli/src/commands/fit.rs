use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use log::warn;
use mct_core::metrics::{mec_statistics, score_span};
use mct_core::thresholds::{fit_thresholds, AnnotatedSpan, Annotation, FitResult, GridSpec};
use rayon::prelude::*;

use crate::args::FitArgs;
use crate::config::PipelineConfig;
use crate::fits::{FitFile, Pool, PoolFit};
use crate::io::{read_annotations, read_tagged, write_json};
use crate::table::{fixed, Table};

/// Annotated spans with their source, joined from a tagged file.
pub struct Joined {
    pub spans: Vec<(String, AnnotatedSpan)>,
    /// Source and total span count of every article in the tagged file.
    pub articles: HashMap<String, (String, usize)>,
}

/// Attaches each annotation to its tagged span. Annotations that match no
/// span are an error listing them.
pub fn join_annotations(tagged: &Path, annotations: &[Annotation]) -> anyhow::Result<Joined> {
    let mut wanted: HashMap<(String, usize), bool> = HashMap::with_capacity(annotations.len());
    for a in annotations {
        if wanted.insert((a.article_id.clone(), a.span_index), a.label).is_some() {
            return Err(mct_core::Error::DuplicateSpan {
                article_id: a.article_id.clone(),
                span_index: a.span_index,
            }
            .into());
        }
    }
    let mut spans = Vec::with_capacity(annotations.len());
    let mut articles = HashMap::new();
    for article in read_tagged(tagged)? {
        let article = article?;
        articles.insert(article.id.clone(), (article.source.clone(), article.spans.len()));
        for span in article.spans {
            if let Some(label) = wanted.remove(&(article.id.clone(), span.index)) {
                spans.push((
                    article.source.clone(),
                    AnnotatedSpan {
                        article_id: article.id.clone(),
                        span_index: span.index,
                        label,
                        span,
                    },
                ));
            }
        }
    }
    if !wanted.is_empty() {
        let mut orphans: Vec<String> = wanted.keys().map(|(id, index)| format!("{id}#{index}")).collect();
        orphans.sort();
        let shown = orphans.iter().take(10).cloned().collect::<Vec<_>>().join(", ");
        let more = orphans.len().saturating_sub(10);
        let tail = if more > 0 {
            format!(" and {more} more")
        } else {
            String::new()
        };
        bail!(
            "{} annotation(s) match no span in {}: {shown}{tail}",
            orphans.len(),
            tagged.display()
        );
    }
    // Keep the annotation file's order so fits do not depend on the tagged file layout.
    let order: HashMap<(&str, usize), usize> = annotations
        .iter()
        .enumerate()
        .map(|(i, a)| ((a.article_id.as_str(), a.span_index), i))
        .collect();
    spans.sort_by_key(|(_, s)| order[&(s.article_id.as_str(), s.span_index)]);
    Ok(Joined { spans, articles })
}

/// Groups joined spans into every source, every category and the combined pool.
pub fn pools(cfg: &PipelineConfig, joined: &Joined) -> anyhow::Result<BTreeMap<Pool, Vec<AnnotatedSpan>>> {
    let mut pools: BTreeMap<Pool, Vec<AnnotatedSpan>> = BTreeMap::new();
    for (source, span) in &joined.spans {
        let category = cfg.category_of(source)?;
        for pool in [Pool::Source(source.clone()), Pool::Category(category), Pool::Combined] {
            pools.entry(pool).or_default().push(span.clone());
        }
    }
    Ok(pools)
}

pub fn fit_pool(pool: &Pool, spans: &[AnnotatedSpan], grid: &GridSpec) -> anyhow::Result<(PoolFit, FitResult)> {
    let result = fit_thresholds(spans, grid).with_context(|| format!("fitting pool {pool}"))?;
    let scores = spans
        .iter()
        .map(|s| score_span(&s.span, result.thresholds))
        .collect::<Result<Vec<_>, _>>()?;
    let fit = PoolFit {
        scope: pool.scope(),
        name: pool.name(),
        thresholds: result.thresholds,
        accuracy: result.accuracy,
        spans: spans.len(),
        positives: spans.iter().filter(|s| s.label).count(),
        statistics: mec_statistics(&scores),
    };
    Ok((fit, result))
}

pub fn fit_table(fits: &[(Pool, PoolFit)]) -> Table {
    let mut table = Table::new(["Pool", "Spans", "Positive", "alpha", "beta", "Accuracy"]);
    for (pool, fit) in fits {
        table.row([
            pool.to_string(),
            fit.spans.to_string(),
            fit.positives.to_string(),
            format!("{}", fit.thresholds.alpha),
            format!("{}", fit.thresholds.beta),
            fixed(fit.accuracy),
        ]);
    }
    table
}

pub fn run(cfg: &PipelineConfig, args: &FitArgs) -> anyhow::Result<()> {
    let annotations = read_annotations(&args.annotations)?;
    if annotations.is_empty() {
        bail!("no annotations in {}", args.annotations.display());
    }
    let joined = join_annotations(&args.input, &annotations)?;
    let pools = pools(cfg, &joined)?;
    for pool in cfg
        .categories
        .values()
        .map(|&c| Pool::Category(c))
        .filter(|p| !pools.contains_key(p))
        .collect::<std::collections::BTreeSet<_>>()
    {
        warn!("pool {pool} has no annotated spans; skipped");
    }

    let fitted: Vec<(Pool, PoolFit, FitResult)> = pools
        .par_iter()
        .map(|(pool, spans)| fit_pool(pool, spans, &cfg.grid).map(|(fit, result)| (pool.clone(), fit, result)))
        .collect::<anyhow::Result<_>>()?;

    if let Some(dir) = &args.surface_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (pool, _, result) in &fitted {
            let mut text = String::from("alpha\tbeta\taccuracy\n");
            for cell in &result.accuracy_surface {
                writeln!(text, "{}\t{}\t{}", cell.alpha, cell.beta, cell.accuracy)?;
            }
            let path = dir.join(format!("{}-{}.tsv", scope_label(pool), pool.name()));
            std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        }
    }

    let rows: Vec<(Pool, PoolFit)> = fitted.into_iter().map(|(p, f, _)| (p, f)).collect();
    let file = FitFile {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        tagger: cfg.tagger.id(),
        grid: cfg.grid,
        pools: rows.iter().map(|(_, f)| f.clone()).collect(),
    };
    write_json(&args.output, &file)?;
    print!("{}", fit_table(&rows));
    Ok(())
}

fn scope_label(pool: &Pool) -> &'static str {
    match pool {
        Pool::Source(_) => "source",
        Pool::Category(_) => "category",
        Pool::Combined => "combined",
    }
}
