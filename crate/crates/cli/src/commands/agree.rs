use std::collections::{BTreeMap, HashMap};

use anyhow::bail;
use mct_core::eval::{cohen_kappa, complete_agreement, AgreementTally};
use mct_core::thresholds::Annotation;
use serde::{Deserialize, Serialize};

use crate::args::AgreeArgs;
use crate::io::{read_annotations, read_tagged, write_json};
use crate::table::{fixed, Table};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementRow {
    pub source: String,
    pub spans: usize,
    pub tally: AgreementTally,
    pub kappa: f64,
}

/// Pairs the two label sets on (article, span). Keys present in only one
/// set are an error listing them.
pub fn pair_labels(first: &[Annotation], second: &[Annotation]) -> anyhow::Result<Vec<(String, bool, bool)>> {
    let index = |set: &[Annotation]| -> anyhow::Result<BTreeMap<(String, usize), bool>> {
        let mut map = BTreeMap::new();
        for a in set {
            if map.insert((a.article_id.clone(), a.span_index), a.label).is_some() {
                return Err(mct_core::Error::DuplicateSpan {
                    article_id: a.article_id.clone(),
                    span_index: a.span_index,
                }
                .into());
            }
        }
        Ok(map)
    };
    let a = index(first)?;
    let mut b = index(second)?;
    let mut pairs = Vec::with_capacity(a.len());
    let mut orphans = Vec::new();
    for (key, label_a) in a {
        match b.remove(&key) {
            Some(label_b) => pairs.push((key.0, label_a, label_b)),
            None => orphans.push(format!("{}#{} (first only)", key.0, key.1)),
        }
    }
    orphans.extend(b.keys().map(|(id, i)| format!("{id}#{i} (second only)")));
    if !orphans.is_empty() {
        bail!(
            "{} span(s) labeled by only one annotator: {}",
            orphans.len(),
            orphans.join(", ")
        );
    }
    Ok(pairs)
}

pub fn agreement_row(source: &str, pairs: &[(bool, bool)]) -> anyhow::Result<AgreementRow> {
    let (a, b): (Vec<bool>, Vec<bool>) = pairs.iter().copied().unzip();
    Ok(AgreementRow {
        source: source.to_string(),
        spans: pairs.len(),
        tally: complete_agreement(&a, &b)?,
        kappa: cohen_kappa(&a, &b)?,
    })
}

pub fn run(args: &AgreeArgs) -> anyhow::Result<()> {
    let pairs = pair_labels(&read_annotations(&args.first)?, &read_annotations(&args.second)?)?;
    if pairs.is_empty() {
        bail!("no labeled spans to compare");
    }
    let mut groups: BTreeMap<String, Vec<(bool, bool)>> = BTreeMap::new();
    if let Some(path) = &args.input {
        let mut sources = HashMap::new();
        for article in read_tagged(path)? {
            let article = article?;
            sources.insert(article.id, article.source);
        }
        for (id, a, b) in &pairs {
            let Some(source) = sources.get(id) else {
                bail!("article {id:?} is not in {}", path.display());
            };
            groups.entry(source.clone()).or_default().push((*a, *b));
        }
    }
    let mut rows = Vec::new();
    if groups.len() > 1 {
        for (source, group) in &groups {
            rows.push(agreement_row(source, group)?);
        }
    }
    let all: Vec<(bool, bool)> = pairs.iter().map(|(_, a, b)| (*a, *b)).collect();
    let name = match groups.keys().next() {
        Some(only) if groups.len() == 1 => only.clone(),
        _ => "all".into(),
    };
    rows.push(agreement_row(&name, &all)?);

    let mut table = Table::new([
        "Source",
        "Spans",
        "CA code-mixed",
        "CA monolingual",
        "Disagree",
        "Kappa",
    ]);
    for r in &rows {
        table.row([
            r.source.clone(),
            r.spans.to_string(),
            r.tally.agree_cm.to_string(),
            r.tally.agree_mono.to_string(),
            r.tally.disagree.to_string(),
            fixed(r.kappa),
        ]);
    }
    print!("{table}");
    if let Some(path) = &args.json {
        write_json(path, &rows)?;
    }
    Ok(())
}
