//! Evaluation metrics, annotator agreement and corpus statistics.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::corpus::{Article, LanguageTag, Span, Token};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub article_id: String,
    pub span_index: usize,
    #[serde(with = "crate::jsonl::binary")]
    pub predicted: bool,
    #[serde(with = "crate::jsonl::binary")]
    pub label: bool,
}

/// Predictions joined with gold labels, one per (article, span).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PredictionSet {
    records: Vec<PredictionRecord>,
}

impl PredictionSet {
    pub fn new(records: Vec<PredictionRecord>) -> Result<Self> {
        let mut seen = HashSet::new();
        for r in &records {
            if !seen.insert((r.article_id.as_str(), r.span_index)) {
                return Err(Error::DuplicateSpan {
                    article_id: r.article_id.clone(),
                    span_index: r.span_index,
                });
            }
        }
        Ok(PredictionSet { records })
    }

    pub fn records(&self) -> &[PredictionRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of records per article, for when the full span counts are
    /// not known.
    pub fn spans_per_article(&self) -> HashMap<String, usize> {
        let mut counts = HashMap::new();
        for r in &self.records {
            *counts.entry(r.article_id.clone()).or_insert(0) += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl Confusion {
    pub fn add(&mut self, predicted: bool, label: bool) {
        match (predicted, label) {
            (true, true) => self.tp += 1,
            (true, false) => self.fp += 1,
            (false, false) => self.tn += 1,
            (false, true) => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub accuracy_pct: f64,
    pub fmr_pct: f64,
    pub d_at_10_pct: f64,
    pub counts: Confusion,
    /// Set when there were no monolingual spans, so FMR is reported as 0.
    pub fmr_undefined: bool,
}

impl EvalReport {
    pub fn error_rate_pct(&self) -> f64 {
        let c = &self.counts;
        100.0 * (c.fp + c.fn_) as f64 / c.total() as f64
    }
}

/// Accuracy, false MCT rate and D@10.
///
/// `spans_per_article` gives the total number of spans of each article for
/// D@10; every article in `preds` must be present.
pub fn evaluate(preds: &PredictionSet, spans_per_article: &HashMap<String, usize>) -> Result<EvalReport> {
    if preds.is_empty() {
        return Err(Error::Evaluation("no predictions to evaluate".into()));
    }
    let mut counts = Confusion::default();
    for r in preds.records() {
        counts.add(r.predicted, r.label);
    }
    let total = counts.total() as f64;
    let monolingual = counts.fp + counts.tn;
    Ok(EvalReport {
        accuracy_pct: 100.0 * (counts.tp + counts.tn) as f64 / total,
        fmr_pct: if monolingual == 0 {
            0.0
        } else {
            100.0 * counts.fp as f64 / monolingual as f64
        },
        d_at_10_pct: d_at_10(preds, spans_per_article)?,
        counts,
        fmr_undefined: monolingual == 0,
    })
}

/// Percentage of articles in which correctly identified code-mixed spans
/// make up strictly more than 10% of the article's spans.
pub fn d_at_10(preds: &PredictionSet, spans_per_article: &HashMap<String, usize>) -> Result<f64> {
    let mut true_positives: BTreeMap<&str, usize> = BTreeMap::new();
    for r in preds.records() {
        let entry = true_positives.entry(r.article_id.as_str()).or_insert(0);
        if r.predicted && r.label {
            *entry += 1;
        }
    }
    if true_positives.is_empty() {
        return Ok(0.0);
    }
    let mut qualifying = 0usize;
    for (&article, &tp) in &true_positives {
        let spans = *spans_per_article
            .get(article)
            .ok_or_else(|| Error::Evaluation(format!("article {article:?} missing from span counts")))?;
        if spans == 0 {
            return Err(Error::Evaluation(format!("article {article:?} has zero spans")));
        }
        // tp / spans > 1/10
        if 10 * tp > spans {
            qualifying += 1;
        }
    }
    Ok(100.0 * qualifying as f64 / true_positives.len() as f64)
}

/// Cohen's kappa for two binary label sequences.
///
/// When chance agreement is 1 (both annotators constant and equal), kappa
/// is 1 if they also agree everywhere and 0 otherwise.
pub fn cohen_kappa(labels_a: &[bool], labels_b: &[bool]) -> Result<f64> {
    if labels_a.len() != labels_b.len() {
        return Err(Error::LengthMismatch(labels_a.len(), labels_b.len()));
    }
    if labels_a.is_empty() {
        return Err(Error::Evaluation("kappa of empty label lists".into()));
    }
    let n = labels_a.len() as f64;
    let agree = labels_a.iter().zip(labels_b).filter(|(a, b)| a == b).count() as f64;
    let pos_a = labels_a.iter().filter(|&&x| x).count() as f64;
    let pos_b = labels_b.iter().filter(|&&x| x).count() as f64;
    let p_o = agree / n;
    let p_e = (pos_a / n) * (pos_b / n) + ((n - pos_a) / n) * ((n - pos_b) / n);
    if p_e >= 1.0 {
        return Ok(if p_o >= 1.0 { 1.0 } else { 0.0 });
    }
    Ok((p_o - p_e) / (1.0 - p_e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AgreementTally {
    pub agree_cm: usize,
    pub agree_mono: usize,
    pub disagree: usize,
}

pub fn complete_agreement(labels_a: &[bool], labels_b: &[bool]) -> Result<AgreementTally> {
    if labels_a.len() != labels_b.len() {
        return Err(Error::LengthMismatch(labels_a.len(), labels_b.len()));
    }
    let mut tally = AgreementTally::default();
    for (&a, &b) in labels_a.iter().zip(labels_b) {
        match (a, b) {
            (true, true) => tally.agree_cm += 1,
            (false, false) => tally.agree_mono += 1,
            _ => tally.disagree += 1,
        }
    }
    Ok(tally)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub articles: usize,
    pub avg_words: f64,
    pub avg_chars: f64,
    pub pct_hindi: f64,
    pub pct_english: f64,
}

/// A token counts as a word when it has at least one letter or digit.
pub fn is_word(token: &Token) -> bool {
    token.surface.chars().any(char::is_alphanumeric) || token.surface.chars().any(crate::corpus::is_devanagari_letter)
}

pub fn span_word_count(span: &Span) -> usize {
    span.tokens().filter(|t| is_word(t)).count()
}

/// Streaming form of [`corpus_stats`]; merge partial results by adding.
#[derive(Debug, Clone, Copy, Default)]
pub struct CorpusStatsBuilder {
    articles: usize,
    words: usize,
    chars: usize,
    tokens: usize,
    hindi: usize,
    english: usize,
}

impl CorpusStatsBuilder {
    pub fn add(&mut self, article: &Article) {
        self.articles += 1;
        self.chars += article.body.chars().count();
        for token in article.tokens() {
            self.tokens += 1;
            if is_word(token) {
                self.words += 1;
            }
            match token.tag {
                Some(LanguageTag::Hindi) => self.hindi += 1,
                Some(LanguageTag::English) => self.english += 1,
                _ => {}
            }
        }
    }

    pub fn merge(&mut self, other: &CorpusStatsBuilder) {
        self.articles += other.articles;
        self.words += other.words;
        self.chars += other.chars;
        self.tokens += other.tokens;
        self.hindi += other.hindi;
        self.english += other.english;
    }

    pub fn finish(&self) -> Result<CorpusStats> {
        if self.articles == 0 {
            return Err(Error::Evaluation("corpus statistics of zero articles".into()));
        }
        let pct = |count: usize| {
            if self.tokens == 0 {
                0.0
            } else {
                100.0 * count as f64 / self.tokens as f64
            }
        };
        Ok(CorpusStats {
            articles: self.articles,
            avg_words: self.words as f64 / self.articles as f64,
            avg_chars: self.chars as f64 / self.articles as f64,
            pct_hindi: pct(self.hindi),
            pct_english: pct(self.english),
        })
    }
}

/// Table-style statistics over tagged articles: average words and
/// characters per article and the share of Hindi and English tokens.
pub fn corpus_stats(articles: &[Article]) -> Result<CorpusStats> {
    let mut builder = CorpusStatsBuilder::default();
    articles.iter().for_each(|a| builder.add(a));
    builder.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Sentence;

    fn rec(article: &str, span: usize, predicted: bool, label: bool) -> PredictionRecord {
        PredictionRecord {
            article_id: article.into(),
            span_index: span,
            predicted,
            label,
        }
    }

    fn set(records: Vec<PredictionRecord>) -> PredictionSet {
        PredictionSet::new(records).unwrap()
    }

    #[test]
    fn accuracy_three_of_four() {
        let preds = set(vec![
            rec("a", 0, true, true),
            rec("a", 1, false, false),
            rec("a", 2, true, false),
            rec("a", 3, false, false),
        ]);
        let report = evaluate(&preds, &preds.spans_per_article()).unwrap();
        assert_eq!(report.accuracy_pct, 75.0);
        assert_eq!(report.error_rate_pct(), 25.0);
        assert_eq!(
            report.counts,
            Confusion {
                tp: 1,
                fp: 1,
                tn: 2,
                fn_: 0
            }
        );
    }

    #[test]
    fn fmr_one_in_five() {
        let preds = set((0..5).map(|i| rec("a", i, i == 0, false)).collect());
        let report = evaluate(&preds, &preds.spans_per_article()).unwrap();
        assert_eq!(report.fmr_pct, 20.0);
        assert!(!report.fmr_undefined);
    }

    #[test]
    fn perfect_predictions() {
        let preds = set(vec![rec("a", 0, true, true), rec("a", 1, false, false)]);
        let report = evaluate(&preds, &preds.spans_per_article()).unwrap();
        assert_eq!((report.accuracy_pct, report.fmr_pct), (100.0, 0.0));
        assert_eq!(report.d_at_10_pct, 100.0);
    }

    #[test]
    fn fmr_without_monolingual_spans() {
        let preds = set(vec![rec("a", 0, false, true)]);
        let report = evaluate(&preds, &preds.spans_per_article()).unwrap();
        assert_eq!(report.fmr_pct, 0.0);
        assert!(report.fmr_undefined);
    }

    #[test]
    fn empty_and_duplicate_inputs() {
        assert!(evaluate(&PredictionSet::default(), &HashMap::new()).is_err());
        assert!(PredictionSet::new(vec![rec("a", 0, true, true), rec("a", 0, false, true)]).is_err());
    }

    #[test]
    fn d_at_10_boundaries() {
        let spans: HashMap<String, usize> = [("a".to_string(), 10)].into();
        let two = set(vec![rec("a", 0, true, true), rec("a", 1, true, true)]);
        assert_eq!(d_at_10(&two, &spans).unwrap(), 100.0);
        let one = set(vec![rec("a", 0, true, true), rec("a", 1, true, false)]);
        assert_eq!(d_at_10(&one, &spans).unwrap(), 0.0);
    }

    #[test]
    fn d_at_10_half_of_articles() {
        let spans: HashMap<String, usize> = ["a", "b", "c", "d"].iter().map(|s| (s.to_string(), 4)).collect();
        let preds = set(vec![
            rec("a", 0, true, true),
            rec("b", 0, true, true),
            rec("c", 0, true, false),
            rec("d", 0, false, true),
        ]);
        assert_eq!(d_at_10(&preds, &spans).unwrap(), 50.0);
    }

    #[test]
    fn d_at_10_missing_article() {
        let preds = set(vec![rec("a", 0, true, true)]);
        assert!(d_at_10(&preds, &HashMap::new()).is_err());
    }

    #[test]
    fn kappa_examples() {
        let a = [true, false, true, false];
        let b = [false, true, false, true];
        assert_eq!(cohen_kappa(&a, &a).unwrap(), 1.0);
        assert_eq!(cohen_kappa(&a, &b).unwrap(), -1.0);
        assert_eq!(cohen_kappa(&[true; 3], &[true; 3]).unwrap(), 1.0);
        assert!(cohen_kappa(&a, &b[..3]).is_err());
        assert!(cohen_kappa(&[], &[]).is_err());
    }

    #[test]
    fn kappa_hand_computed() {
        // p_o = 0.8, p_e = 0.6*0.4 + 0.4*0.6 = 0.48 -> (0.8-0.48)/0.52
        let a = [true, true, true, false, false];
        let b = [true, true, false, false, false];
        let k = cohen_kappa(&a, &b).unwrap();
        assert!((k - 0.32 / 0.52).abs() < 1e-12);
        assert_eq!(k, cohen_kappa(&b, &a).unwrap());
    }

    #[test]
    fn agreement_tallies() {
        let a = [true, false, false];
        assert_eq!(
            complete_agreement(&a, &a).unwrap(),
            AgreementTally {
                agree_cm: 1,
                agree_mono: 2,
                disagree: 0
            }
        );
        assert_eq!(
            complete_agreement(&[true, false], &[false, false]).unwrap(),
            AgreementTally {
                agree_cm: 0,
                agree_mono: 1,
                disagree: 1
            }
        );
        assert!(complete_agreement(&[true], &[]).is_err());
    }

    fn article_with(tags: &[(&str, LanguageTag)], body: &str) -> Article {
        let tokens = tags.iter().map(|&(s, t)| Token::tagged(s, t)).collect();
        let mut article = Article::new("x", "DB", body);
        article.spans = vec![Span::new(
            0,
            vec![Sentence {
                text: body.into(),
                tokens,
                cmi: None,
            }],
        )];
        article
    }

    #[test]
    fn corpus_stats_examples() {
        use LanguageTag::*;
        let words = |n: usize| vec![("w", Hindi); n];
        let a = article_with(&words(10), "");
        let b = article_with(&words(20), "");
        let stats = corpus_stats(&[a, b]).unwrap();
        assert_eq!(stats.avg_words, 15.0);
        assert_eq!((stats.pct_hindi, stats.pct_english), (100.0, 0.0));

        let c = article_with(&[("a", Hindi), ("b", Hindi), ("c", English), (",", Other)], "ab c,");
        let stats = corpus_stats(&[c]).unwrap();
        assert_eq!((stats.pct_hindi, stats.pct_english), (50.0, 25.0));
        assert_eq!(stats.avg_words, 3.0);
        assert_eq!(stats.avg_chars, 5.0);

        assert!(corpus_stats(&[]).is_err());
    }
}
