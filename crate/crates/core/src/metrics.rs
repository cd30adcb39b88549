//! Code-mixing index and the dual multilinguality scores.
//!
//! A sentence is code-mixed when its CMI is strictly above `alpha`. A span's
//! multilinguality ratio (MR) is the fraction of its sentences that are
//! code-mixed, and the span is code-mixed when it has at least two sentences
//! and its MR is strictly above `beta`.

use serde::{Deserialize, Serialize};

use crate::corpus::{LanguageTag, Span, Token};
use crate::error::{Error, Result};

/// Sentence-level CMI threshold `alpha` in [0, 100] and span-level MR
/// threshold `beta` in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPair {
    pub alpha: f64,
    pub beta: f64,
}

impl ThresholdPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..=100.0).contains(&alpha) {
            return Err(Error::InvalidThresholds(format!("alpha {alpha} outside [0, 100]")));
        }
        if !beta.is_finite() || !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidThresholds(format!("beta {beta} outside [0, 1]")));
        }
        Ok(ThresholdPair { alpha, beta })
    }
}

/// Per-span scores under one threshold pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanScore {
    pub span_index: usize,
    pub sentence_cmis: Vec<f64>,
    pub flags: Vec<bool>,
    pub n_cm: usize,
    pub mr: f64,
    #[serde(with = "crate::jsonl::binary")]
    pub decision: bool,
}

/// CMI from language counts: `100 * (1 - max(w) / (n - u))`, or 0 when every
/// token is language independent.
fn cmi_from_counts(hindi: usize, english: usize, other: usize) -> f64 {
    let n = hindi + english + other;
    let lang = n - other;
    if lang == 0 {
        return 0.0;
    }
    let dominant = hindi.max(english);
    // (lang - dominant) / lang scaled by 100, kept in integers until the end
    // so that scores landing on integer thresholds compare exactly.
    (100 * (lang - dominant)) as f64 / lang as f64
}

/// CMI of a tag sequence. Empty input is an error.
pub fn cmi_from_tags(tags: &[LanguageTag]) -> Result<f64> {
    if tags.is_empty() {
        return Err(Error::EmptySentence);
    }
    let (mut h, mut e, mut o) = (0, 0, 0);
    for tag in tags {
        match tag {
            LanguageTag::Hindi => h += 1,
            LanguageTag::English => e += 1,
            LanguageTag::Other => o += 1,
        }
    }
    Ok(cmi_from_counts(h, e, o))
}

/// CMI of tagged tokens.
pub fn cmi_score(tokens: &[Token]) -> Result<f64> {
    if tokens.is_empty() {
        return Err(Error::EmptySentence);
    }
    let (mut h, mut e, mut o) = (0, 0, 0);
    for token in tokens {
        match token.tag {
            Some(LanguageTag::Hindi) => h += 1,
            Some(LanguageTag::English) => e += 1,
            Some(LanguageTag::Other) => o += 1,
            None => return Err(Error::Untagged(token.surface.clone())),
        }
    }
    Ok(cmi_from_counts(h, e, o))
}

/// Sentence code-mixedness: `cmi > alpha`.
pub fn f_cm(cmi: f64, alpha: f64) -> bool {
    cmi > alpha
}

/// Multilinguality ratio: code-mixed sentences over all sentences.
pub fn multilinguality_ratio(n_cm: usize, sentences: usize) -> f64 {
    n_cm as f64 / sentences as f64
}

/// Span code-mixedness: at least two sentences and `mr > beta`.
pub fn g_cm(eligible: bool, mr: f64, beta: f64) -> bool {
    eligible && mr > beta
}

/// Sentence CMIs of a span, using cached values where present.
pub fn sentence_cmis(span: &Span) -> Result<Vec<f64>> {
    span.sentences
        .iter()
        .map(|s| match s.cmi {
            Some(cmi) => Ok(cmi),
            None => cmi_score(&s.tokens),
        })
        .collect()
}

/// Scores a span from precomputed sentence CMIs.
pub fn score_cmis(
    span_index: usize,
    eligible: bool,
    sentence_cmis: Vec<f64>,
    thresholds: ThresholdPair,
) -> Result<SpanScore> {
    if sentence_cmis.is_empty() {
        return Err(Error::EmptySpan(span_index));
    }
    let flags: Vec<bool> = sentence_cmis.iter().map(|&cmi| f_cm(cmi, thresholds.alpha)).collect();
    let n_cm = flags.iter().filter(|&&f| f).count();
    let mr = multilinguality_ratio(n_cm, flags.len());
    Ok(SpanScore {
        span_index,
        sentence_cmis,
        flags,
        n_cm,
        mr,
        decision: g_cm(eligible, mr, thresholds.beta),
    })
}

pub fn score_span(span: &Span, thresholds: ThresholdPair) -> Result<SpanScore> {
    if span.sentences.is_empty() {
        return Err(Error::EmptySpan(span.index));
    }
    score_cmis(span.index, span.eligible, sentence_cmis(span)?, thresholds)
}

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

/// Dual-MEC summary: sentence CMI on a [0, 1] scale, and span MR.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MecStatistics {
    pub cmi: MeanStd,
    pub mr: MeanStd,
}

/// Streaming mean / population variance accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Moments {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * (self.count * other.count) as f64 / total as f64;
        self.count = total;
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn summary(&self) -> MeanStd {
        if self.count == 0 {
            return MeanStd::default();
        }
        MeanStd {
            mean: self.mean,
            std: (self.m2 / self.count as f64).max(0.0).sqrt(),
        }
    }
}

/// Pools sentence CMIs (scaled by 1/100) across spans and takes MR per span.
pub fn mec_statistics(spans: &[SpanScore]) -> MecStatistics {
    let mut cmi = Moments::default();
    let mut mr = Moments::default();
    for span in spans {
        for &c in &span.sentence_cmis {
            cmi.push(c / 100.0);
        }
        mr.push(span.mr);
    }
    MecStatistics {
        cmi: cmi.summary(),
        mr: mr.summary(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Sentence;
    use LanguageTag::{English as E, Hindi as H, Other as O};

    fn pair(alpha: f64, beta: f64) -> ThresholdPair {
        ThresholdPair::new(alpha, beta).unwrap()
    }

    /// A span whose sentence CMIs are exactly `cmis`, with no tokens needed.
    fn span_with(cmis: &[f64]) -> Span {
        let sentences = cmis
            .iter()
            .map(|&c| Sentence {
                text: String::new(),
                tokens: Vec::new(),
                cmi: Some(c),
            })
            .collect();
        Span::new(0, sentences)
    }

    #[test]
    fn cmi_examples() {
        assert_eq!(cmi_from_tags(&[H, H, H, H]).unwrap(), 0.0);
        assert_eq!(cmi_from_tags(&[O, O]).unwrap(), 0.0);
        assert_eq!(cmi_from_tags(&[H, H, H, E, O]).unwrap(), 25.0);
        assert_eq!(cmi_from_tags(&[H, E]).unwrap(), 50.0);
    }

    #[test]
    fn cmi_of_empty_is_an_error() {
        assert!(matches!(cmi_from_tags(&[]), Err(Error::EmptySentence)));
        assert!(matches!(cmi_score(&[]), Err(Error::EmptySentence)));
    }

    #[test]
    fn untagged_token_is_an_error() {
        let tokens = vec![Token::new("hello")];
        assert!(matches!(cmi_score(&tokens), Err(Error::Untagged(_))));
    }

    #[test]
    fn integer_boundaries_are_exact() {
        // 3 of 10 language tokens in the minority: exactly 30.
        let mut tags = vec![H; 7];
        tags.extend([E; 3]);
        let cmi = cmi_from_tags(&tags).unwrap();
        assert_eq!(cmi, 30.0);
        assert!(!f_cm(cmi, 30.0));
    }

    #[test]
    fn f_cm_is_strict() {
        assert!(f_cm(26.0, 25.0));
        assert!(!f_cm(25.0, 25.0));
        assert!(!f_cm(0.0, 0.0));
    }

    #[test]
    fn score_span_examples() {
        let s = score_span(&span_with(&[40.0, 0.0, 0.0, 0.0]), pair(10.0, 0.2)).unwrap();
        assert_eq!(s.flags, vec![true, false, false, false]);
        assert_eq!(s.n_cm, 1);
        assert_eq!(s.mr, 0.25);
        assert!(s.decision);

        let s = score_span(&span_with(&[0.0; 4]), pair(0.0, 0.0)).unwrap();
        assert_eq!(s.mr, 0.0);
        assert!(!s.decision);
    }

    #[test]
    fn mr_boundary_is_strict() {
        // k = 20 with 9 flagged gives MR 0.45 exactly.
        let mut cmis = vec![50.0; 9];
        cmis.extend([0.0; 11]);
        let s = score_span(&span_with(&cmis), pair(10.0, 0.45)).unwrap();
        assert_eq!(s.mr, 0.45);
        assert!(!s.decision);
    }

    #[test]
    fn single_sentence_span_is_never_code_mixed() {
        let s = score_span(&span_with(&[50.0]), pair(0.0, 0.0)).unwrap();
        assert_eq!(s.mr, 1.0);
        assert!(!s.decision);
    }

    #[test]
    fn empty_span_is_an_error() {
        assert!(matches!(
            score_span(&span_with(&[]), pair(0.0, 0.0)),
            Err(Error::EmptySpan(0))
        ));
    }

    #[test]
    fn threshold_bounds() {
        assert!(ThresholdPair::new(101.0, 0.5).is_err());
        assert!(ThresholdPair::new(10.0, 1.5).is_err());
        assert!(ThresholdPair::new(f64::NAN, 0.5).is_err());
        assert!(ThresholdPair::new(100.0, 1.0).is_ok());
    }

    #[test]
    fn mec_statistics_examples() {
        let score = |cmis: Vec<f64>, mr: f64| SpanScore {
            span_index: 0,
            flags: vec![false; cmis.len()],
            sentence_cmis: cmis,
            n_cm: 0,
            mr,
            decision: false,
        };
        let stats = mec_statistics(&[score(vec![0.0, 50.0], 0.5)]);
        assert_eq!(stats.cmi, MeanStd { mean: 0.25, std: 0.25 });
        assert_eq!(stats.mr, MeanStd { mean: 0.5, std: 0.0 });

        let stats = mec_statistics(&[score(vec![0.0], 0.0)]);
        assert_eq!(stats.cmi, MeanStd::default());

        assert_eq!(mec_statistics(&[]), MecStatistics::default());
    }

    #[test]
    fn moments_merge_matches_sequential() {
        let xs = [0.1, 0.7, 0.3, 0.9, 0.25, 0.0];
        let mut all = Moments::default();
        xs.iter().for_each(|&x| all.push(x));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..2].iter().for_each(|&x| a.push(x));
        xs[2..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        assert!((a.summary().mean - all.summary().mean).abs() < 1e-12);
        assert!((a.summary().std - all.summary().std).abs() < 1e-12);
        assert_eq!(a.count(), 6);
    }
}
