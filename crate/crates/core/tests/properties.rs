use std::collections::HashMap;

use mct_core::corpus::{segment_sentences, tokenize, Article, LanguageTag, ParagraphBreak, Sentence, Span, Token};
use mct_core::eval::{cohen_kappa, corpus_stats, d_at_10, evaluate, PredictionRecord, PredictionSet};
use mct_core::lid::{transliterate_deva, LexiconTagger, Tagger};
use mct_core::metrics::{cmi_score, score_span, ThresholdPair};
use proptest::prelude::*;

fn tag() -> impl Strategy<Value = LanguageTag> {
    prop_oneof![
        Just(LanguageTag::Hindi),
        Just(LanguageTag::English),
        Just(LanguageTag::Other)
    ]
}

fn tokens_of(tags: &[LanguageTag]) -> Vec<Token> {
    tags.iter().map(|&t| Token::tagged("w", t)).collect()
}

fn span_of(sentences: &[Vec<LanguageTag>]) -> Span {
    let sentences = sentences
        .iter()
        .map(|tags| {
            let mut s = Sentence {
                text: String::new(),
                tokens: tokens_of(tags),
                cmi: None,
            };
            s.update_cmi().unwrap();
            s
        })
        .collect();
    Span::new(0, sentences)
}

fn sentences() -> impl Strategy<Value = Vec<Vec<LanguageTag>>> {
    prop::collection::vec(prop::collection::vec(tag(), 1..10), 1..7)
}

/// Article-like text: words in both scripts, punctuation and line breaks.
fn body() -> impl Strategy<Value = String> {
    let piece = prop_oneof![
        "[a-zA-Z]{1,8}",
        Just("भारत".to_string()),
        Just("सड़क".to_string()),
        Just("U.S.".to_string()),
        "[0-9]{1,4}",
        Just(" ".to_string()),
        Just(" ".to_string()),
        Just(". ".to_string()),
        Just(" । ".to_string()),
        Just("।".to_string()),
        Just("? ".to_string()),
        Just("!\" ".to_string()),
        Just(", ".to_string()),
        Just("\n".to_string()),
        Just("\n\n".to_string()),
        Just("\t".to_string()),
    ];
    prop::collection::vec(piece, 0..60).prop_map(|p| p.concat())
}

/// Well-formed syllables: an independent vowel, or a consonant with an
/// optional nukta and a vowel sign or virama, then an optional nasal or visarga.
fn hindi_word() -> impl Strategy<Value = String> {
    let syllable = (
        prop_oneof![
            "[\u{0905}-\u{090B}\u{090F}\u{0910}\u{0913}\u{0914}]",
            "[\u{0915}-\u{0939}]\u{093C}?[\u{093E}-\u{0943}\u{0947}\u{0948}\u{094B}\u{094C}\u{094D}]?",
        ],
        "[\u{0901}-\u{0903}]?",
    )
        .prop_map(|(core, mark)| core + &mark);
    prop::collection::vec(syllable, 1..6).prop_map(|s| s.concat())
}

fn dense(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn records() -> impl Strategy<Value = Vec<PredictionRecord>> {
    prop::collection::vec((0..6usize, any::<bool>(), any::<bool>()), 1..40).prop_map(|rows| {
        let mut next: HashMap<usize, usize> = HashMap::new();
        rows.into_iter()
            .map(|(article, predicted, label)| {
                let index = next.entry(article).or_default();
                *index += 1;
                PredictionRecord {
                    article_id: format!("a{article}"),
                    span_index: *index - 1,
                    predicted,
                    label,
                }
            })
            .collect()
    })
}

fn span_totals(records: &[PredictionRecord], extra: usize) -> HashMap<String, usize> {
    let mut totals = HashMap::new();
    for r in records {
        let n = totals.entry(r.article_id.clone()).or_insert(0);
        *n = (*n).max(r.span_index + 1 + extra);
    }
    totals
}

proptest! {
    #[test]
    fn segmentation_keeps_every_visible_character(text in body(), newline in any::<bool>()) {
        let mode = if newline { ParagraphBreak::Newline } else { ParagraphBreak::Blank };
        let paragraphs = segment_sentences(&text, mode);
        let joined: String = paragraphs.iter().flatten().map(|s| dense(s)).collect();
        prop_assert_eq!(joined, dense(&text));
        for sentence in paragraphs.iter().flatten() {
            prop_assert!(!sentence.trim().is_empty());
        }
        prop_assert_eq!(segment_sentences(&text, mode), paragraphs);
    }

    #[test]
    fn tokenization_keeps_every_visible_character(text in body()) {
        let tokens = tokenize(&text);
        let joined: String = tokens.iter().map(|t| t.surface.as_str()).collect();
        prop_assert_eq!(joined, dense(&text));
    }

    #[test]
    fn cmi_is_bounded_and_order_free(tags in prop::collection::vec(tag(), 1..30), seed in any::<u64>()) {
        let cmi = cmi_score(&tokens_of(&tags)).unwrap();
        prop_assert!((0.0..=50.0).contains(&cmi));
        let mut shuffled = tags.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize);
        }
        prop_assert_eq!(cmi_score(&tokens_of(&shuffled)).unwrap(), cmi);
    }

    #[test]
    fn thresholds_are_monotone(
        s in sentences(),
        a in 0.0..=100.0f64,
        da in 0.0..=100.0f64,
        b in 0.0..=1.0f64,
        db in 0.0..=1.0f64,
    ) {
        let span = span_of(&s);
        let a2 = (a + da).min(100.0);
        let b2 = (b + db).min(1.0);
        let base = score_span(&span, ThresholdPair::new(a, b).unwrap()).unwrap();
        let stricter_alpha = score_span(&span, ThresholdPair::new(a2, b).unwrap()).unwrap();
        let stricter_beta = score_span(&span, ThresholdPair::new(a, b2).unwrap()).unwrap();
        prop_assert!(stricter_alpha.n_cm <= base.n_cm);
        prop_assert!(!stricter_alpha.decision || base.decision);
        prop_assert!(!stricter_beta.decision || base.decision);
    }

    #[test]
    fn single_sentence_spans_are_never_code_mixed(tags in prop::collection::vec(tag(), 1..10)) {
        let span = span_of(&[tags]);
        let score = score_span(&span, ThresholdPair::new(0.0, 0.0).unwrap()).unwrap();
        prop_assert!(!score.decision);
    }

    #[test]
    fn kappa_is_symmetric_and_bounded(pairs in prop::collection::vec((any::<bool>(), any::<bool>()), 1..60)) {
        let (a, b): (Vec<bool>, Vec<bool>) = pairs.into_iter().unzip();
        let ab = cohen_kappa(&a, &b).unwrap();
        prop_assert_eq!(ab, cohen_kappa(&b, &a).unwrap());
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&ab));
        prop_assert_eq!(cohen_kappa(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn metrics_ignore_record_order(rs in records(), extra in 0..12usize, rotate in any::<usize>()) {
        let totals = span_totals(&rs, extra);
        let mut reordered = rs.clone();
        reordered.reverse();
        let len = reordered.len();
        reordered.rotate_left(rotate % len);

        let a = PredictionSet::new(rs).unwrap();
        let b = PredictionSet::new(reordered).unwrap();
        prop_assert_eq!(d_at_10(&a, &totals).unwrap(), d_at_10(&b, &totals).unwrap());
        let (ra, rb) = (evaluate(&a, &totals).unwrap(), evaluate(&b, &totals).unwrap());
        prop_assert_eq!(ra.fmr_pct, rb.fmr_pct);
        prop_assert_eq!(ra.accuracy_pct, rb.accuracy_pct);
        prop_assert!((0.0..=100.0).contains(&ra.d_at_10_pct));
    }

    #[test]
    fn transliteration_is_idempotent(word in "[\u{0900}-\u{097F}a-z]{1,12}") {
        let once = transliterate_deva(&word);
        prop_assert_eq!(transliterate_deva(&once), once);
    }

    #[test]
    fn hindi_words_romanize_fully(word in hindi_word()) {
        let roman = transliterate_deva(&word);
        let latin = roman.chars().all(|c| !('\u{0900}'..='\u{097F}').contains(&c));
        prop_assert!(latin, "devanagari left in {:?} from {:?}", roman, word);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn corpus_stats_ignore_article_order(bodies in prop::collection::vec(body(), 1..8), rotate in any::<usize>()) {
        let tagger = Tagger::lexicon(LexiconTagger::shipped());
        let articles: Vec<Article> = bodies
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let article = Article::new(format!("a{i}"), "S", b.clone()).segment(ParagraphBreak::Blank);
                tagger.tag_article(article).unwrap()
            })
            .collect();
        let mut reordered = articles.clone();
        reordered.reverse();
        let len = reordered.len();
        reordered.rotate_left(rotate % len);
        match (corpus_stats(&articles), corpus_stats(&reordered)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }
}
