//! Threshold fitting by grid search, and the generalization strategies that
//! decide which `(alpha, beta)` pairs to apply to a data source.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Span;
use crate::error::{Error, Result};
use crate::metrics::{f_cm, g_cm, multilinguality_ratio, score_span, sentence_cmis, MecStatistics, ThresholdPair};

/// One line of an annotation file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub article_id: String,
    pub span_index: usize,
    #[serde(with = "crate::jsonl::binary")]
    pub label: bool,
}

/// A span with its manual binary label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedSpan {
    pub article_id: String,
    pub span_index: usize,
    #[serde(with = "crate::jsonl::binary")]
    pub label: bool,
    pub span: Span,
}

/// Candidate values `low, low + step, ..., high` for each threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub alpha_low: f64,
    pub alpha_high: f64,
    pub alpha_step: f64,
    pub beta_low: f64,
    pub beta_high: f64,
    pub beta_step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            alpha_low: 0.0,
            alpha_high: 50.0,
            alpha_step: 1.0,
            beta_low: 0.0,
            beta_high: 0.5,
            beta_step: 0.025,
        }
    }
}

impl GridSpec {
    pub fn alpha_values(&self) -> Result<Vec<f64>> {
        let values = axis("alpha", self.alpha_low, self.alpha_high, self.alpha_step)?;
        check_range("alpha", &values, 100.0)?;
        Ok(values)
    }

    pub fn beta_values(&self) -> Result<Vec<f64>> {
        let values = axis("beta", self.beta_low, self.beta_high, self.beta_step)?;
        check_range("beta", &values, 1.0)?;
        Ok(values)
    }

    pub fn cell_count(&self) -> Result<usize> {
        Ok(self.alpha_values()?.len() * self.beta_values()?.len())
    }
}

/// `alow:ahigh:astep,blow:bhigh:bstep`, e.g. `0:50:1,0:0.5:0.025`.
impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGrid(format!("expected `alow:ahigh:astep,blow:bhigh:bstep`, got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let parse = |part: &str| -> Result<[f64; 3]> {
            let nums: Vec<f64> = part
                .split(':')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            nums.try_into().map_err(|_| bad())
        };
        let [alpha_low, alpha_high, alpha_step] = parse(a)?;
        let [beta_low, beta_high, beta_step] = parse(b)?;
        let grid = GridSpec {
            alpha_low,
            alpha_high,
            alpha_step,
            beta_low,
            beta_high,
            beta_step,
        };
        grid.cell_count()?;
        Ok(grid)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{},{}:{}:{}",
            self.alpha_low, self.alpha_high, self.alpha_step, self.beta_low, self.beta_high, self.beta_step
        )
    }
}

/// Smallest power of ten that turns every value into an integer.
fn decimal_scale(values: &[f64]) -> Option<f64> {
    (0..=9).map(|d| 10f64.powi(d)).find(|&scale| {
        values.iter().all(|&x| {
            let scaled = x * scale;
            (scaled - scaled.round()).abs() <= 1e-6 * scaled.abs().max(1.0)
        })
    })
}

/// Grid axis computed in scaled integers so that e.g. 19 steps of 0.025
/// land on exactly the double nearest 0.475.
fn axis(name: &str, low: f64, high: f64, step: f64) -> Result<Vec<f64>> {
    if !(low.is_finite() && high.is_finite() && step.is_finite()) {
        return Err(Error::InvalidGrid(format!("{name} bounds must be finite")));
    }
    if step <= 0.0 {
        return Err(Error::InvalidGrid(format!("{name} step must be positive")));
    }
    if low > high {
        return Err(Error::InvalidGrid(format!("{name} low {low} exceeds high {high}")));
    }
    let scale = decimal_scale(&[low, high, step])
        .ok_or_else(|| Error::InvalidGrid(format!("{name} values need more than 9 decimals")))?;
    let lo = (low * scale).round() as i64;
    let hi = (high * scale).round() as i64;
    let st = (step * scale).round() as i64;
    let count = (hi - lo) / st + 1;
    if count > 1_000_000 {
        return Err(Error::InvalidGrid(format!("{name} axis has {count} values")));
    }
    Ok((0..count).map(|i| (lo + i * st) as f64 / scale).collect())
}

fn check_range(name: &str, values: &[f64], max: f64) -> Result<()> {
    match values.iter().find(|&&v| !(0.0..=max).contains(&v)) {
        Some(v) => Err(Error::InvalidGrid(format!("{name} value {v} outside [0, {max}]"))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCell {
    pub alpha: f64,
    pub beta: f64,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub thresholds: ThresholdPair,
    /// Percentage of spans whose decision matches the label.
    pub accuracy: f64,
    pub spans: usize,
    /// Every evaluated cell, alpha-major in ascending order.
    pub accuracy_surface: Vec<SurfaceCell>,
}

/// Exhaustive grid search for the pair that classifies the most annotated
/// spans correctly. Ties go to the smallest alpha, then the smallest beta.
pub fn fit_thresholds(data: &[AnnotatedSpan], grid: &GridSpec) -> Result<FitResult> {
    if data.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let mut seen = HashSet::new();
    for item in data {
        if !seen.insert((item.article_id.as_str(), item.span_index)) {
            return Err(Error::DuplicateSpan {
                article_id: item.article_id.clone(),
                span_index: item.span_index,
            });
        }
        if item.span.sentences.is_empty() {
            return Err(Error::EmptySpan(item.span_index));
        }
    }
    let alphas = grid.alpha_values()?;
    let betas = grid.beta_values()?;

    let prepared: Vec<(Vec<f64>, bool, bool)> = data
        .iter()
        .map(|a| Ok((sentence_cmis(&a.span)?, a.span.eligible, a.label)))
        .collect::<Result<_>>()?;

    let total = data.len();
    let mut surface = Vec::with_capacity(alphas.len() * betas.len());
    let mut best: Option<(usize, ThresholdPair)> = None;
    let mut ratios = vec![0.0; prepared.len()];

    for &alpha in &alphas {
        for (ratio, (cmis, _, _)) in ratios.iter_mut().zip(&prepared) {
            let n_cm = cmis.iter().filter(|&&c| f_cm(c, alpha)).count();
            *ratio = multilinguality_ratio(n_cm, cmis.len());
        }
        for &beta in &betas {
            let hits = ratios
                .iter()
                .zip(&prepared)
                .filter(|(&mr, (_, eligible, label))| g_cm(*eligible, mr, beta) == *label)
                .count();
            surface.push(SurfaceCell {
                alpha,
                beta,
                accuracy: accuracy_pct(hits, total),
            });
            if best.is_none_or(|(h, _)| hits > h) {
                best = Some((hits, ThresholdPair { alpha, beta }));
            }
        }
    }

    let (hits, thresholds) = best.expect("grid has at least one cell");
    Ok(FitResult {
        thresholds,
        accuracy: accuracy_pct(hits, total),
        spans: total,
        accuracy_surface: surface,
    })
}

fn accuracy_pct(hits: usize, total: usize) -> f64 {
    100.0 * hits as f64 / total as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    /// Local average of the source's dual-MEC scores.
    La,
    /// Average over the source's category pool.
    Ga,
    /// Mean of the LA and GA pairs.
    Alg,
    /// Pair fitted on one donor source.
    Sdg,
    /// Majority vote of the source, category and combined fits.
    Mdg,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 5] = [
        StrategyKind::La,
        StrategyKind::Ga,
        StrategyKind::Alg,
        StrategyKind::Sdg,
        StrategyKind::Mdg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyKind::La => "la",
            StrategyKind::Ga => "ga",
            StrategyKind::Alg => "alg",
            StrategyKind::Sdg => "sdg",
            StrategyKind::Mdg => "mdg",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("strategy must be one of la, ga, alg, sdg, mdg; got {s:?}"))
    }
}

/// The thresholds a strategy applies to one data source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StrategySpec {
    La {
        thresholds: ThresholdPair,
    },
    Ga {
        thresholds: ThresholdPair,
    },
    Alg {
        thresholds: ThresholdPair,
    },
    Sdg {
        donor: String,
        thresholds: ThresholdPair,
    },
    Mdg {
        local: ThresholdPair,
        category: ThresholdPair,
        combined: ThresholdPair,
    },
}

impl StrategySpec {
    pub fn kind(&self) -> StrategyKind {
        match self {
            StrategySpec::La { .. } => StrategyKind::La,
            StrategySpec::Ga { .. } => StrategyKind::Ga,
            StrategySpec::Alg { .. } => StrategyKind::Alg,
            StrategySpec::Sdg { .. } => StrategyKind::Sdg,
            StrategySpec::Mdg { .. } => StrategyKind::Mdg,
        }
    }

    pub fn pairs(&self) -> Vec<ThresholdPair> {
        match self {
            StrategySpec::La { thresholds }
            | StrategySpec::Ga { thresholds }
            | StrategySpec::Alg { thresholds }
            | StrategySpec::Sdg { thresholds, .. } => vec![*thresholds],
            StrategySpec::Mdg {
                local,
                category,
                combined,
            } => vec![*local, *category, *combined],
        }
    }
}

/// What a strategy may draw on. Only the fields its kind needs must be set.
#[derive(Debug, Clone, Default)]
pub struct StrategyInputs {
    /// Dual-MEC means of the source itself (CMI on the [0, 1] scale).
    pub local_stats: Option<MecStatistics>,
    /// Dual-MEC means of the source's category pool.
    pub category_stats: Option<MecStatistics>,
    /// Donor name and its fitted pair.
    pub donor: Option<(String, ThresholdPair)>,
    pub local_fit: Option<ThresholdPair>,
    pub category_fit: Option<ThresholdPair>,
    pub combined_fit: Option<ThresholdPair>,
}

fn mean_pair(stats: &MecStatistics) -> Result<ThresholdPair> {
    ThresholdPair::new(
        (100.0 * stats.cmi.mean).clamp(0.0, 100.0),
        stats.mr.mean.clamp(0.0, 1.0),
    )
}

pub fn strategy_thresholds(kind: StrategyKind, inputs: &StrategyInputs) -> Result<StrategySpec> {
    fn need<T: Clone>(value: &Option<T>, name: &str) -> Result<T> {
        value.clone().ok_or_else(|| Error::MissingStatistic(name.to_string()))
    }
    Ok(match kind {
        StrategyKind::La => StrategySpec::La {
            thresholds: mean_pair(&need(&inputs.local_stats, "local dual-MEC means")?)?,
        },
        StrategyKind::Ga => StrategySpec::Ga {
            thresholds: mean_pair(&need(&inputs.category_stats, "category dual-MEC means")?)?,
        },
        StrategyKind::Alg => {
            let la = mean_pair(&need(&inputs.local_stats, "local dual-MEC means")?)?;
            let ga = mean_pair(&need(&inputs.category_stats, "category dual-MEC means")?)?;
            StrategySpec::Alg {
                thresholds: ThresholdPair::new((la.alpha + ga.alpha) / 2.0, (la.beta + ga.beta) / 2.0)?,
            }
        }
        StrategyKind::Sdg => {
            let (donor, thresholds) = need(&inputs.donor, "donor fit")?;
            StrategySpec::Sdg { donor, thresholds }
        }
        StrategyKind::Mdg => StrategySpec::Mdg {
            local: need(&inputs.local_fit, "local fit")?,
            category: need(&inputs.category_fit, "category fit")?,
            combined: need(&inputs.combined_fit, "combined fit")?,
        },
    })
}

/// Applies a strategy to one span. MDG needs at least two of its three
/// component decisions to be positive.
pub fn classify_span(span: &Span, strategy: &StrategySpec) -> Result<bool> {
    match strategy {
        StrategySpec::Mdg {
            local,
            category,
            combined,
        } => {
            let votes = [local, category, combined]
                .into_iter()
                .map(|pair| score_span(span, *pair).map(|s| s.decision as usize))
                .sum::<Result<usize>>()?;
            Ok(votes >= 2)
        }
        single => score_span(span, single.pairs()[0]).map(|s| s.decision),
    }
}
