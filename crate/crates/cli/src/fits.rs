//! The fit file written by `mct fit` and the strategy lookup built from it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::Context;
use mct_core::metrics::{MecStatistics, ThresholdPair};
use mct_core::thresholds::{strategy_thresholds, GridSpec, StrategyInputs, StrategyKind, StrategySpec};
use serde::{Deserialize, Serialize};

use crate::config::{Category, PipelineConfig};
use crate::failure::usage;

/// Name of the pool holding every annotated span.
pub const COMBINED: &str = "combined";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Source,
    Category,
    Combined,
}

/// A group of annotated spans fitted together.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pool {
    Source(String),
    Category(Category),
    Combined,
}

impl Pool {
    pub fn scope(&self) -> Scope {
        match self {
            Pool::Source(_) => Scope::Source,
            Pool::Category(_) => Scope::Category,
            Pool::Combined => Scope::Combined,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Pool::Source(s) => s.clone(),
            Pool::Category(c) => c.to_string(),
            Pool::Combined => COMBINED.to_string(),
        }
    }
}

impl fmt::Display for Pool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pool::Source(s) => f.write_str(s),
            Pool::Category(c) => write!(f, "D_{c}"),
            Pool::Combined => f.write_str(COMBINED),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoolFit {
    pub scope: Scope,
    pub name: String,
    pub thresholds: ThresholdPair,
    pub accuracy: f64,
    pub spans: usize,
    pub positives: usize,
    /// Dual-MEC means and deviations of the pool's annotated spans, with
    /// sentence flags taken at the pool's fitted alpha.
    pub statistics: MecStatistics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitFile {
    pub tool: String,
    pub version: String,
    pub tagger: String,
    pub grid: GridSpec,
    pub pools: Vec<PoolFit>,
}

impl FitFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let file = File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
        serde_json::from_reader(BufReader::new(file)).with_context(|| format!("invalid fit file {}", path.display()))
    }

    pub fn get(&self, pool: &Pool) -> Option<&PoolFit> {
        let (scope, name) = (pool.scope(), pool.name());
        self.pools.iter().find(|p| p.scope == scope && p.name == name)
    }

    /// Looks a donor up by name: a source first, then a category, then the
    /// combined pool.
    pub fn donor(&self, name: &str) -> Option<&PoolFit> {
        [Scope::Source, Scope::Category, Scope::Combined]
            .into_iter()
            .find_map(|scope| self.pools.iter().find(|p| p.scope == scope && p.name == name))
    }
}

/// The strategy to apply to each source, or why there is none.
pub struct StrategyTable {
    by_source: HashMap<String, Result<StrategySpec, String>>,
}

impl StrategyTable {
    /// Resolves `kind` for every configured source.
    pub fn build(cfg: &PipelineConfig, fits: &FitFile, kind: StrategyKind) -> anyhow::Result<Self> {
        let donor = match kind {
            StrategyKind::Sdg => {
                let name = cfg
                    .donor
                    .as_deref()
                    .ok_or_else(|| usage("the sdg strategy needs --donor or `donor`"))?;
                let fit = fits
                    .donor(name)
                    .ok_or_else(|| usage(format!("donor pool {name:?} has no fit in the fit file")))?;
                Some((name.to_string(), fit.thresholds))
            }
            _ => None,
        };
        let by_source = cfg
            .categories
            .iter()
            .map(|(source, &category)| {
                let local = fits.get(&Pool::Source(source.clone()));
                let pool = fits.get(&Pool::Category(category));
                let combined = fits.get(&Pool::Combined);
                let inputs = StrategyInputs {
                    local_stats: local.map(|f| f.statistics),
                    category_stats: pool.map(|f| f.statistics),
                    donor: donor.clone(),
                    local_fit: local.map(|f| f.thresholds),
                    category_fit: pool.map(|f| f.thresholds),
                    combined_fit: combined.map(|f| f.thresholds),
                };
                let missing = missing_pools(
                    kind,
                    source,
                    category,
                    local.is_some(),
                    pool.is_some(),
                    combined.is_some(),
                );
                let spec = if missing.is_empty() {
                    strategy_thresholds(kind, &inputs).map_err(|e| e.to_string())
                } else {
                    Err(format!(
                        "{} for source {source:?} needs a fit for pool {}",
                        kind.as_str(),
                        missing.join(" and ")
                    ))
                };
                (source.clone(), spec)
            })
            .collect();
        Ok(StrategyTable { by_source })
    }

    /// The same pair for every source.
    pub fn fixed(cfg: &PipelineConfig, thresholds: ThresholdPair) -> Self {
        let spec = StrategySpec::Sdg {
            donor: "fixed".into(),
            thresholds,
        };
        StrategyTable {
            by_source: cfg.categories.keys().map(|s| (s.clone(), Ok(spec.clone()))).collect(),
        }
    }

    pub fn get(&self, source: &str) -> anyhow::Result<&StrategySpec> {
        match self.by_source.get(source) {
            Some(Ok(spec)) => Ok(spec),
            Some(Err(reason)) => Err(usage(reason.clone())),
            None => Err(usage(format!(
                "source {source:?} has no category; add it under [categories] in the config file"
            ))),
        }
    }

    /// Strategies of the sources that have one, by source name.
    pub fn resolved(&self) -> BTreeMap<&str, &StrategySpec> {
        self.by_source
            .iter()
            .filter_map(|(s, spec)| spec.as_ref().ok().map(|spec| (s.as_str(), spec)))
            .collect()
    }
}

fn missing_pools(
    kind: StrategyKind,
    source: &str,
    category: Category,
    local: bool,
    pool: bool,
    combined: bool,
) -> Vec<String> {
    let (need_local, need_pool, need_combined) = match kind {
        StrategyKind::La => (true, false, false),
        StrategyKind::Ga => (false, true, false),
        StrategyKind::Alg => (true, true, false),
        StrategyKind::Sdg => (false, false, false),
        StrategyKind::Mdg => (true, true, true),
    };
    let mut missing = Vec::new();
    if need_local && !local {
        missing.push(format!("{source:?}"));
    }
    if need_pool && !pool {
        missing.push(format!("{:?}", Pool::Category(category).to_string()));
    }
    if need_combined && !combined {
        missing.push(format!("{COMBINED:?}"));
    }
    missing
}
