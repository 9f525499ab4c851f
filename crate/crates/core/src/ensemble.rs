//! Seed sweeps and median aggregation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{self, SimConfig, SimResult};
use crate::error::ConfigError;

/// Runs `base` once per seed, in parallel. Results come back in seed order.
pub fn run_seeds(base: &SimConfig, seeds: &[u64]) -> Result<Vec<SimResult>, ConfigError> {
    base.validate()?;
    seeds
        .par_iter()
        .map(|&seed| engine::run(base.with_seed(seed)))
        .collect()
}

/// Median of lifetime rounds where a missing value means the event did not
/// happen within `censor_at` rounds; such runs count as `censor_at + 1`.
pub fn median_rounds(values: impl IntoIterator<Item = Option<u32>>, censor_at: u32) -> Option<f64> {
    let mut v: Vec<u32> = values
        .into_iter()
        .map(|r| r.unwrap_or(censor_at.saturating_add(1)))
        .collect();
    if v.is_empty() {
        return None;
    }
    v.sort_unstable();
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid] as f64
    } else {
        (v[mid - 1] as f64 + v[mid] as f64) / 2.0
    })
}

/// Median lifetime summary of one variant across seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Medians {
    pub label: String,
    pub runs: usize,
    pub fnd: Option<f64>,
    pub hnd: Option<f64>,
    pub and_: Option<f64>,
    /// Runs that hit `max_rounds` with nodes still alive.
    pub censored: usize,
}

impl Medians {
    pub fn of(results: &[SimResult]) -> Self {
        let label = results.first().map(|r| r.config.label()).unwrap_or_default();
        let censor = results.iter().map(|r| r.config.max_rounds).max().unwrap_or(0);
        Self {
            label,
            runs: results.len(),
            fnd: median_rounds(results.iter().map(|r| r.fnd), censor),
            hnd: median_rounds(results.iter().map(|r| r.hnd), censor),
            and_: median_rounds(results.iter().map(|r| r.and_), censor),
            censored: results.iter().filter(|r| r.and_.is_none()).count(),
        }
    }
}
