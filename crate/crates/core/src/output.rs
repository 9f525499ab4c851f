//! Result files: per-round CSV series, JSON run summaries, comparison
//! deltas and ensemble medians.
//!
//! Layout under the output directory:
//!
//! ```text
//! alive.csv, summary.json                      single run
//! alive_<LABEL>.csv ×2, delta.json             comparison run
//! seed_<s>/…, medians.json                     one of the above per seed
//! ```

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::RunSpec;
use crate::engine::{RoundRecord, SimConfig, SimResult};
use crate::ensemble::{self, Medians};
use crate::error::ConfigError;

pub const CSV_HEADER: &str = "round,alive,sleeping,heads,e_th_joules,consumed_joules,residual_joules";

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("cannot write {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot encode {what}: {source}")]
    Encode {
        what: String,
        #[source]
        source: serde_json::Error,
    },
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Output(#[from] OutputError),
}

pub fn write_series_csv<W: Write>(mut w: W, series: &[RoundRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in series {
        let e_th = r.e_th.map(|e| e.to_string()).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.round, r.alive, r.sleeping, r.heads, e_th, r.consumed, r.residual
        )?;
    }
    Ok(())
}

pub fn series_csv(series: &[RoundRecord]) -> String {
    let mut buf = Vec::new();
    write_series_csv(&mut buf, series).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdtTable {
    #[serde(rename = "10")]
    pub k10: Option<u32>,
    #[serde(rename = "50")]
    pub k50: Option<u32>,
    #[serde(rename = "100")]
    pub k100: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub label: String,
    pub seed: u64,
    pub rounds: u32,
    pub fnd: Option<u32>,
    pub hnd: Option<u32>,
    #[serde(rename = "and")]
    pub and_: Option<u32>,
    pub kdt: KdtTable,
    pub total_consumed_joules: f64,
    pub deec_lifetime_rounds: Option<f64>,
    pub config: SimConfig,
}

impl From<&SimResult> for RunSummary {
    fn from(r: &SimResult) -> Self {
        let k = |pct| r.kdt(pct).expect("fixed percentages are valid");
        Self {
            label: r.config.label(),
            seed: r.seed(),
            rounds: r.rounds(),
            fnd: r.fnd,
            hnd: r.hnd,
            and_: r.and_,
            kdt: KdtTable {
                k10: k(10.0),
                k50: k(50.0),
                k100: k(100.0),
            },
            total_consumed_joules: r.total_consumed(),
            deec_lifetime_rounds: r.deec_lifetime_rounds,
            config: r.config,
        }
    }
}

fn diff(a: Option<u32>, b: Option<u32>) -> Option<i64> {
    Some(a? as i64 - b? as i64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub baseline: RunSummary,
    pub variant: RunSummary,
    /// `variant − baseline`; null when either side has no such event.
    pub fnd_delta: Option<i64>,
    pub and_delta: Option<i64>,
}

impl Delta {
    pub fn new(baseline: &SimResult, variant: &SimResult) -> Self {
        Self {
            baseline: baseline.into(),
            variant: variant.into(),
            fnd_delta: diff(variant.fnd, baseline.fnd),
            and_delta: diff(variant.and_, baseline.and_),
        }
    }
}

/// Writes files atomically (temp file + rename) and removes everything it
/// wrote if a later write fails.
struct Emitter {
    written: Vec<PathBuf>,
}

impl Emitter {
    fn new() -> Self {
        Self { written: Vec::new() }
    }

    fn io_err(path: &Path, source: io::Error) -> OutputError {
        OutputError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn dir(&mut self, dir: &Path) -> Result<(), OutputError> {
        fs::create_dir_all(dir).map_err(|e| Self::io_err(dir, e))
    }

    fn file(&mut self, path: PathBuf, contents: &[u8]) -> Result<(), OutputError> {
        let tmp = path.with_extension("partial");
        let result = fs::write(&tmp, contents).and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            return Err(Self::io_err(&path, e));
        }
        self.written.push(path);
        Ok(())
    }

    fn json<T: Serialize>(&mut self, path: PathBuf, value: &T) -> Result<(), OutputError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|source| OutputError::Encode {
            what: path.display().to_string(),
            source,
        })?;
        text.push('\n');
        self.file(path, text.as_bytes())
    }

    fn rollback(&mut self) {
        for path in self.written.drain(..) {
            let _ = fs::remove_file(path);
        }
    }
}

fn guarded<F>(f: F) -> Result<Vec<PathBuf>, OutputError>
where
    F: FnOnce(&mut Emitter) -> Result<(), OutputError>,
{
    let mut em = Emitter::new();
    match f(&mut em) {
        Ok(()) => Ok(em.written),
        Err(e) => {
            em.rollback();
            Err(e)
        }
    }
}

fn emit_single_into(em: &mut Emitter, result: &SimResult, dir: &Path) -> Result<(), OutputError> {
    em.dir(dir)?;
    em.file(dir.join("alive.csv"), series_csv(&result.series).as_bytes())?;
    em.json(dir.join("summary.json"), &RunSummary::from(result))
}

fn emit_comparison_into(
    em: &mut Emitter,
    baseline: &SimResult,
    variant: &SimResult,
    dir: &Path,
) -> Result<(), OutputError> {
    em.dir(dir)?;
    for r in [baseline, variant] {
        let name = format!("alive_{}.csv", r.config.label());
        em.file(dir.join(name), series_csv(&r.series).as_bytes())?;
    }
    em.json(dir.join("delta.json"), &Delta::new(baseline, variant))
}

/// `alive.csv` and `summary.json` for one run.
pub fn emit(result: &SimResult, dir: &Path) -> Result<Vec<PathBuf>, OutputError> {
    guarded(|em| emit_single_into(em, result, dir))
}

/// Two series files and a `delta.json`.
pub fn emit_comparison(baseline: &SimResult, variant: &SimResult, dir: &Path) -> Result<Vec<PathBuf>, OutputError> {
    guarded(|em| emit_comparison_into(em, baseline, variant, dir))
}

/// Results of executing a [`RunSpec`]: one entry per seed, each holding the
/// baseline (or only) run and, in comparison mode, the variant.
#[derive(Debug, Clone)]
pub struct Execution {
    pub runs: Vec<(SimResult, Option<SimResult>)>,
    pub files: Vec<PathBuf>,
}

/// Runs every seed of `spec` and writes the files.
pub fn execute(spec: &RunSpec) -> Result<Execution, RunError> {
    let (base_cfg, variant_cfg) = if spec.compare {
        (spec.sim.with_ehorm(false), Some(spec.sim.with_ehorm(true)))
    } else {
        (spec.sim, None)
    };
    let baselines = ensemble::run_seeds(&base_cfg, &spec.seeds)?;
    let variants = match variant_cfg {
        Some(cfg) => ensemble::run_seeds(&cfg, &spec.seeds)?.into_iter().map(Some).collect(),
        None => vec![None; spec.seeds.len()],
    };
    let runs: Vec<_> = baselines.into_iter().zip(variants).collect();

    let files = guarded(|em| {
        let ensemble = spec.is_ensemble();
        for (base, variant) in &runs {
            let dir = if ensemble {
                spec.out_dir.join(format!("seed_{}", base.seed()))
            } else {
                spec.out_dir.clone()
            };
            match variant {
                Some(v) => emit_comparison_into(em, base, v, &dir)?,
                None => emit_single_into(em, base, &dir)?,
            }
        }
        if ensemble {
            let mut medians = vec![Medians::of(&runs.iter().map(|(b, _)| b.clone()).collect::<Vec<_>>())];
            if spec.compare {
                let vs: Vec<SimResult> = runs.iter().filter_map(|(_, v)| v.clone()).collect();
                medians.push(Medians::of(&vs));
            }
            em.json(spec.out_dir.join("medians.json"), &medians)?;
        }
        Ok(())
    })?;
    Ok(Execution { runs, files })
}
