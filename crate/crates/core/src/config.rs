//! Run configuration: a flat `key = value` file plus `--key=value` flag
//! overrides.
//!
//! ```text
//! # 100 nodes on a 100 m × 100 m field
//! n = 100
//! protocol = sep
//! ehorm = on
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::SimConfig;
use crate::error::ConfigError;

pub const KEYS: [&str; 13] = [
    "n",
    "width_m",
    "height_m",
    "e0_j",
    "p",
    "hetero_m",
    "hetero_a",
    "packet_bits",
    "protocol",
    "ehorm",
    "ns_cap",
    "max_rounds",
    "seed",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub sim: SimConfig,
    pub out_dir: PathBuf,
    /// Run the baseline and the sleep-scheduled variant side by side.
    pub compare: bool,
    /// One run per seed; never empty.
    pub seeds: Vec<u64>,
}

impl Default for RunSpec {
    fn default() -> Self {
        let sim = SimConfig::default();
        Self {
            seeds: vec![sim.seed],
            sim,
            out_dir: PathBuf::from("out"),
            compare: false,
        }
    }
}

impl RunSpec {
    pub fn is_ensemble(&self) -> bool {
        self.seeds.len() > 1
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse::<T>()
        .map_err(|_| ConfigError::invalid(key, value, format!("expected {}", std::any::type_name::<T>())))
}

fn positive(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = parse(key, value)?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::invalid(key, value, "must be a positive number"))
    }
}

fn on_off(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value.to_ascii_lowercase().as_str() {
        "on" | "true" => Ok(true),
        "off" | "false" => Ok(false),
        _ => Err(ConfigError::invalid(key, value, "expected on or off")),
    }
}

/// Applies one configuration key to `spec`.
pub fn apply_key(spec: &mut RunSpec, key: &str, value: &str) -> Result<(), ConfigError> {
    let value = value.trim();
    let sim = &mut spec.sim;
    match key {
        "n" => {
            sim.n = parse(key, value)?;
            if sim.n == 0 {
                return Err(ConfigError::invalid(key, value, "must be at least 1"));
            }
        }
        "width_m" => sim.width = positive(key, value)?,
        "height_m" => sim.height = positive(key, value)?,
        "e0_j" => sim.e0 = positive(key, value)?,
        "p" => {
            sim.p = parse(key, value)?;
            if !(sim.p > 0.0 && sim.p < 1.0) {
                return Err(ConfigError::invalid(key, value, "must lie strictly between 0 and 1"));
            }
        }
        "hetero_m" => {
            sim.hetero.m = parse(key, value)?;
            if !(0.0..=1.0).contains(&sim.hetero.m) {
                return Err(ConfigError::invalid(key, value, "must lie in [0, 1]"));
            }
        }
        "hetero_a" => {
            sim.hetero.a = parse(key, value)?;
            if !(sim.hetero.a.is_finite() && sim.hetero.a >= 0.0) {
                return Err(ConfigError::invalid(key, value, "must be non-negative"));
            }
        }
        "packet_bits" => sim.packet_bits = parse(key, value)?,
        "protocol" => sim.protocol = value.parse().map_err(|e: String| ConfigError::invalid(key, value, e))?,
        "ehorm" => sim.ehorm.enabled = on_off(key, value)?,
        "ns_cap" => sim.ehorm.ns_cap = parse(key, value)?,
        "max_rounds" => {
            sim.max_rounds = parse(key, value)?;
            if sim.max_rounds == 0 {
                return Err(ConfigError::invalid(key, value, "must be at least 1"));
            }
        }
        "seed" => {
            sim.seed = parse(key, value)?;
            spec.seeds = vec![sim.seed];
        }
        _ => {
            return Err(ConfigError::UnknownKey {
                key: key.to_string(),
                line: None,
            })
        }
    }
    Ok(())
}

/// Parses config file text into `spec`.
pub fn apply_text(spec: &mut RunSpec, text: &str) -> Result<(), ConfigError> {
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| ConfigError::Malformed {
            text: trimmed.to_string(),
            line,
        })?;
        apply_key(spec, key.trim(), value).map_err(|e| e.on_line(line))?;
    }
    Ok(())
}

/// Applies `--key=value` flags. Hyphens in flag names are read as
/// underscores. Besides the file keys, accepts `--out=DIR`, `--compare`
/// and `--seeds=a,b,c`. `--config` is handled by [`parse_config`].
pub fn apply_flags<S: AsRef<str>>(spec: &mut RunSpec, flags: &[S]) -> Result<(), ConfigError> {
    for flag in flags {
        let flag = flag.as_ref();
        let body = flag.strip_prefix("--").ok_or_else(|| ConfigError::UnknownKey {
            key: flag.to_string(),
            line: None,
        })?;
        let (name, value) = match body.split_once('=') {
            Some((n, v)) => (n.replace('-', "_"), Some(v)),
            None => (body.replace('-', "_"), None),
        };
        match (name.as_str(), value) {
            ("config", _) => {}
            ("compare", None) => spec.compare = true,
            ("compare", Some(v)) => spec.compare = on_off("compare", v)?,
            ("out", Some(v)) => spec.out_dir = PathBuf::from(v),
            ("seeds", Some(v)) => {
                let seeds = v
                    .split(',')
                    .map(|s| parse::<u64>("seeds", s.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                if seeds.is_empty() {
                    return Err(ConfigError::invalid("seeds", v, "seed list must not be empty"));
                }
                spec.sim.seed = seeds[0];
                spec.seeds = seeds;
            }
            (key, Some(v)) => apply_key(spec, key, v)?,
            (key, None) if KEYS.contains(&key) || key == "out" || key == "seeds" => {
                return Err(ConfigError::invalid(key, "", "flag needs a value: --key=value"));
            }
            (key, None) => {
                return Err(ConfigError::UnknownKey {
                    key: key.to_string(),
                    line: None,
                })
            }
        }
    }
    Ok(())
}

/// Resolves a [`RunSpec`] from an optional config file and flag overrides.
/// A `--config=PATH` flag is used when `file` is `None`.
pub fn parse_config<S: AsRef<str>>(file: Option<&Path>, flags: &[S]) -> Result<RunSpec, ConfigError> {
    let from_flag = flags
        .iter()
        .filter_map(|f| f.as_ref().strip_prefix("--config="))
        .last()
        .map(PathBuf::from);
    let path = file.map(Path::to_path_buf).or(from_flag);

    let mut spec = RunSpec::default();
    if let Some(path) = path {
        let text = fs::read_to_string(&path).map_err(|source| ConfigError::Read { path, source })?;
        apply_text(&mut spec, &text)?;
    }
    apply_flags(&mut spec, flags)?;
    spec.sim.validate()?;
    Ok(spec)
}
