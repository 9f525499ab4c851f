//! First-order radio energy model.
//!
//! Transmission cost is electronics energy plus an amplifier term that
//! follows a free-space (`d²`) law below the reference distance `d0` and a
//! multipath (`d⁴`) law at or beyond it. Reception costs electronics energy
//! only. Aggregation is a flat per-bit charge.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadioError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Energy constants of the radio, all in joules per bit (amplifier terms per
/// bit per m² or m⁴), plus the crossover distance in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    pub e_elec: f64,
    pub e_fs: f64,
    pub e_mp: f64,
    pub e_da: f64,
    pub d0: f64,
}

impl RadioParams {
    /// Electronics 50 nJ/bit, free-space 10 pJ/bit/m², multipath
    /// 0.0013 pJ/bit/m⁴, aggregation 5 nJ/bit, `d0 = sqrt(e_fs / e_mp)`.
    pub fn table_defaults() -> Self {
        Self::with_derived_d0(50e-9, 10e-12, 0.0013e-12, 5e-9)
            .expect("default radio constants are valid")
    }

    /// Builds a parameter set whose crossover distance is derived from the
    /// two amplifier coefficients, which makes `tx_energy` continuous.
    pub fn with_derived_d0(e_elec: f64, e_fs: f64, e_mp: f64, e_da: f64) -> Result<Self, RadioError> {
        if !(e_mp > 0.0) {
            return Err(RadioError::InvalidArgument(
                "multipath coefficient must be positive to derive d0".into(),
            ));
        }
        let params = Self {
            e_elec,
            e_fs,
            e_mp,
            e_da,
            d0: (e_fs / e_mp).sqrt(),
        };
        params.validate()?;
        Ok(params)
    }

    /// Replaces the crossover distance, e.g. to force the rounded 87 m.
    pub fn with_d0(self, d0: f64) -> Result<Self, RadioError> {
        let params = Self { d0, ..self };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), RadioError> {
        let fields = [
            ("e_elec", self.e_elec),
            ("e_fs", self.e_fs),
            ("e_mp", self.e_mp),
            ("e_da", self.e_da),
            ("d0", self.d0),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value < 0.0 {
                return Err(RadioError::InvalidArgument(format!(
                    "{name} must be a finite non-negative number, got {value}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for RadioParams {
    fn default() -> Self {
        Self::table_defaults()
    }
}

fn check_distance(d: f64) -> Result<(), RadioError> {
    if d.is_nan() || d < 0.0 {
        return Err(RadioError::InvalidArgument(format!(
            "distance must be non-negative, got {d}"
        )));
    }
    Ok(())
}

/// Energy to transmit `bits` over `d` metres. The boundary `d == d0` takes
/// the multipath branch.
pub fn tx_energy(bits: u64, d: f64, p: &RadioParams) -> Result<f64, RadioError> {
    check_distance(d)?;
    let bits = bits as f64;
    let amp = if d < p.d0 {
        bits * p.e_fs * (d * d)
    } else {
        bits * p.e_mp * ((d * d) * (d * d))
    };
    Ok(bits * p.e_elec + amp)
}

pub fn rx_energy(bits: u64, p: &RadioParams) -> f64 {
    bits as f64 * p.e_elec
}

pub fn agg_energy(bits: u64, p: &RadioParams) -> f64 {
    bits as f64 * p.e_da
}

/// Cluster-head uplink: aggregation of one `bits`-long packet followed by
/// its transmission to the sink.
pub fn ch_tx_energy(bits: u64, d: f64, p: &RadioParams) -> Result<f64, RadioError> {
    Ok(agg_energy(bits, p) + tx_energy(bits, d, p)?)
}
