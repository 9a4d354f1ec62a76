//! Longitudinal mode comb of a linear cavity and harmonic-bundle selection.
//!
//! Standing-wave boundary conditions `L = q·λ/2` admit the frequencies
//! `ν_q = q·c/(2L)`, so the comb is evenly spaced by the free spectral range.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s (exact SI value).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityGeometry {
    pub length_m: f64,
}

impl CavityGeometry {
    pub fn new(length_m: f64) -> Result<Self> {
        if !(length_m.is_finite() && length_m > 0.0) {
            return Err(Error::domain(format!(
                "cavity length must be positive and finite, got {length_m}"
            )));
        }
        Ok(Self { length_m })
    }

    /// Adjacent-mode spacing `c/(2L)` in Hz.
    pub fn free_spectral_range_hz(&self) -> f64 {
        SPEED_OF_LIGHT / (2.0 * self.length_m)
    }

    fn check(&self) -> Result<()> {
        Self::new(self.length_m).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeEntry {
    pub q: u64,
    pub omega_rad_s: f64,
    pub nu_hz: f64,
}

/// Contiguous run of longitudinal modes, ordered by `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeComb {
    pub entries: Vec<ModeEntry>,
}

impl ModeComb {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Set of longitudinal modes carrying one logical qubit in arm `arm_id`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub arm_id: usize,
    mode_indices: Vec<u64>,
}

impl Bundle {
    pub fn new(arm_id: usize, mut mode_indices: Vec<u64>) -> Result<Self> {
        mode_indices.sort_unstable();
        mode_indices.dedup();
        if mode_indices.is_empty() {
            return Err(Error::validation("bundle must contain at least one mode"));
        }
        if mode_indices[0] == 0 {
            return Err(Error::validation("mode index q must be >= 1"));
        }
        Ok(Self { arm_id, mode_indices })
    }

    pub fn mode_indices(&self) -> &[u64] {
        &self.mode_indices
    }

    pub fn with_arm(mut self, arm_id: usize) -> Self {
        self.arm_id = arm_id;
        self
    }

    pub fn len(&self) -> usize {
        self.mode_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Angular frequency `ω_q = qπc/L` of longitudinal mode `q`.
pub fn mode_frequency(geometry: &CavityGeometry, q: u64) -> Result<f64> {
    Ok(2.0 * PI * mode_frequency_hz(geometry, q)?)
}

/// Frequency `ν_q = q·c/(2L)` in Hz.
pub fn mode_frequency_hz(geometry: &CavityGeometry, q: u64) -> Result<f64> {
    geometry.check()?;
    if q == 0 {
        return Err(Error::domain("longitudinal mode index q must be >= 1"));
    }
    Ok(q as f64 * geometry.free_spectral_range_hz())
}

/// Modes `q_start ..= q_end`.
pub fn mode_comb(geometry: &CavityGeometry, q_start: u64, q_end: u64) -> Result<ModeComb> {
    if q_end < q_start {
        return Err(Error::domain(format!("empty mode range {q_start}..={q_end}")));
    }
    let entries = (q_start..=q_end)
        .map(|q| {
            let nu_hz = mode_frequency_hz(geometry, q)?;
            Ok(ModeEntry {
                q,
                omega_rad_s: 2.0 * PI * nu_hz,
                nu_hz,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModeComb { entries })
}

/// All modes with `|ν_q − center| ≤ bandwidth/2` (closed interval).
///
/// Band edges are compared with a tolerance of a few ulps of the center
/// frequency so that a mode sitting exactly on an edge is kept.
pub fn select_bundle(geometry: &CavityGeometry, center_hz: f64, bandwidth_hz: f64) -> Result<Bundle> {
    geometry.check()?;
    if !(center_hz.is_finite() && center_hz > 0.0) {
        return Err(Error::domain(format!(
            "center frequency must be positive, got {center_hz}"
        )));
    }
    if !(bandwidth_hz.is_finite() && bandwidth_hz >= 0.0) {
        return Err(Error::domain(format!(
            "bandwidth must be non-negative, got {bandwidth_hz}"
        )));
    }
    let fsr = geometry.free_spectral_range_hz();
    let half = bandwidth_hz / 2.0;
    let slack = 4.0 * f64::EPSILON * (center_hz + half);
    let low = center_hz - half;
    let high = center_hz + half;

    let q_lo = ((low / fsr).floor() - 1.0).max(1.0) as u64;
    let q_hi = ((high / fsr).ceil() + 1.0).max(1.0) as u64;
    let selected: Vec<u64> = (q_lo..=q_hi)
        .filter(|&q| {
            let nu = q as f64 * fsr;
            (nu - center_hz).abs() <= half + slack
        })
        .collect();

    if selected.is_empty() {
        return Err(Error::NoModeInBand {
            low_hz: low,
            high_hz: high,
        });
    }
    Bundle::new(0, selected)
}
