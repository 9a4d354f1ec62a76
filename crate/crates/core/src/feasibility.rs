//! Nonlinear phase budget of the cavity-enhanced cross-Kerr gate.
//!
//! Pipeline: mode area `A = πw²`, intensity `I = P/A`, optical frequency
//! `ω = 2πc/λ`, photon lifetime `τ = Q/ω`, effective round trips
//! `N_rt = cτ/(2L_cav)`. The single-pass phase is `φ₀ = (2π/λ)·n₂·I·L_nl`
//! and the total is `φ_tot = φ₀·N_rt`; a controlled-phase gate needs
//! `φ_tot ≥ π`. Sequential operations bound the laser linewidth by
//! `Δν = 1/(N·τ)`.
//!
//! Since `τ` itself scales with `λ`, the wavelength cancels and
//! `φ_tot = n₂·I·L_nl·Q/(2L_cav)`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::cavity::SPEED_OF_LIGHT;
use crate::error::{Error, Result};

pub const DEFAULT_WAVELENGTH_M: f64 = 980e-9;
pub const DEFAULT_CAVITY_LENGTH_M: f64 = 0.15;
pub const DEFAULT_NONLINEAR_LENGTH_M: f64 = 0.01;
pub const DEFAULT_COHERENCE_MARGIN: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityInput {
    /// Wavelength, m.
    pub lambda: f64,
    /// Cavity length, m.
    pub l_cav: f64,
    /// Nonlinear interaction length, m.
    pub l_nl: f64,
    /// Nonlinear refractive index, m²/W.
    pub n2: f64,
    /// Beam waist, m.
    pub w: f64,
    /// Continuous-wave power, W.
    pub power: f64,
    pub q_factor: f64,
}

impl FeasibilityInput {
    /// Checks every field, reporting all offending ones at once.
    ///
    /// `n2` may be zero (a linear medium); everything else must be strictly
    /// positive, and `l_nl ≤ l_cav`.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("lambda", self.lambda),
            ("l_cav", self.l_cav),
            ("l_nl", self.l_nl),
            ("w", self.w),
            ("power", self.power),
            ("q_factor", self.q_factor),
        ];
        let mut bad: Vec<String> = fields
            .iter()
            .filter(|(_, v)| !(v.is_finite() && *v > 0.0))
            .map(|(name, v)| format!("{name}={v}"))
            .collect();
        if !(self.n2.is_finite() && self.n2 >= 0.0) {
            bad.push(format!("n2={}", self.n2));
        }
        if bad.is_empty() && self.l_nl > self.l_cav {
            bad.push(format!("l_nl={} exceeds l_cav={}", self.l_nl, self.l_cav));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::validation(format!("invalid inputs: {}", bad.join(", "))))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedQuantities {
    /// Effective mode area, m².
    pub area: f64,
    /// Intracavity intensity, W/m².
    pub intensity: f64,
    /// Optical angular frequency, rad/s.
    pub omega: f64,
    /// Photon lifetime, s.
    pub tau: f64,
    /// Effective round trips during the photon lifetime.
    pub n_rt: f64,
}

pub fn derive(input: &FeasibilityInput) -> Result<DerivedQuantities> {
    input.validate()?;
    let area = PI * input.w * input.w;
    let intensity = input.power / area;
    let omega = 2.0 * PI * SPEED_OF_LIGHT / input.lambda;
    let tau = input.q_factor / omega;
    let n_rt = SPEED_OF_LIGHT * tau / (2.0 * input.l_cav);
    Ok(DerivedQuantities {
        area,
        intensity,
        omega,
        tau,
        n_rt,
    })
}

/// `φ₀ = (2π/λ)·n₂·I·L_nl`.
pub fn phi_single_pass(input: &FeasibilityInput, derived: &DerivedQuantities) -> f64 {
    2.0 * PI / input.lambda * input.n2 * derived.intensity * input.l_nl
}

/// `φ_tot = φ₀·N_rt`.
pub fn phi_total(input: &FeasibilityInput, derived: &DerivedQuantities) -> f64 {
    phi_single_pass(input, derived) * derived.n_rt
}

/// `φ_tot ≥ π` (closed).
pub fn is_feasible(phi_tot: f64) -> bool {
    phi_tot >= PI
}

/// `Δν_max = 1/(N·τ)` in Hz.
pub fn max_linewidth(tau: f64, n_ops: u64) -> Result<f64> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::domain(format!("tau must be positive, got {tau}")));
    }
    if n_ops == 0 {
        return Err(Error::domain("number of operations must be >= 1"));
    }
    Ok(1.0 / (n_ops as f64 * tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceCheck {
    pub laser_linewidth: f64,
    pub tau_coh: f64,
    /// `τ_coh/τ`.
    pub ratio: f64,
    pub margin: f64,
    pub passed: bool,
}

/// Passes iff the laser coherence time `1/Δν` is at least `margin·τ`.
pub fn coherence_check(laser_linewidth: f64, tau: f64, margin: f64) -> Result<CoherenceCheck> {
    for (name, v) in [("laser_linewidth", laser_linewidth), ("tau", tau), ("margin", margin)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::domain(format!("{name} must be positive, got {v}")));
        }
    }
    let tau_coh = 1.0 / laser_linewidth;
    let ratio = tau_coh / tau;
    Ok(CoherenceCheck {
        laser_linewidth,
        tau_coh,
        ratio,
        margin,
        passed: ratio >= margin,
    })
}

/// `L_nl/L_cav` needed to reach `target_phi` with the other inputs fixed.
pub fn implied_length_ratio(input: &FeasibilityInput, target_phi: f64) -> Result<f64> {
    let d = derive(input)?;
    let per_ratio = input.n2 * d.intensity * input.q_factor / 2.0;
    if per_ratio == 0.0 {
        return Err(Error::domain(
            "no nonlinear response (n2 = 0): target phase unreachable",
        ));
    }
    Ok(target_phi / per_ratio)
}

/// Representative operating points (n₂, P, w, Q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Conservative,
    Moderate,
    Aggressive,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Conservative, Regime::Moderate, Regime::Aggressive];

    /// `(n2 [m²/W], power [W], waist [m], Q)`.
    pub fn parameters(&self) -> (f64, f64, f64, f64) {
        match self {
            Regime::Conservative => (1e-18, 20.0, 30e-6, 5e9),
            Regime::Moderate => (5e-18, 30.0, 25e-6, 7e9),
            Regime::Aggressive => (1e-17, 40.0, 20e-6, 1e10),
        }
    }

    /// Published total phase for this regime, rad.
    pub fn reference_phi_total(&self) -> f64 {
        match self {
            Regime::Conservative => 1.2,
            Regime::Moderate => 4.1,
            Regime::Aggressive => 5.2,
        }
    }

    pub fn input(&self, geometry: &Geometry) -> FeasibilityInput {
        let (n2, power, w, q_factor) = self.parameters();
        FeasibilityInput {
            lambda: geometry.lambda,
            l_cav: geometry.l_cav,
            l_nl: geometry.l_nl,
            n2,
            w,
            power,
            q_factor,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Conservative => "conservative",
            Regime::Moderate => "moderate",
            Regime::Aggressive => "aggressive",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "conservative" => Ok(Regime::Conservative),
            "moderate" => Ok(Regime::Moderate),
            "aggressive" => Ok(Regime::Aggressive),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

/// Wavelength and lengths not fixed by a regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub lambda: f64,
    pub l_cav: f64,
    pub l_nl: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Self {
            lambda: DEFAULT_WAVELENGTH_M,
            l_cav: DEFAULT_CAVITY_LENGTH_M,
            l_nl: DEFAULT_NONLINEAR_LENGTH_M,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinewidthEntry {
    pub n_ops: u64,
    pub max_linewidth_hz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImpliedGeometry {
    pub target_phi_tot: f64,
    /// `L_nl/L_cav` that reaches the target.
    pub l_nl_over_l_cav: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub input: FeasibilityInput,
    pub derived: DerivedQuantities,
    pub phi0: f64,
    pub phi_tot: f64,
    pub feasible: bool,
    pub linewidth_budget: Vec<LinewidthEntry>,
    pub coherence: Option<CoherenceCheck>,
    pub implied: Option<ImpliedGeometry>,
}

/// Optional parts of a report.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportOptions {
    pub ops: Vec<u64>,
    /// Laser linewidth (Hz) and margin for the coherence check.
    pub laser: Option<(f64, f64)>,
    pub target_phi: Option<f64>,
}

impl ReportOptions {
    pub fn standard() -> Self {
        Self {
            ops: vec![10, 100, 1000],
            laser: None,
            target_phi: None,
        }
    }
}

pub fn evaluate(input: &FeasibilityInput, opts: &ReportOptions) -> Result<FeasibilityReport> {
    let derived = derive(input)?;
    let phi0 = phi_single_pass(input, &derived);
    let phi_tot = phi_total(input, &derived);
    let linewidth_budget = opts
        .ops
        .iter()
        .map(|&n_ops| {
            Ok(LinewidthEntry {
                n_ops,
                max_linewidth_hz: max_linewidth(derived.tau, n_ops)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let coherence = opts
        .laser
        .map(|(linewidth, margin)| coherence_check(linewidth, derived.tau, margin))
        .transpose()?;
    let implied = opts
        .target_phi
        .map(|target| {
            Ok(ImpliedGeometry {
                target_phi_tot: target,
                l_nl_over_l_cav: implied_length_ratio(input, target)?,
            })
        })
        .transpose()?;
    Ok(FeasibilityReport {
        input: *input,
        derived,
        phi0,
        phi_tot,
        feasible: is_feasible(phi_tot),
        linewidth_budget,
        coherence,
        implied,
    })
}

/// Full pipeline for a preset; the implied ratio targets the regime's
/// published phase unless `opts.target_phi` overrides it.
pub fn evaluate_regime(regime: Regime, geometry: &Geometry, opts: &ReportOptions) -> Result<FeasibilityReport> {
    let mut opts = opts.clone();
    opts.target_phi.get_or_insert(regime.reference_phi_total());
    evaluate(&regime.input(geometry), &opts)
}
