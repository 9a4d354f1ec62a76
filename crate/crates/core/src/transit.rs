//! Per-transit gate accumulation and the Monte Carlo noise study.
//!
//! A single-qubit gate is not switched on for one pass; the phase shifter S
//! and mixing element P stay fixed while the field bounces between the
//! mirrors, and the gate is the product of many small identical rotations.
//! Noise enters as an independent Gaussian offset on every transit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::polarization::{
    check_finite, hadamard, phase_gate, rperp, rperp_unchecked, rz, rz_unchecked, state_fidelity, RegisterState,
    SingleQubitUnitary,
};

/// Element values applied on every transit.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ElementSettings {
    /// Differential phase added by S per transit.
    pub s_phase: f64,
    /// Mixing angle of P per transit.
    pub p_theta: f64,
    /// Orientation of the mixing axis.
    pub p_gamma: f64,
}

impl ElementSettings {
    fn check(&self) -> Result<()> {
        check_finite("s_phase", self.s_phase)?;
        check_finite("p_theta", self.p_theta)?;
        check_finite("p_gamma", self.p_gamma)
    }
}

/// Order of the two elements within one transit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TransitOrder {
    /// Mixing first, then phase: `R_z(s)·R_⊥(θ, γ)`.
    #[default]
    MixThenPhase,
    /// `R_⊥(θ, γ)·R_z(s)`.
    PhaseThenMix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitPlan {
    pub settings: ElementSettings,
    pub round_trips: u64,
    pub passes_per_round_trip: u64,
    #[serde(default)]
    pub order: TransitOrder,
}

pub const DEFAULT_PASSES_PER_ROUND_TRIP: u64 = 2;

impl TransitPlan {
    pub fn new(settings: ElementSettings, round_trips: u64, passes_per_round_trip: u64) -> Result<Self> {
        settings.check()?;
        if round_trips == 0 || passes_per_round_trip == 0 {
            return Err(Error::domain(format!(
                "round trips and passes per round trip must be >= 1 (got {round_trips}, {passes_per_round_trip})"
            )));
        }
        Ok(Self {
            settings,
            round_trips,
            passes_per_round_trip,
            order: TransitOrder::default(),
        })
    }

    pub fn with_order(mut self, order: TransitOrder) -> Self {
        self.order = order;
        self
    }

    /// Total element traversals, `K·p`.
    pub fn transits(&self) -> u64 {
        self.round_trips * self.passes_per_round_trip
    }

    /// Noiseless ordered product of all per-transit unitaries.
    pub fn nominal_unitary(&self) -> Result<SingleQubitUnitary> {
        let step = per_transit_unitary_ordered(&self.settings, self.order)?;
        let mut total = SingleQubitUnitary::identity();
        for _ in 0..self.transits() {
            total = step * total;
        }
        Ok(total)
    }
}

/// One-transit unitary in the default element order, `R_z(s)·R_⊥(θ, γ)`.
pub fn per_transit_unitary(settings: &ElementSettings) -> Result<SingleQubitUnitary> {
    per_transit_unitary_ordered(settings, TransitOrder::default())
}

pub fn per_transit_unitary_ordered(settings: &ElementSettings, order: TransitOrder) -> Result<SingleQubitUnitary> {
    settings.check()?;
    Ok(transit_step(
        settings.s_phase,
        settings.p_theta,
        settings.p_gamma,
        order,
    ))
}

fn transit_step(s: f64, theta: f64, gamma: f64, order: TransitOrder) -> SingleQubitUnitary {
    let phase = rz_unchecked(s);
    let mix = rperp_unchecked(theta, gamma);
    match order {
        TransitOrder::MixThenPhase => phase * mix,
        TransitOrder::PhaseThenMix => mix * phase,
    }
}

/// A rotation that a plan accumulates: one Euler factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateTarget {
    Rz { phi: f64 },
    Rperp { theta: f64, gamma: f64 },
}

impl GateTarget {
    pub fn unitary(&self) -> Result<SingleQubitUnitary> {
        match *self {
            GateTarget::Rz { phi } => rz(phi),
            GateTarget::Rperp { theta, gamma } => rperp(theta, gamma),
        }
    }
}

/// Splits `target` evenly over `K·p` transits.
pub fn plan_gate(target: GateTarget, round_trips: u64, passes_per_round_trip: u64) -> Result<TransitPlan> {
    let n = round_trips
        .checked_mul(passes_per_round_trip)
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::domain("plan needs at least one transit (K·p >= 1)"))?;
    let settings = match target {
        GateTarget::Rz { phi } => ElementSettings {
            s_phase: phi / n as f64,
            ..Default::default()
        },
        GateTarget::Rperp { theta, gamma } => ElementSettings {
            s_phase: 0.0,
            p_theta: theta / n as f64,
            p_gamma: gamma,
        },
    };
    TransitPlan::new(settings, round_trips, passes_per_round_trip)
}

/// Per-transit Gaussian angle noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitNoise {
    pub sigma: f64,
    /// Also perturb angles whose nominal value is zero.
    #[serde(default)]
    pub perturb_all: bool,
}

impl TransitNoise {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::domain(format!("sigma must be >= 0, got {sigma}")));
        }
        Ok(Self {
            sigma,
            perturb_all: false,
        })
    }
}

/// Product of the plan's transits, each with freshly drawn angle offsets.
fn accumulate<R: Rng + ?Sized>(
    plan: &TransitPlan,
    noise: Option<&TransitNoise>,
    rng: &mut R,
) -> Result<SingleQubitUnitary> {
    let noise = match noise {
        Some(n) if n.sigma > 0.0 => *n,
        _ => return plan.nominal_unitary(),
    };
    plan.settings.check()?;
    let ElementSettings {
        s_phase,
        p_theta,
        p_gamma,
    } = plan.settings;
    let perturb_phase = noise.perturb_all || s_phase != 0.0;
    let perturb_mix = noise.perturb_all || p_theta != 0.0;

    let mut total = SingleQubitUnitary::identity();
    for _ in 0..plan.transits() {
        let mut s = s_phase;
        let mut theta = p_theta;
        if perturb_phase {
            s += noise.sigma * rng.sample::<f64, _>(StandardNormal);
        }
        if perturb_mix {
            theta += noise.sigma * rng.sample::<f64, _>(StandardNormal);
        }
        total = transit_step(s, theta, p_gamma, plan.order) * total;
    }
    Ok(total)
}

/// Runs a plan on one arm of `state`.
pub fn run_plan<R: Rng + ?Sized>(
    state: &RegisterState,
    arm: usize,
    plan: &TransitPlan,
    noise: Option<&TransitNoise>,
    rng: &mut R,
) -> Result<RegisterState> {
    let u = accumulate(plan, noise, rng)?;
    state.apply_single(arm, &u)
}

/// Runs plans in order on one arm.
pub fn run_sequence<R: Rng + ?Sized>(
    state: &RegisterState,
    arm: usize,
    plans: &[TransitPlan],
    noise: Option<&TransitNoise>,
    rng: &mut R,
) -> Result<RegisterState> {
    let mut total = SingleQubitUnitary::identity();
    for plan in plans {
        total = accumulate(plan, noise, rng)? * total;
    }
    state.apply_single(arm, &total)
}

/// Hadamard as two accumulated stages: `R_z(π)` then `R_⊥(π/2, π/2)`.
///
/// The product equals `−i·H`.
pub fn hadamard_plans(round_trips: u64, passes_per_round_trip: u64) -> Result<Vec<TransitPlan>> {
    Ok(vec![
        plan_gate(GateTarget::Rz { phi: PI }, round_trips, passes_per_round_trip)?,
        plan_gate(
            GateTarget::Rperp {
                theta: FRAC_PI_2,
                gamma: FRAC_PI_2,
            },
            round_trips,
            passes_per_round_trip,
        )?,
    ])
}

/// Plans for `H·P(φ)·H`: Hadamard stages, the phase stage, Hadamard stages.
///
/// Every stage runs for `round_trips_per_stage` round trips, and the plans
/// are listed in execution order.
pub fn hph_sequence(phi: f64, round_trips_per_stage: u64, passes_per_round_trip: u64) -> Result<Vec<TransitPlan>> {
    check_finite("phi", phi)?;
    let h = hadamard_plans(round_trips_per_stage, passes_per_round_trip)?;
    let p = plan_gate(GateTarget::Rz { phi }, round_trips_per_stage, passes_per_round_trip)?;
    let mut plans = h.clone();
    plans.push(p);
    plans.extend(h);
    Ok(plans)
}

/// Ideal `H·diag(1, e^{iφ})·H`.
pub fn hph_reference(phi: f64) -> Result<SingleQubitUnitary> {
    Ok(hadamard() * phase_gate(phi)? * hadamard())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub sigma: f64,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub perturb_all: bool,
}

pub const DEFAULT_TRIALS: usize = 200;

impl NoiseConfig {
    pub fn new(sigma: f64, trials: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            sigma,
            trials,
            seed,
            perturb_all: false,
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        TransitNoise::new(self.sigma)?;
        if self.trials == 0 {
            return Err(Error::domain("trials must be >= 1"));
        }
        Ok(())
    }

    fn transit(&self, sigma: f64) -> TransitNoise {
        TransitNoise {
            sigma,
            perturb_all: self.perturb_all,
        }
    }
}

/// HPH fidelity study on a single arm prepared in `|H⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityStudy {
    pub phi: f64,
    /// Round trips per accumulated stage.
    pub round_trips: u64,
    pub passes_per_round_trip: u64,
    pub noise: NoiseConfig,
}

/// Which parameter a curve varies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Sweep {
    /// Noise level, with the study's round trips fixed.
    Sigma(Vec<f64>),
    /// Round trips per stage, with the study's sigma fixed.
    RoundTrips(Vec<u64>),
}

impl Sweep {
    pub fn len(&self) -> usize {
        match self {
            Sweep::Sigma(v) => v.len(),
            Sweep::RoundTrips(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub param: f64,
    pub mean_fidelity: f64,
    pub std_err: f64,
    pub trials: usize,
}

/// splitmix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` at grid point `grid_index`; independent of the
/// order in which trials run.
pub fn trial_seed(seed: u64, grid_index: usize, trial: usize) -> u64 {
    mix64(mix64(mix64(seed) ^ grid_index as u64) ^ trial as u64)
}

/// Mean HPH output fidelity against the noiseless output, per grid point.
pub fn monte_carlo_fidelity(study: &FidelityStudy, sweep: &Sweep) -> Result<Vec<CurvePoint>> {
    if sweep.is_empty() {
        return Err(Error::domain("sweep grid is empty"));
    }
    study.noise.check()?;
    check_finite("phi", study.phi)?;

    let input = RegisterState::zero(1)?;
    let points: Vec<(f64, u64, f64)> = match sweep {
        Sweep::Sigma(values) => values.iter().map(|&s| (s, study.round_trips, s)).collect(),
        Sweep::RoundTrips(values) => values.iter().map(|&k| (k as f64, k, study.noise.sigma)).collect(),
    };

    points
        .iter()
        .enumerate()
        .map(|(grid_index, &(param, round_trips, sigma))| {
            let noise = study.noise.transit(sigma);
            TransitNoise::new(sigma)?;
            let plans = hph_sequence(study.phi, round_trips, study.passes_per_round_trip)?;
            let mut nominal_rng = ChaCha8Rng::seed_from_u64(0);
            let reference = run_sequence(&input, 0, &plans, None, &mut nominal_rng)?;

            let fidelities = (0..study.noise.trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(study.noise.seed, grid_index, t));
                    let out = run_sequence(&input, 0, &plans, Some(&noise), &mut rng)?;
                    state_fidelity(&reference, &out)
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(summarize(param, &fidelities))
        })
        .collect()
}

fn summarize(param: f64, samples: &[f64]) -> CurvePoint {
    let n = samples.len();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let std_err = if n > 1 {
        let var = samples.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        (var / n as f64).sqrt()
    } else {
        0.0
    };
    CurvePoint {
        param,
        mean_fidelity: mean,
        std_err,
        trials: n,
    }
}

/// Ordinary least-squares line `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::domain("a line fit needs at least two points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("x values are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Fits `1 − F` against `σ²` for a sigma curve.
pub fn quadratic_noise_fit(curve: &[CurvePoint]) -> Result<LinearFit> {
    let xs: Vec<f64> = curve.iter().map(|p| p.param * p.param).collect();
    let ys: Vec<f64> = curve.iter().map(|p| 1.0 - p.mean_fidelity).collect();
    linear_fit(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn zero_settings_identity() {
        let u = per_transit_unitary(&ElementSettings::default()).unwrap();
        assert_eq!(u.max_abs_diff(&SingleQubitUnitary::identity()), 0.0);
    }

    #[test]
    fn two_half_phase_transits() {
        let phi = 0.9;
        let plan = TransitPlan::new(
            ElementSettings {
                s_phase: phi / 2.0,
                ..Default::default()
            },
            1,
            2,
        )
        .unwrap();
        let u = plan.nominal_unitary().unwrap();
        // diagonal with differential phase φ between V and H
        assert!(u.get(0, 1).norm() < 1e-15 && u.get(1, 0).norm() < 1e-15);
        let diff = (u.get(1, 1) / u.get(0, 0)).arg();
        assert!((diff - phi).abs() < 1e-12);
        assert!(u.phase_distance(&phase_gate(phi).unwrap()) < 1e-12);
    }

    #[test]
    fn mixing_accumulates() {
        for (k, p) in [(1, 1), (10, 2), (250, 2)] {
            let n = (k * p) as f64;
            let gamma = 0.4;
            let plan = TransitPlan::new(
                ElementSettings {
                    s_phase: 0.0,
                    p_theta: PI / (2.0 * n),
                    p_gamma: gamma,
                },
                k,
                p,
            )
            .unwrap();
            let u = plan.nominal_unitary().unwrap();
            assert!(u.max_abs_diff(&rperp(FRAC_PI_2, gamma).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn plan_examples() {
        let p = plan_gate(GateTarget::Rz { phi: PI }, 1, 1).unwrap();
        assert_eq!(p.settings.s_phase, PI);
        let p = plan_gate(
            GateTarget::Rperp {
                theta: FRAC_PI_2,
                gamma: 0.0,
            },
            1500,
            2,
        )
        .unwrap();
        assert!((p.settings.p_theta - PI / 6000.0).abs() < 1e-18);
        assert_eq!(p.transits(), 3000);
        assert!(plan_gate(GateTarget::Rz { phi: 1.0 }, 0, 2).is_err());
        assert!(plan_gate(GateTarget::Rz { phi: 1.0 }, 3, 0).is_err());
        assert!(plan_gate(GateTarget::Rz { phi: f64::NAN }, 3, 1).is_err());
    }

    #[test]
    fn element_order_is_configurable() {
        let s = ElementSettings {
            s_phase: 0.3,
            p_theta: 0.7,
            p_gamma: 0.2,
        };
        let a = per_transit_unitary_ordered(&s, TransitOrder::MixThenPhase).unwrap();
        let b = per_transit_unitary_ordered(&s, TransitOrder::PhaseThenMix).unwrap();
        let expect_a = rz(0.3).unwrap() * rperp(0.7, 0.2).unwrap();
        assert!(a.max_abs_diff(&expect_a) < 1e-15);
        assert!(a.max_abs_diff(&b) > 1e-3);
        assert_eq!(per_transit_unitary(&s).unwrap(), a);
    }

    #[test]
    fn zero_sigma_is_bit_exact() {
        let plan = plan_gate(GateTarget::Rperp { theta: 1.0, gamma: 0.3 }, 40, 2).unwrap();
        let s = RegisterState::zero(1).unwrap();
        let quiet = run_plan(&s, 0, &plan, None, &mut rng()).unwrap();
        let zero = TransitNoise::new(0.0).unwrap();
        let noisy = run_plan(&s, 0, &plan, Some(&zero), &mut rng()).unwrap();
        assert_eq!(quiet, noisy);
    }

    #[test]
    fn seeded_runs_repeat() {
        let plan = plan_gate(GateTarget::Rz { phi: 1.0 }, 40, 2).unwrap();
        let s = RegisterState::zero(1).unwrap().apply_single(0, &hadamard()).unwrap();
        let noise = TransitNoise::new(1e-2).unwrap();
        let a = run_plan(&s, 0, &plan, Some(&noise), &mut rng()).unwrap();
        let b = run_plan(&s, 0, &plan, Some(&noise), &mut rng()).unwrap();
        assert_eq!(a, b);
        let c = run_plan(&s, 0, &plan, Some(&noise), &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn inactive_angles_stay_clean() {
        // pure phase plan: without perturb_all the output stays diagonal
        let plan = plan_gate(GateTarget::Rz { phi: 1.0 }, 100, 1).unwrap();
        let mut noise = TransitNoise::new(1e-2).unwrap();
        let s = RegisterState::zero(1).unwrap();
        let out = run_plan(&s, 0, &plan, Some(&noise), &mut rng()).unwrap();
        assert_eq!(out.amplitudes()[1], Complex64::new(0.0, 0.0));
        noise.perturb_all = true;
        let out = run_plan(&s, 0, &plan, Some(&noise), &mut rng()).unwrap();
        assert!(out.amplitudes()[1].norm() > 0.0);
    }

    #[test]
    fn hadamard_stages_product() {
        let plans = hadamard_plans(7, 2).unwrap();
        let u = plans[1].nominal_unitary().unwrap() * plans[0].nominal_unitary().unwrap();
        let expect = hadamard().scale(Complex64::new(0.0, -1.0));
        assert!(u.max_abs_diff(&expect) < 1e-12);
    }

    fn sequence_unitary(plans: &[TransitPlan]) -> SingleQubitUnitary {
        plans.iter().fold(SingleQubitUnitary::identity(), |acc, p| {
            p.nominal_unitary().unwrap() * acc
        })
    }

    #[test]
    fn hph_special_cases() {
        let id = sequence_unitary(&hph_sequence(0.0, 5, 2).unwrap());
        assert!(id.phase_distance(&SingleQubitUnitary::identity()) < 1e-9);
        let x = sequence_unitary(&hph_sequence(PI, 5, 2).unwrap());
        assert!(x.phase_distance(&crate::polarization::pauli_x()) < 1e-9);
        for phi in [0.3, FRAC_PI_2, 2.0, -1.2] {
            let u = sequence_unitary(&hph_sequence(phi, 20, 2).unwrap());
            assert!(u.phase_distance(&hph_reference(phi).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn hph_on_h_state() {
        // closed form: cos(φ/2)|0⟩ − i sin(φ/2)|1⟩
        let phi = 1.1;
        let plans = hph_sequence(phi, 30, 2).unwrap();
        let out = run_sequence(&RegisterState::zero(1).unwrap(), 0, &plans, None, &mut rng()).unwrap();
        let expect = RegisterState::from_amplitudes(
            1,
            vec![
                Complex64::new((phi / 2.0).cos(), 0.0),
                Complex64::new(0.0, -(phi / 2.0).sin()),
            ],
        )
        .unwrap();
        assert!((state_fidelity(&out, &expect).unwrap() - 1.0).abs() < 1e-9);
    }

    fn study(trials: usize) -> FidelityStudy {
        FidelityStudy {
            phi: FRAC_PI_2,
            round_trips: 200,
            passes_per_round_trip: 1,
            noise: NoiseConfig::new(1e-3, trials, 42).unwrap(),
        }
    }

    #[test]
    fn zero_sigma_point_is_exactly_one() {
        let curve = monte_carlo_fidelity(&study(20), &Sweep::Sigma(vec![0.0, 1e-3])).unwrap();
        assert_eq!(curve[0].mean_fidelity, 1.0);
        assert_eq!(curve[0].std_err, 0.0);
        assert!(curve[1].mean_fidelity < 1.0);
        assert_eq!(curve[1].trials, 20);
    }

    #[test]
    fn curves_are_deterministic() {
        let sweep = Sweep::RoundTrips(vec![10, 50, 100]);
        let a = monte_carlo_fidelity(&study(30), &sweep).unwrap();
        let b = monte_carlo_fidelity(&study(30), &sweep).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fidelity_drops_with_sigma() {
        let curve = monte_carlo_fidelity(&study(100), &Sweep::Sigma(vec![1e-3, 5e-3, 2e-2])).unwrap();
        assert!(curve.windows(2).all(|w| w[1].mean_fidelity < w[0].mean_fidelity));
    }

    #[test]
    fn study_validation() {
        assert!(monte_carlo_fidelity(&study(10), &Sweep::Sigma(vec![])).is_err());
        assert!(monte_carlo_fidelity(&study(10), &Sweep::Sigma(vec![-1.0])).is_err());
        assert!(NoiseConfig::new(1e-3, 0, 1).is_err());
        assert!(NoiseConfig::new(-1e-3, 1, 1).is_err());
    }

    #[test]
    fn trial_seeds_differ() {
        assert_ne!(trial_seed(1, 0, 0), trial_seed(1, 0, 1));
        assert_ne!(trial_seed(1, 0, 1), trial_seed(1, 1, 0));
        assert_eq!(trial_seed(9, 3, 4), trial_seed(9, 3, 4));
    }

    #[test]
    fn line_fit() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        let f = linear_fit(&xs, &ys).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(linear_fit(&[1.0], &[1.0]).is_err());
    }
}
