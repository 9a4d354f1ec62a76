//! Entangling gates generated by the cross-Kerr interaction between arms.
//!
//! The conditional phase follows the convention `U = exp(+iφ N_i N_j)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::polarization::{check_finite, hadamard, RegisterState, MAX_ARMS};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingConfig {
    /// Effective nonlinear coupling, rad/s.
    pub chi: f64,
    /// Interaction time, s.
    pub tau_int: f64,
}

/// `φ = χ·τ`.
pub fn conditional_phase(config: &CouplingConfig) -> Result<f64> {
    check_finite("chi", config.chi)?;
    check_finite("tau_int", config.tau_int)?;
    if config.tau_int < 0.0 {
        return Err(Error::domain(format!(
            "interaction time must be >= 0, got {}",
            config.tau_int
        )));
    }
    Ok(config.chi * config.tau_int)
}

/// Phase after `round_trips` passes of `phi0` each, `K·φ₀`.
pub fn accumulate_phase(phi0: f64, round_trips: u64) -> f64 {
    round_trips as f64 * phi0
}

/// 4×4 matrix in the basis `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitUnitary {
    m: [[Complex64; 4]; 4],
}

impl TwoQubitUnitary {
    pub fn from_matrix(m: [[Complex64; 4]; 4]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; 4])
    }

    pub fn diagonal(d: [Complex64; 4]) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, v) in d.into_iter().enumerate() {
            m[i][i] = v;
        }
        Self { m }
    }

    pub fn matrix(&self) -> &[[Complex64; 4]; 4] {
        &self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn dagger(&self) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.m[j][i].conj();
            }
        }
        Self { m }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `1 − |tr(U†V)|/4`.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        let p = self.dagger() * *other;
        let tr: Complex64 = (0..4).map(|i| p.m[i][i]).sum();
        (1.0 - tr.norm() / 4.0).max(0.0)
    }

    pub fn unitarity_error(&self) -> f64 {
        (self.dagger() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || self.m[i][j].norm() <= tol))
    }
}

impl Mul for TwoQubitUnitary {
    type Output = TwoQubitUnitary;

    fn mul(self, rhs: Self) -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = (0..4).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        Self { m }
    }
}

/// `diag(1, 1, 1, e^{iφ})`.
pub fn cp_gate(phi: f64) -> Result<TwoQubitUnitary> {
    check_finite("phi", phi)?;
    Ok(TwoQubitUnitary::diagonal([
        ONE,
        ONE,
        ONE,
        Complex64::from_polar(1.0, phi),
    ]))
}

/// Controlled-Z, `cp_gate(π)` with the last entry set to exactly −1.
pub fn cz() -> TwoQubitUnitary {
    TwoQubitUnitary::diagonal([ONE, ONE, ONE, -ONE])
}

/// `(I ⊗ H)·CZ·(I ⊗ H)` on `|control target⟩`.
pub fn cnot_matrix() -> TwoQubitUnitary {
    let h = hadamard();
    let mut ih = [[ZERO; 4]; 4];
    for blk in 0..2 {
        for r in 0..2 {
            for c in 0..2 {
                ih[2 * blk + r][2 * blk + c] = h.get(r, c);
            }
        }
    }
    let ih = TwoQubitUnitary::from_matrix(ih);
    ih * cz() * ih
}

/// Applies `cp_gate(phi)` to arms `(i, j)`.
pub fn apply_cp(state: &RegisterState, i: usize, j: usize, phi: f64) -> Result<RegisterState> {
    state.apply_two(i, j, cp_gate(phi)?.matrix())
}

/// CNOT built as H on the target, CZ on the pair, H on the target.
pub fn cnot(state: &RegisterState, control: usize, target: usize) -> Result<RegisterState> {
    if control == target {
        return Err(Error::domain("control and target must differ"));
    }
    for arm in [control, target] {
        if arm >= state.num_arms() {
            return Err(Error::Index {
                index: arm,
                limit: state.num_arms(),
            });
        }
    }
    let h = hadamard();
    let s = state.apply_single(target, &h)?;
    let s = s.apply_two(control, target, cz().matrix())?;
    s.apply_single(target, &h)
}

/// Symmetric matrix of conditional phases `φ_ij` with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwisePhaseMatrix {
    phases: Vec<Vec<f64>>,
}

impl PairwisePhaseMatrix {
    pub fn new(phases: Vec<Vec<f64>>) -> Result<Self> {
        let m = phases.len();
        if m == 0 || m > MAX_ARMS {
            return Err(Error::validation(format!(
                "phase matrix must have 1..={MAX_ARMS} rows, got {m}"
            )));
        }
        for (i, row) in phases.iter().enumerate() {
            if row.len() != m {
                return Err(Error::validation(format!(
                    "row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::validation(format!("row {i} has non-finite entries")));
            }
            if row[i] != 0.0 {
                return Err(Error::validation(format!(
                    "diagonal entry ({i},{i}) must be zero, got {}",
                    row[i]
                )));
            }
        }
        for (i, row) in phases.iter().enumerate() {
            for (j, col) in phases.iter().enumerate().skip(i + 1) {
                if row[j] != col[i] {
                    return Err(Error::validation(format!(
                        "matrix is not symmetric at ({i},{j}): {} vs {}",
                        row[j], col[i]
                    )));
                }
            }
        }
        Ok(Self { phases })
    }

    /// Every pair couples with the same phase.
    pub fn homogeneous(num_arms: usize, phi: f64) -> Result<Self> {
        let phases = (0..num_arms)
            .map(|i| (0..num_arms).map(|j| if i == j { 0.0 } else { phi }).collect())
            .collect();
        Self::new(phases)
    }

    /// Only the pair `(i, j)` couples.
    pub fn single_pair(num_arms: usize, i: usize, j: usize, phi: f64) -> Result<Self> {
        if i == j || i >= num_arms || j >= num_arms {
            return Err(Error::validation(format!("invalid pair ({i},{j}) for {num_arms} arms")));
        }
        let mut phases = vec![vec![0.0; num_arms]; num_arms];
        phases[i][j] = phi;
        phases[j][i] = phi;
        Self::new(phases)
    }

    pub fn num_arms(&self) -> usize {
        self.phases.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.phases[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.phases
    }
}

/// Diagonal of `exp(i Σ_{i<j} φ_ij b_i b_j)` over the `2^M` basis states.
pub fn ea_unitary(phases: &PairwisePhaseMatrix) -> Vec<Complex64> {
    let m = phases.num_arms();
    (0..1usize << m)
        .map(|b| {
            let mut total = 0.0;
            for i in 0..m {
                if b >> i & 1 == 0 {
                    continue;
                }
                for j in (i + 1)..m {
                    if b >> j & 1 == 1 {
                        total += phases.get(i, j);
                    }
                }
            }
            Complex64::from_polar(1.0, total)
        })
        .collect()
}

pub fn apply_ea(state: &RegisterState, phases: &PairwisePhaseMatrix) -> Result<RegisterState> {
    if phases.num_arms() != state.num_arms() {
        return Err(Error::DimensionMismatch {
            left: phases.num_arms(),
            right: state.num_arms(),
        });
    }
    state.apply_diagonal(&ea_unitary(phases))
}
