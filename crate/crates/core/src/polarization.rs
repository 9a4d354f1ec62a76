//! Polarization-qubit register and single-qubit SU(2) gate algebra.
//!
//! Each arm carries one qubit with `|0⟩ ≡ |H⟩` and `|1⟩ ≡ |V⟩`. Arm `i` maps
//! to bit `i` of the basis index, so arm 0 is the least significant bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::ops::Mul;

use crate::error::{Error, Result};

/// Largest supported register (4096 amplitudes).
pub const MAX_ARMS: usize = 12;

/// Unitarity tolerance accepted by [`euler_decompose`].
pub const UNITARITY_TOL: f64 = 1e-10;

const NORM_TOL: f64 = 1e-10;
const GIMBAL_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {value}")))
    }
}

/// 2×2 complex matrix acting on one polarization qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleQubitUnitary {
    m: [[Complex64; 2]; 2],
}

impl SingleQubitUnitary {
    /// Wraps a matrix after checking `U†U = I` within `tol`.
    pub fn new(m: [[Complex64; 2]; 2], tol: f64) -> Result<Self> {
        let u = Self { m };
        let dev = u.unitarity_error();
        if dev.is_nan() || dev > tol {
            return Err(Error::validation(format!(
                "matrix is not unitary (max |U†U - I| = {dev:e})"
            )));
        }
        Ok(u)
    }

    #[cfg(test)]
    pub(crate) fn from_matrix_unchecked(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn dagger(&self) -> Self {
        let m = &self.m;
        Self {
            m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|z| *z *= factor);
        Self { m }
    }

    /// Largest elementwise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.dagger() * *self;
        let id = Self::identity();
        p.max_abs_diff(&id)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `1 − |tr(U†V)|/2`; zero iff the matrices agree up to a global phase.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        let p = self.dagger() * *other;
        (1.0 - (p.m[0][0] + p.m[1][1]).norm() / 2.0).max(0.0)
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }
}

impl Mul for SingleQubitUnitary {
    type Output = SingleQubitUnitary;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { m }
    }
}

/// Rotation about the polar axis, `exp(−iφσ_z/2) = diag(e^{−iφ/2}, e^{iφ/2})`.
pub fn rz(phi: f64) -> Result<SingleQubitUnitary> {
    check_finite("phi", phi)?;
    Ok(rz_unchecked(phi))
}

pub(crate) fn rz_unchecked(phi: f64) -> SingleQubitUnitary {
    let half = Complex64::from_polar(1.0, phi / 2.0);
    SingleQubitUnitary {
        m: [[half.conj(), ZERO], [ZERO, half]],
    }
}

/// Rotation by `theta` about the equatorial axis `cos γ·x + sin γ·y`.
pub fn rperp(theta: f64, gamma: f64) -> Result<SingleQubitUnitary> {
    check_finite("theta", theta)?;
    check_finite("gamma", gamma)?;
    Ok(rperp_unchecked(theta, gamma))
}

pub(crate) fn rperp_unchecked(theta: f64, gamma: f64) -> SingleQubitUnitary {
    let (s, c) = (theta / 2.0).sin_cos();
    // −i·sin(θ/2)·(cos γ σ_x + sin γ σ_y): off-diagonals −i s e^{∓iγ}
    let axis = Complex64::from_polar(1.0, gamma);
    let mi_s = Complex64::new(0.0, -s);
    SingleQubitUnitary {
        m: [
            [Complex64::new(c, 0.0), mi_s * axis.conj()],
            [mi_s * axis, Complex64::new(c, 0.0)],
        ],
    }
}

/// Phase gate `diag(1, e^{iφ})`.
pub fn phase_gate(phi: f64) -> Result<SingleQubitUnitary> {
    check_finite("phi", phi)?;
    Ok(SingleQubitUnitary {
        m: [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, phi)]],
    })
}

/// The Hadamard matrix `(σ_x + σ_z)/√2`.
pub fn hadamard() -> SingleQubitUnitary {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    SingleQubitUnitary { m: [[h, h], [h, -h]] }
}

pub fn pauli_x() -> SingleQubitUnitary {
    SingleQubitUnitary {
        m: [[ZERO, ONE], [ONE, ZERO]],
    }
}

pub fn pauli_z() -> SingleQubitUnitary {
    SingleQubitUnitary {
        m: [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// Angles of the form `R_z(φ)·R_⊥(θ, 0)·R_z(λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta: f64,
    pub lambda: f64,
}

impl EulerAngles {
    pub fn new(phi: f64, theta: f64, lambda: f64) -> Self {
        Self { phi, theta, lambda }
    }

    /// Maps `theta` into `[0, π]` and `phi`, `lambda` into `[0, 2π)`.
    ///
    /// The resulting rotation may differ from the original by a sign (a
    /// global phase of π).
    pub fn normalized(&self) -> Self {
        let mut phi = self.phi;
        let mut lambda = self.lambda;
        let mut theta = self.theta.rem_euclid(2.0 * TAU);
        // R_x(θ) for θ in (2π, 4π) is −R_x(θ − 2π)
        if theta > TAU {
            theta -= TAU;
        }
        if theta > PI {
            // R_x(θ) = R_z(π)·R_x(2π − θ)·R_z(π) up to sign
            theta = TAU - theta;
            phi += PI;
            lambda += PI;
        }
        Self {
            phi: wrap_angle(phi),
            theta,
            lambda: wrap_angle(lambda),
        }
    }
}

fn wrap_angle(a: f64) -> f64 {
    // + 0.0 turns −0.0 into 0.0
    let w = a.rem_euclid(TAU) + 0.0;
    if w >= TAU {
        0.0
    } else {
        w
    }
}

fn wrap_signed(a: f64) -> f64 {
    let w = wrap_angle(a);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

/// `R_z(φ)·R_⊥(θ, 0)·R_z(λ)`.
pub fn euler_compose(angles: &EulerAngles) -> Result<SingleQubitUnitary> {
    Ok(rz(angles.phi)? * rperp(angles.theta, 0.0)? * rz(angles.lambda)?)
}

/// Inverse of [`euler_compose`]: returns canonical angles and the global
/// phase `α` with `e^{iα}·euler_compose(angles) = U`.
///
/// At gimbal lock (`θ` within 1e-9 of 0 or π) `λ` is set to zero and the
/// whole z-rotation is carried by `φ`.
pub fn euler_decompose(u: &SingleQubitUnitary) -> Result<(EulerAngles, f64)> {
    if u.m.iter().flatten().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::domain("matrix has non-finite entries"));
    }
    let dev = u.unitarity_error();
    if dev.is_nan() || dev > UNITARITY_TOL {
        return Err(Error::validation(format!(
            "matrix is not unitary (max |U†U - I| = {dev:e})"
        )));
    }
    let m = &u.m;
    // strip the global phase so that U' = e^{-iα₀}U has unit determinant
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let strip = Complex64::from_polar(1.0, -det.arg() / 2.0);
    let (u00, u10) = (m[0][0] * strip, m[1][0] * strip);
    // |U00| = cos(θ/2), |U10| = sin(θ/2)
    let theta = 2.0 * u10.norm().atan2(u00.norm());

    // U'00 = e^{-i(φ+λ)/2} cos(θ/2),  U'10 = -i e^{i(φ-λ)/2} sin(θ/2)
    let half_sum = -u00.arg();
    let half_diff = (Complex64::i() * u10).arg();
    let (phi, lambda) = if theta < GIMBAL_TOL {
        (2.0 * half_sum, 0.0)
    } else if PI - theta < GIMBAL_TOL {
        (2.0 * half_diff, 0.0)
    } else {
        (half_sum + half_diff, half_sum - half_diff)
    };
    let theta = if theta < GIMBAL_TOL {
        0.0
    } else if PI - theta < GIMBAL_TOL {
        PI
    } else {
        theta
    };
    let angles = EulerAngles::new(wrap_angle(phi), theta, wrap_angle(lambda));

    let v = euler_compose(&angles)?;
    let p = v.dagger() * *u;
    let tr = p.m[0][0] + p.m[1][1];
    let alpha = if tr.norm() > 0.0 { wrap_signed(tr.arg()) } else { 0.0 };
    Ok((angles, alpha))
}

/// Amplitude vector over the `2^M` computational basis of `M` arms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterState {
    num_arms: usize,
    amplitudes: Vec<Complex64>,
}

fn check_arms(num_arms: usize) -> Result<()> {
    if num_arms == 0 || num_arms > MAX_ARMS {
        return Err(Error::domain(format!(
            "number of arms must be in 1..={MAX_ARMS}, got {num_arms}"
        )));
    }
    Ok(())
}

impl RegisterState {
    /// All arms horizontally polarized, `|0…0⟩`.
    pub fn zero(num_arms: usize) -> Result<Self> {
        Self::basis(num_arms, 0)
    }

    pub fn basis(num_arms: usize, index: usize) -> Result<Self> {
        check_arms(num_arms)?;
        let dim = 1usize << num_arms;
        if index >= dim {
            return Err(Error::Index { index, limit: dim });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { num_arms, amplitudes })
    }

    /// Validates dimension and unit norm (within 1e-10).
    pub fn from_amplitudes(num_arms: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_arms(num_arms)?;
        let dim = 1usize << num_arms;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: dim,
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm.is_nan() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::validation(format!("state norm² is {norm}, expected 1")));
        }
        Ok(Self { num_arms, amplitudes })
    }

    /// Rescales an arbitrary non-zero vector to unit norm.
    pub fn normalized(num_arms: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::validation("cannot normalize a zero vector"));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(num_arms, amplitudes)
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_arm(&self, arm: usize) -> Result<()> {
        if arm >= self.num_arms {
            return Err(Error::Index {
                index: arm,
                limit: self.num_arms,
            });
        }
        Ok(())
    }

    /// `I ⊗ … ⊗ U ⊗ … ⊗ I` with `U` on `arm`.
    pub fn apply_single(&self, arm: usize, u: &SingleQubitUnitary) -> Result<Self> {
        self.check_arm(arm)?;
        let mut out = self.clone();
        let bit = 1usize << arm;
        for i in (0..self.dim()).filter(|i| i & bit == 0) {
            let [a, b] = u.apply([self.amplitudes[i], self.amplitudes[i | bit]]);
            out.amplitudes[i] = a;
            out.amplitudes[i | bit] = b;
        }
        Ok(out)
    }

    /// Applies a 4×4 matrix on `(first, second)` in the basis
    /// `|b_first b_second⟩`, i.e. row index `2·b_first + b_second`.
    pub fn apply_two(&self, first: usize, second: usize, u: &[[Complex64; 4]; 4]) -> Result<Self> {
        self.check_arm(first)?;
        self.check_arm(second)?;
        if first == second {
            return Err(Error::domain("two-qubit gate needs distinct arms"));
        }
        let (bf, bs) = (1usize << first, 1usize << second);
        let mut out = self.clone();
        for base in (0..self.dim()).filter(|i| i & (bf | bs) == 0) {
            let idx = [base, base | bs, base | bf, base | bf | bs];
            let v = idx.map(|i| self.amplitudes[i]);
            for (r, &target) in idx.iter().enumerate() {
                out.amplitudes[target] = (0..4).map(|c| u[r][c] * v[c]).sum();
            }
        }
        Ok(out)
    }

    /// Multiplies each amplitude by the matching diagonal entry.
    pub fn apply_diagonal(&self, diag: &[Complex64]) -> Result<Self> {
        if diag.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: diag.len(),
                right: self.dim(),
            });
        }
        let amplitudes = self.amplitudes.iter().zip(diag).map(|(a, d)| a * d).collect();
        Ok(Self {
            num_arms: self.num_arms,
            amplitudes,
        })
    }

    /// `⟨a|b⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `P(b_arm = 0) − P(b_arm = 1)`, the qubit-level Stokes readout.
    pub fn z_expectation(&self, arm: usize) -> Result<f64> {
        self.check_arm(arm)?;
        let bit = 1usize << arm;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| if i & bit == 0 { a.norm_sqr() } else { -a.norm_sqr() })
            .sum())
    }
}

/// `|⟨a|b⟩|²` (computed as `|⟨a|b⟩|²/(⟨a|a⟩⟨b|b⟩)` so identical states give
/// exactly 1).
pub fn state_fidelity(a: &RegisterState, b: &RegisterState) -> Result<f64> {
    let ab = a.inner(b)?;
    let f = ab.norm_sqr() / (a.norm_sqr() * b.norm_sqr());
    Ok(f.clamp(0.0, 1.0))
}
