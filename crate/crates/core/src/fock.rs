//! Truncated photon-number space, used to check the qubit-level gates
//! against the underlying bosonic operators.
//!
//! Modes are truncated at `n_max` photons each. A joint basis state
//! `|n_0, n_1, …⟩` has index `Σ_k n_k·(n_max+1)^k`, so mode 0 is the fastest
//! varying digit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entanglement::TwoQubitUnitary;
use crate::error::{Error, Result};

/// Largest joint dimension accepted.
pub const MAX_DIM: usize = 1_000_000;

pub const DEFAULT_N_MAX: usize = 4;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockSpace {
    n_max: usize,
    num_modes: usize,
}

impl FockSpace {
    pub fn new(n_max: usize, num_modes: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::domain("truncation n_max must be >= 1"));
        }
        if num_modes == 0 {
            return Err(Error::domain("need at least one mode"));
        }
        let dim = (n_max + 1)
            .checked_pow(num_modes as u32)
            .filter(|&d| d <= MAX_DIM)
            .ok_or_else(|| Error::domain(format!("joint dimension ({}^{num_modes}) exceeds {MAX_DIM}", n_max + 1)))?;
        debug_assert!(dim >= 2);
        Ok(Self { n_max, num_modes })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1).pow(self.num_modes as u32)
    }

    fn stride(&self, mode: usize) -> usize {
        (self.n_max + 1).pow(mode as u32)
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.num_modes {
            return Err(Error::Index {
                index: mode,
                limit: self.num_modes,
            });
        }
        Ok(())
    }

    /// Photon number of `mode` in basis state `index`.
    pub fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.stride(mode)) % (self.n_max + 1)
    }

    pub fn occupations(&self, index: usize) -> Vec<usize> {
        (0..self.num_modes).map(|k| self.occupation(index, k)).collect()
    }

    pub fn index(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.num_modes {
            return Err(Error::DimensionMismatch {
                left: occupations.len(),
                right: self.num_modes,
            });
        }
        occupations.iter().enumerate().try_fold(0, |acc, (k, &n)| {
            if n > self.n_max {
                Err(Error::domain(format!(
                    "occupation {n} of mode {k} exceeds n_max = {}",
                    self.n_max
                )))
            } else {
                Ok(acc + n * self.stride(k))
            }
        })
    }
}

/// Sparse operator on a [`FockSpace`], stored row by row.
///
/// `modes` lists the modes the operator acts on nontrivially.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    space: FockSpace,
    modes: Vec<usize>,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl FockOperator {
    pub fn identity(space: FockSpace) -> Self {
        Self::from_diagonal(space, Vec::new(), vec![ONE; space.dim()])
    }

    fn from_diagonal(space: FockSpace, modes: Vec<usize>, diag: Vec<Complex64>) -> Self {
        let rows = diag
            .into_iter()
            .enumerate()
            .map(|(i, v)| if v == ZERO { Vec::new() } else { vec![(i, v)] })
            .collect();
        Self { space, modes, rows }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.rows[row].iter().filter(|&&(c, _)| c == col).map(|&(_, v)| v).sum()
    }

    pub fn row(&self, row: usize) -> &[(usize, Complex64)] {
        &self.rows[row]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|&(c, v)| c == i || v.norm() <= tol))
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    fn merged_modes(&self, other: &Self) -> Vec<usize> {
        let mut modes: Vec<usize> = self.modes.iter().chain(&other.modes).copied().collect();
        modes.sort_unstable();
        modes.dedup();
        modes
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut acc = vec![ZERO; self.dim()];
        let mut touched: Vec<usize> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for &(k, a) in row {
                    for &(j, b) in &other.rows[k] {
                        if acc[j] == ZERO {
                            touched.push(j);
                        }
                        acc[j] += a * b;
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let out: Vec<(usize, Complex64)> = touched
                    .drain(..)
                    .map(|j| (j, std::mem::replace(&mut acc[j], ZERO)))
                    .filter(|&(_, v)| v != ZERO)
                    .collect();
                out
            })
            .collect();
        Ok(Self {
            space: self.space,
            modes: self.merged_modes(other),
            rows,
        })
    }

    fn combine(&self, other: &Self, sign: f64) -> Result<Self> {
        self.check_same_space(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row: Vec<(usize, Complex64)> =
                    a.iter().copied().chain(b.iter().map(|&(c, v)| (c, v * sign))).collect();
                row.sort_by_key(|&(c, _)| c);
                let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|&(_, v)| v != ZERO);
                merged
            })
            .collect();
        Ok(Self {
            space: self.space,
            modes: self.merged_modes(other),
            rows,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1.0)
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn dagger(&self) -> Self {
        let mut rows = vec![Vec::new(); self.dim()];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                rows[j].push((i, v.conj()));
            }
        }
        Self {
            space: self.space,
            modes: self.modes.clone(),
            rows,
        }
    }

    /// Largest elementwise `|A_ij − B_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self
            .sub(other)?
            .rows
            .iter()
            .flatten()
            .map(|&(_, v)| v.norm())
            .fold(0.0, f64::max))
    }

    pub fn apply(&self, state: &FockState) -> Result<FockState> {
        if state.space != self.space {
            return Err(Error::DimensionMismatch {
                left: state.amplitudes.len(),
                right: self.dim(),
            });
        }
        let amplitudes = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| v * state.amplitudes[c]).sum())
            .collect();
        Ok(FockState {
            space: self.space,
            amplitudes,
        })
    }
}

/// `N_k`, diagonal with eigenvalue `n` on `|n⟩_k`.
pub fn number_operator(space: &FockSpace, mode: usize) -> Result<FockOperator> {
    space.check_mode(mode)?;
    let diag = (0..space.dim())
        .map(|i| Complex64::new(space.occupation(i, mode) as f64, 0.0))
        .collect();
    Ok(FockOperator::from_diagonal(*space, vec![mode], diag))
}

/// `a_k` with `a|n⟩ = √n |n−1⟩`.
pub fn annihilation(space: &FockSpace, mode: usize) -> Result<FockOperator> {
    space.check_mode(mode)?;
    let stride = space.stride(mode);
    let mut rows = vec![Vec::new(); space.dim()];
    for col in 0..space.dim() {
        let n = space.occupation(col, mode);
        if n > 0 {
            rows[col - stride].push((col, Complex64::new((n as f64).sqrt(), 0.0)));
        }
    }
    Ok(FockOperator {
        space: *space,
        modes: vec![mode],
        rows,
    })
}

/// `a_k†`; states at `n_max` are mapped to zero.
pub fn creation(space: &FockSpace, mode: usize) -> Result<FockOperator> {
    Ok(annihilation(space, mode)?.dagger())
}

/// `Σ_{k ∈ modes} N_k`.
pub fn bundle_number(space: &FockSpace, modes: &[usize]) -> Result<FockOperator> {
    if modes.is_empty() {
        return Err(Error::domain("bundle needs at least one mode"));
    }
    let mut sorted = modes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &m in &sorted {
        space.check_mode(m)?;
    }
    let diag = (0..space.dim())
        .map(|i| {
            let n: usize = sorted.iter().map(|&m| space.occupation(i, m)).sum();
            Complex64::new(n as f64, 0.0)
        })
        .collect();
    Ok(FockOperator::from_diagonal(*space, sorted, diag))
}

/// `exp(iφ N_a N_b)` for number operators on disjoint mode sets.
pub fn kerr_unitary(phi: f64, n_a: &FockOperator, n_b: &FockOperator) -> Result<FockOperator> {
    if !phi.is_finite() {
        return Err(Error::domain("phi must be finite"));
    }
    n_a.check_same_space(n_b)?;
    if let Some(m) = n_a.modes.iter().find(|m| n_b.modes.contains(m)) {
        return Err(Error::validation(format!("number operators overlap on mode {m}")));
    }
    if !(n_a.is_diagonal(0.0) && n_b.is_diagonal(0.0)) {
        return Err(Error::validation("Kerr phase needs diagonal number operators"));
    }
    let diag = n_a
        .diagonal()
        .into_iter()
        .zip(n_b.diagonal())
        .map(|(a, b)| Complex64::from_polar(1.0, phi * a.re * b.re))
        .collect();
    Ok(FockOperator::from_diagonal(n_a.space, n_a.merged_modes(n_b), diag))
}

/// Dual-rail encoding: each arm is a pair of modes `(H, V)` holding one
/// photon, with logical `|0⟩` = photon in H and `|1⟩` = photon in V.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualRailEncoding {
    arms: Vec<(usize, usize)>,
}

impl DualRailEncoding {
    pub fn new(arms: Vec<(usize, usize)>) -> Result<Self> {
        let mut all: Vec<usize> = arms.iter().flat_map(|&(h, v)| [h, v]).collect();
        all.sort_unstable();
        let n = all.len();
        all.dedup();
        if all.len() != n {
            return Err(Error::validation("dual-rail arms must use distinct modes"));
        }
        if arms.is_empty() {
            return Err(Error::validation("encoding needs at least one arm"));
        }
        Ok(Self { arms })
    }

    /// Arm `i` uses mode `2i` for H and `2i+1` for V.
    pub fn standard(num_arms: usize) -> Result<Self> {
        Self::new((0..num_arms).map(|i| (2 * i, 2 * i + 1)).collect())
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    pub fn h_mode(&self, arm: usize) -> usize {
        self.arms[arm].0
    }

    pub fn v_mode(&self, arm: usize) -> usize {
        self.arms[arm].1
    }

    fn check(&self, space: &FockSpace, arm: usize) -> Result<()> {
        if arm >= self.arms.len() {
            return Err(Error::Index {
                index: arm,
                limit: self.arms.len(),
            });
        }
        let (h, v) = self.arms[arm];
        space.check_mode(h)?;
        space.check_mode(v)
    }

    /// Basis index of the encoded state with the given logical bits; arms
    /// not listed stay in vacuum.
    pub fn encoded_index(&self, space: &FockSpace, bits: &[(usize, bool)]) -> Result<usize> {
        let mut occ = vec![0; space.num_modes()];
        for &(arm, bit) in bits {
            self.check(space, arm)?;
            let (h, v) = self.arms[arm];
            occ[if bit { v } else { h }] = 1;
        }
        space.index(&occ)
    }
}

/// Projects `u` onto the encoded states of arms `(arm_a, arm_b)`, ordered
/// `|00⟩, |01⟩, |10⟩, |11⟩` with `arm_a` as the first label.
pub fn restrict_to_qubits(
    u: &FockOperator,
    encoding: &DualRailEncoding,
    arm_a: usize,
    arm_b: usize,
) -> Result<TwoQubitUnitary> {
    if arm_a == arm_b {
        return Err(Error::domain("restriction needs two distinct arms"));
    }
    let space = u.space();
    let idx: Vec<usize> = [(false, false), (false, true), (true, false), (true, true)]
        .iter()
        .map(|&(a, b)| encoding.encoded_index(&space, &[(arm_a, a), (arm_b, b)]))
        .collect::<Result<_>>()?;

    let mut leak: f64 = 0.0;
    let mut m = [[ZERO; 4]; 4];
    for (r, &row) in idx.iter().enumerate() {
        for &(col, v) in u.row(row) {
            match idx.iter().position(|&i| i == col) {
                Some(c) => m[r][c] += v,
                None => leak = leak.max(v.norm_sqr()),
            }
        }
    }
    // columns: anything outside the subspace fed by an encoded state
    let dag = u.dagger();
    for &col in &idx {
        let out: f64 = dag
            .row(col)
            .iter()
            .filter(|(r, _)| !idx.contains(r))
            .map(|(_, v)| v.norm_sqr())
            .sum();
        leak = leak.max(out);
    }
    if leak > 1e-12 {
        return Err(Error::Leakage(leak));
    }
    Ok(TwoQubitUnitary::from_matrix(m))
}

/// Pure state on a [`FockSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    space: FockSpace,
    amplitudes: Vec<Complex64>,
}

impl FockState {
    pub fn new(space: FockSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: space.dim(),
            });
        }
        Ok(Self { space, amplitudes })
    }

    pub fn basis(space: FockSpace, occupations: &[usize]) -> Result<Self> {
        let i = space.index(occupations)?;
        let mut amplitudes = vec![ZERO; space.dim()];
        amplitudes[i] = ONE;
        Ok(Self { space, amplitudes })
    }

    /// `α|0⟩ + β|1⟩` on one dual-rail arm, everything else in vacuum.
    pub fn encoded_qubit(
        space: FockSpace,
        encoding: &DualRailEncoding,
        arm: usize,
        alpha: Complex64,
        beta: Complex64,
    ) -> Result<Self> {
        let mut amplitudes = vec![ZERO; space.dim()];
        amplitudes[encoding.encoded_index(&space, &[(arm, false)])?] = alpha;
        amplitudes[encoding.encoded_index(&space, &[(arm, true)])?] = beta;
        Ok(Self { space, amplitudes })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// `⟨N_H − N_V⟩` for one arm.
pub fn stokes_expectation(state: &FockState, encoding: &DualRailEncoding, arm: usize) -> Result<f64> {
    let norm = state.norm_sqr();
    if norm.is_nan() || (norm - 1.0).abs() > 1e-8 {
        return Err(Error::validation(format!("state norm² is {norm}, expected 1")));
    }
    let space = state.space;
    encoding.check(&space, arm)?;
    let (h, v) = (encoding.h_mode(arm), encoding.v_mode(arm));
    Ok(state
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, a)| {
            let diff = space.occupation(i, h) as f64 - space.occupation(i, v) as f64;
            a.norm_sqr() * diff
        })
        .sum())
}
