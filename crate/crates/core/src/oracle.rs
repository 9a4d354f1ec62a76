//! Equivalence suite between the qubit-level gates and the truncated
//! photon-number model.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use crate::entanglement::{cp_gate, ea_unitary, PairwisePhaseMatrix};
use crate::error::Result;
use crate::fock::{
    annihilation, bundle_number, creation, kerr_unitary, number_operator, restrict_to_qubits, stokes_expectation,
    DualRailEncoding, FockOperator, FockSpace, FockState, DEFAULT_N_MAX,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    /// Test hook: build the Fock-side propagator with the opposite sign.
    pub inject_sign_flip: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            n_max: DEFAULT_N_MAX,
            samples: 20,
            seed: 2024,
            inject_sign_flip: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst deviation seen.
    pub max_error: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn new(name: &str, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: max_error <= tolerance,
            max_error,
            tolerance,
        }
    }
}

/// Names of the checks, in the order [`run_suite`] reports them.
pub const CHECK_NAMES: [&str; 7] = [
    "kerr-diagonal-unit-modulus",
    "kerr-restriction-equals-cp",
    "ea-pair-equals-cp",
    "stokes-canonical-states",
    "stokes-qubit-readout",
    "disjoint-bundles-commute",
    "number-equals-adag-a",
];

pub fn run_suite(opts: &OracleOptions) -> Result<Vec<CheckResult>> {
    let space = FockSpace::new(opts.n_max, 4)?;
    let enc = DualRailEncoding::standard(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let phis: Vec<f64> = (0..opts.samples).map(|_| rng.random_range(-TAU..TAU)).collect();
    let sign = if opts.inject_sign_flip { -1.0 } else { 1.0 };

    let nv0 = number_operator(&space, enc.v_mode(0))?;
    let nv1 = number_operator(&space, enc.v_mode(1))?;

    let mut unit_err: f64 = 0.0;
    let mut cp_err: f64 = 0.0;
    for &phi in &phis {
        let k = kerr_unitary(sign * phi, &nv0, &nv1)?;
        if !k.is_diagonal(0.0) {
            unit_err = f64::INFINITY;
        }
        for d in k.diagonal() {
            unit_err = unit_err.max((d.norm() - 1.0).abs());
        }
        let r = restrict_to_qubits(&k, &enc, 0, 1)?;
        cp_err = cp_err.max(r.max_abs_diff(&cp_gate(phi)?));
    }

    let mut ea_err: f64 = 0.0;
    for &phi in &phis {
        let d = ea_unitary(&PairwisePhaseMatrix::single_pair(2, 0, 1, phi)?);
        let cp = cp_gate(phi)?;
        for (i, v) in d.iter().enumerate() {
            // ea indexes arm 0 as bit 0; cp_gate lists |b0 b1⟩ with b0 first
            let k = 2 * (i & 1) + (i >> 1);
            ea_err = ea_err.max((v - cp.get(k, k)).norm());
        }
    }

    let n = opts.n_max;
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let canonical = [
        (FockState::basis(space, &[n, 0, 0, 0])?, n as f64),
        (FockState::basis(space, &[0, n, 0, 0])?, -(n as f64)),
        (FockState::encoded_qubit(space, &enc, 0, h, h)?, 0.0),
    ];
    let mut stokes_err: f64 = 0.0;
    for (state, expect) in &canonical {
        stokes_err = stokes_err.max((stokes_expectation(state, &enc, 0)? - expect).abs());
    }

    let mut readout_err: f64 = 0.0;
    for &phi in &phis {
        let theta = phi.abs() / 2.0;
        let alpha = Complex64::new(theta.cos(), 0.0);
        let beta = Complex64::from_polar(theta.sin(), phi);
        let state = FockState::encoded_qubit(space, &enc, 1, alpha, beta)?;
        let expect = alpha.norm_sqr() - beta.norm_sqr();
        readout_err = readout_err.max((stokes_expectation(&state, &enc, 1)? - expect).abs());
    }

    let b0 = bundle_number(&space, &[enc.h_mode(0), enc.v_mode(0)])?;
    let b1 = bundle_number(&space, &[enc.h_mode(1), enc.v_mode(1)])?;
    let comm = b0.commutator(&b1)?;
    let zero = FockOperator::identity(space).sub(&FockOperator::identity(space))?;
    let comm_err = comm.max_abs_diff(&zero)?;

    let mut ladder_err: f64 = 0.0;
    for mode in 0..space.num_modes() {
        let n_op = creation(&space, mode)?.matmul(&annihilation(&space, mode)?)?;
        ladder_err = ladder_err.max(n_op.max_abs_diff(&number_operator(&space, mode)?)?);
    }

    let errs = [
        (unit_err, 1e-12),
        (cp_err, 1e-12),
        (ea_err, 1e-12),
        (stokes_err, 0.0),
        (readout_err, 1e-12),
        (comm_err, 0.0),
        (ladder_err, 1e-14),
    ];
    Ok(CHECK_NAMES
        .iter()
        .zip(errs)
        .map(|(name, (err, tol))| CheckResult::new(name, err, tol))
        .collect())
}

/// `true` if every check in the suite passes.
pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
