//! Python bindings. Gates come back as nested lists of complex numbers;
//! reports come back as dicts.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use kerrcav::circuit::CircuitProgram;
use kerrcav::entanglement::{self, PairwisePhaseMatrix};
use kerrcav::feasibility::{self, FeasibilityInput, FeasibilityReport, Geometry, Regime, ReportOptions};
use kerrcav::oracle::{self, OracleOptions};
use kerrcav::polarization::{self, EulerAngles, SingleQubitUnitary, UNITARITY_TOL};
use kerrcav::transit::{self, FidelityStudy, NoiseConfig, Sweep};

fn err(e: kerrcav::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type Matrix = Vec<Vec<Complex64>>;

fn to_rows(u: &SingleQubitUnitary) -> Matrix {
    u.matrix().iter().map(|r| r.to_vec()).collect()
}

fn from_rows(m: &Matrix) -> PyResult<SingleQubitUnitary> {
    if m.len() != 2 || m.iter().any(|r| r.len() != 2) {
        return Err(PyValueError::new_err("expected a 2x2 matrix"));
    }
    SingleQubitUnitary::new([[m[0][0], m[0][1]], [m[1][0], m[1][1]]], UNITARITY_TOL).map_err(err)
}

#[pyfunction]
fn rz(phi: f64) -> PyResult<Matrix> {
    Ok(to_rows(&polarization::rz(phi).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (theta, gamma=0.0))]
fn rperp(theta: f64, gamma: f64) -> PyResult<Matrix> {
    Ok(to_rows(&polarization::rperp(theta, gamma).map_err(err)?))
}

#[pyfunction]
fn hadamard() -> Matrix {
    to_rows(&polarization::hadamard())
}

/// `Rz(phi)·R⊥(theta, 0)·Rz(lambda)`.
#[pyfunction]
fn euler_compose(phi: f64, theta: f64, lam: f64) -> PyResult<Matrix> {
    Ok(to_rows(
        &polarization::euler_compose(&EulerAngles::new(phi, theta, lam)).map_err(err)?,
    ))
}

/// Returns `(phi, theta, lambda, global_phase)`.
#[pyfunction]
fn euler_decompose(u: Matrix) -> PyResult<(f64, f64, f64, f64)> {
    let (a, alpha) = polarization::euler_decompose(&from_rows(&u)?).map_err(err)?;
    Ok((a.phi, a.theta, a.lambda, alpha))
}

#[pyfunction]
fn cp_gate(phi: f64) -> PyResult<Matrix> {
    let u = entanglement::cp_gate(phi).map_err(err)?;
    Ok(u.matrix().iter().map(|r| r.to_vec()).collect())
}

/// State of `num_arms` polarization qubits; arm `i` is bit `i` of the index.
#[pyclass(name = "RegisterState", from_py_object)]
#[derive(Clone)]
struct PyRegisterState {
    inner: polarization::RegisterState,
}

#[pymethods]
impl PyRegisterState {
    #[new]
    #[pyo3(signature = (num_arms, amplitudes=None))]
    fn new(num_arms: usize, amplitudes: Option<Vec<Complex64>>) -> PyResult<Self> {
        let inner = match amplitudes {
            Some(a) => polarization::RegisterState::from_amplitudes(num_arms, a),
            None => polarization::RegisterState::zero(num_arms),
        }
        .map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn num_arms(&self) -> usize {
        self.inner.num_arms()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    fn probabilities(&self) -> Vec<f64> {
        self.inner.probabilities()
    }

    fn z_expectation(&self, arm: usize) -> PyResult<f64> {
        self.inner.z_expectation(arm).map_err(err)
    }

    fn apply(&self, arm: usize, u: Matrix) -> PyResult<Self> {
        let inner = self.inner.apply_single(arm, &from_rows(&u)?).map_err(err)?;
        Ok(Self { inner })
    }

    fn cnot(&self, control: usize, target: usize) -> PyResult<Self> {
        let inner = entanglement::cnot(&self.inner, control, target).map_err(err)?;
        Ok(Self { inner })
    }

    fn cp(&self, a: usize, b: usize, phi: f64) -> PyResult<Self> {
        let inner = entanglement::apply_cp(&self.inner, a, b, phi).map_err(err)?;
        Ok(Self { inner })
    }

    /// Applies the all-pairs conditional phase for a symmetric angle matrix.
    fn ea(&self, phases: Vec<Vec<f64>>) -> PyResult<Self> {
        let m = PairwisePhaseMatrix::new(phases).map_err(err)?;
        let inner = entanglement::apply_ea(&self.inner, &m).map_err(err)?;
        Ok(Self { inner })
    }

    fn fidelity(&self, other: &Self) -> PyResult<f64> {
        polarization::state_fidelity(&self.inner, &other.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("RegisterState(num_arms={})", self.inner.num_arms())
    }
}

/// Parses and runs circuit text; relative `EA` paths resolve against `base_dir`.
#[pyfunction]
#[pyo3(signature = (text, base_dir=None))]
fn simulate(text: &str, base_dir: Option<std::path::PathBuf>) -> PyResult<PyRegisterState> {
    let program = CircuitProgram::parse(text, base_dir.as_deref()).map_err(err)?;
    Ok(PyRegisterState {
        inner: program.run().map_err(err)?,
    })
}

fn report_dict<'py>(py: Python<'py>, r: &FeasibilityReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let i = &r.input;
    for (k, v) in [
        ("lambda", i.lambda),
        ("l_cav", i.l_cav),
        ("l_nl", i.l_nl),
        ("n2", i.n2),
        ("w", i.w),
        ("power", i.power),
        ("q_factor", i.q_factor),
        ("area", r.derived.area),
        ("intensity", r.derived.intensity),
        ("omega", r.derived.omega),
        ("tau", r.derived.tau),
        ("n_rt", r.derived.n_rt),
        ("phi0", r.phi0),
        ("phi_tot", r.phi_tot),
    ] {
        d.set_item(k, v)?;
    }
    d.set_item("feasible", r.feasible)?;
    let budget: Vec<(u64, f64)> = r
        .linewidth_budget
        .iter()
        .map(|e| (e.n_ops, e.max_linewidth_hz))
        .collect();
    d.set_item("linewidth_budget", budget)?;
    if let Some(g) = &r.implied {
        d.set_item("l_nl_over_l_cav", g.l_nl_over_l_cav)?;
    }
    if let Some(c) = &r.coherence {
        d.set_item("coherence_passed", c.passed)?;
        d.set_item("coherence_ratio", c.ratio)?;
    }
    Ok(d)
}

/// Report for a named preset (`conservative`, `moderate`, `aggressive`).
#[pyfunction]
#[pyo3(signature = (preset, wavelength=feasibility::DEFAULT_WAVELENGTH_M, l_cav=feasibility::DEFAULT_CAVITY_LENGTH_M, l_nl=feasibility::DEFAULT_NONLINEAR_LENGTH_M, ops=vec![10, 100, 1000]))]
fn evaluate_regime<'py>(
    py: Python<'py>,
    preset: &str,
    wavelength: f64,
    l_cav: f64,
    l_nl: f64,
    ops: Vec<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let regime: Regime = preset.parse().map_err(err)?;
    let geometry = Geometry {
        lambda: wavelength,
        l_cav,
        l_nl,
    };
    let opts = ReportOptions {
        ops,
        ..ReportOptions::default()
    };
    report_dict(
        py,
        &feasibility::evaluate_regime(regime, &geometry, &opts).map_err(err)?,
    )
}

/// Report for explicit SI inputs.
#[pyfunction]
#[pyo3(signature = (n2, power, w, q_factor, wavelength=feasibility::DEFAULT_WAVELENGTH_M, l_cav=feasibility::DEFAULT_CAVITY_LENGTH_M, l_nl=feasibility::DEFAULT_NONLINEAR_LENGTH_M, ops=vec![10, 100, 1000], laser_linewidth=None, margin=feasibility::DEFAULT_COHERENCE_MARGIN))]
#[allow(clippy::too_many_arguments)]
fn evaluate<'py>(
    py: Python<'py>,
    n2: f64,
    power: f64,
    w: f64,
    q_factor: f64,
    wavelength: f64,
    l_cav: f64,
    l_nl: f64,
    ops: Vec<u64>,
    laser_linewidth: Option<f64>,
    margin: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let input = FeasibilityInput {
        lambda: wavelength,
        l_cav,
        l_nl,
        n2,
        w,
        power,
        q_factor,
    };
    let opts = ReportOptions {
        ops,
        laser: laser_linewidth.map(|l| (l, margin)),
        target_phi: None,
    };
    report_dict(py, &feasibility::evaluate(&input, &opts).map_err(err)?)
}

/// HPH Monte Carlo curve as `(param, mean_fidelity, std_err, trials)` rows.
///
/// `mode="sigma"` sweeps the noise level at `round_trips`; `mode="reflections"`
/// sweeps round trips per stage at `sigma`. Released from the GIL while running.
#[pyfunction]
#[pyo3(signature = (grid, mode="sigma", phi=std::f64::consts::FRAC_PI_2, round_trips=3000, passes=1, sigma=4e-4, trials=transit::DEFAULT_TRIALS, seed=2024))]
#[allow(clippy::too_many_arguments)]
fn noise_sweep(
    py: Python<'_>,
    grid: Vec<f64>,
    mode: &str,
    phi: f64,
    round_trips: u64,
    passes: u64,
    sigma: f64,
    trials: usize,
    seed: u64,
) -> PyResult<Vec<(f64, f64, f64, usize)>> {
    let sweep = match mode {
        "sigma" => Sweep::Sigma(grid),
        "reflections" => Sweep::RoundTrips(grid.iter().map(|&k| k.round().max(0.0) as u64).collect()),
        other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    };
    let study = FidelityStudy {
        phi,
        round_trips,
        passes_per_round_trip: passes,
        noise: NoiseConfig::new(sigma, trials, seed).map_err(err)?,
    };
    let curve = py
        .detach(|| transit::monte_carlo_fidelity(&study, &sweep))
        .map_err(err)?;
    Ok(curve
        .iter()
        .map(|p| (p.param, p.mean_fidelity, p.std_err, p.trials))
        .collect())
}

/// Equivalence suite as `(name, passed, max_error, tolerance)` rows.
#[pyfunction]
#[pyo3(signature = (n_max=kerrcav::fock::DEFAULT_N_MAX, inject_sign_flip=false))]
fn oracle_check(n_max: usize, inject_sign_flip: bool) -> PyResult<Vec<(String, bool, f64, f64)>> {
    let opts = OracleOptions {
        n_max,
        inject_sign_flip,
        ..Default::default()
    };
    Ok(oracle::run_suite(&opts)
        .map_err(err)?
        .into_iter()
        .map(|r| (r.name, r.passed, r.max_error, r.tolerance))
        .collect())
}

#[pymodule(name = "kerrcav")]
fn kerrcav_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRegisterState>()?;
    m.add_function(wrap_pyfunction!(rz, m)?)?;
    m.add_function(wrap_pyfunction!(rperp, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(euler_compose, m)?)?;
    m.add_function(wrap_pyfunction!(euler_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(cp_gate, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_regime, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(noise_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    Ok(())
}
