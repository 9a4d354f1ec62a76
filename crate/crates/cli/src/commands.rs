use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

use kerrcav::cavity::{mode_frequency_hz, select_bundle, CavityGeometry, ModeEntry};
use kerrcav::circuit::CircuitProgram;
use kerrcav::feasibility::{
    evaluate, evaluate_regime, FeasibilityInput, FeasibilityReport, Geometry, Regime, ReportOptions,
};
use kerrcav::oracle::{all_pass, run_suite, OracleOptions};
use kerrcav::transit::{monte_carlo_fidelity, FidelityStudy, NoiseConfig, Sweep};
use kerrcav::Error;

use crate::format::{json, num};
use crate::{FeasibilityArgs, ModesArgs, NoiseSweepArgs, OracleArgs, OutputFormat, SimulateArgs, SweepMode};

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_RUNTIME: u8 = 4;
pub const EXIT_IO: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            _ => EXIT_RUNTIME,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        runtime(e.to_string())
    }
}

fn runtime(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_RUNTIME,
        message: message.into(),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

/// Command result: data to print and whether the command's checks passed.
pub struct Output {
    pub text: String,
    pub success: bool,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Self { text, success: true }
    }
}

type CmdResult = Result<Output, CliError>;

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_error(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn modes(a: &ModesArgs, fmt: OutputFormat) -> CmdResult {
    let g = CavityGeometry::new(a.length)?;
    let center = match (a.center, a.center_q) {
        (Some(c), _) => c,
        (None, Some(q)) => mode_frequency_hz(&g, q)?,
        (None, None) => return Err(runtime("one of --center or --center-q is required")),
    };
    let bundle = select_bundle(&g, center, a.bandwidth)?;
    let rows: Vec<ModeEntry> = bundle
        .mode_indices()
        .iter()
        .map(|&q| {
            let nu_hz = mode_frequency_hz(&g, q)?;
            Ok(ModeEntry {
                q,
                omega_rad_s: 2.0 * std::f64::consts::PI * nu_hz,
                nu_hz,
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(match fmt {
        OutputFormat::Json => json(&rows)?,
        OutputFormat::Csv => {
            let mut s = String::from("q,nu_hz,omega_rad_s\n");
            for r in &rows {
                writeln!(s, "{},{},{}", r.q, num(r.nu_hz), num(r.omega_rad_s)).unwrap();
            }
            s
        }
    }
    .into())
}

#[derive(Serialize)]
struct AmplitudeRow {
    index: usize,
    bits: String,
    re: f64,
    im: f64,
    probability: f64,
}

#[derive(Serialize)]
struct SimulationReport {
    num_qubits: usize,
    amplitudes: Vec<AmplitudeRow>,
    z_expectation: Vec<f64>,
}

pub fn simulate(a: &SimulateArgs, fmt: OutputFormat) -> CmdResult {
    let text = std::fs::read_to_string(&a.file).map_err(|e| io_error(&a.file, e))?;
    let program = CircuitProgram::parse(&text, a.file.parent())?;
    if let Some(m) = a.qubits {
        if m != program.num_qubits {
            return Err(runtime(format!(
                "--qubits {m} does not match QUBITS {} in {}",
                program.num_qubits,
                a.file.display()
            )));
        }
    }
    let state = program.run()?;
    let m = state.num_arms();
    let amplitudes = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(index, c)| AmplitudeRow {
            index,
            // arm m-1 leftmost, arm 0 rightmost
            bits: format!("{index:0m$b}"),
            re: c.re,
            im: c.im,
            probability: c.norm_sqr(),
        })
        .collect();
    let z_expectation = (0..m).map(|i| state.z_expectation(i)).collect::<Result<_, Error>>()?;
    let report = SimulationReport {
        num_qubits: m,
        amplitudes,
        z_expectation,
    };
    Ok(match fmt {
        OutputFormat::Json => json(&report)?,
        OutputFormat::Csv => {
            let mut s = String::from("index,bits,re,im,probability\n");
            for r in &report.amplitudes {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.index,
                    r.bits,
                    num(r.re),
                    num(r.im),
                    num(r.probability)
                )
                .unwrap();
            }
            s.push_str("\narm,z_expectation\n");
            for (i, z) in report.z_expectation.iter().enumerate() {
                writeln!(s, "{i},{}", num(*z)).unwrap();
            }
            s
        }
    }
    .into())
}

/// `a,b,c` or inclusive `start:stop:count`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("invalid grid value `{t}`"))
    };
    match parts.as_slice() {
        [single] => single.split(',').map(parse).collect(),
        [start, stop, count] => {
            let (a, b) = (parse(start)?, parse(stop)?);
            let n: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("invalid grid count `{count}`"))?;
            match n {
                0 => Err("grid count must be >= 1".into()),
                1 => Ok(vec![a]),
                _ => Ok((0..n)
                    .map(|i| {
                        if i == n - 1 {
                            b
                        } else {
                            a + (b - a) * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect()),
            }
        }
        _ => Err(format!("grid must be `a,b,c` or `start:stop:count`, got `{spec}`")),
    }
}

const DEFAULT_SIGMA_GRID: &str = "0,1e-5,2e-5,5e-5,1e-4,2e-4,3e-4,4e-4,5e-4,6e-4,7e-4,8e-4,9e-4,1e-3";
const DEFAULT_REFLECTION_GRID: &str = "250:3000:12";

pub fn noise_sweep(a: &NoiseSweepArgs, fmt: OutputFormat) -> CmdResult {
    let grid_spec = a.grid.as_deref().unwrap_or(match a.mode {
        SweepMode::Sigma => DEFAULT_SIGMA_GRID,
        SweepMode::Reflections => DEFAULT_REFLECTION_GRID,
    });
    let values = parse_grid(grid_spec).map_err(|m| CliError {
        code: EXIT_PARSE,
        message: m,
    })?;
    let sweep = match a.mode {
        SweepMode::Sigma => Sweep::Sigma(values),
        SweepMode::Reflections => Sweep::RoundTrips(
            values
                .iter()
                .map(|&v| {
                    // linspace grids can land between integers
                    if v >= 1.0 {
                        Ok(v.round() as u64)
                    } else {
                        Err(runtime(format!("round trips must be >= 1, got {v}")))
                    }
                })
                .collect::<Result<_, _>>()?,
        ),
    };
    let mut noise = NoiseConfig::new(a.sigma, a.trials, a.seed)?;
    noise.perturb_all = a.perturb_all;
    let study = FidelityStudy {
        phi: a.phi,
        round_trips: a.round_trips,
        passes_per_round_trip: a.passes,
        noise,
    };
    let curve = monte_carlo_fidelity(&study, &sweep)?;
    Ok(match fmt {
        OutputFormat::Json => json(&curve)?,
        OutputFormat::Csv => {
            let mut s = String::from("param,mean_fidelity,std_err,trials\n");
            for p in &curve {
                writeln!(
                    s,
                    "{},{},{},{}",
                    num(p.param),
                    num(p.mean_fidelity),
                    num(p.std_err),
                    p.trials
                )
                .unwrap();
            }
            s
        }
    }
    .into())
}

pub fn feasibility(a: &FeasibilityArgs, fmt: OutputFormat) -> CmdResult {
    let geometry = Geometry {
        lambda: a.wavelength,
        l_cav: a.cavity_length,
        l_nl: a.nl_length,
    };
    let opts = ReportOptions {
        ops: a.ops.clone(),
        laser: a.laser_linewidth.map(|l| (l, a.margin)),
        target_phi: a.target_phase,
    };
    let reports: Vec<(String, FeasibilityReport)> = match (&a.preset, a.n2) {
        (Some(p), _) if p.eq_ignore_ascii_case("all") => Regime::ALL
            .iter()
            .map(|r| Ok((r.to_string(), evaluate_regime(*r, &geometry, &opts)?)))
            .collect::<Result<_, Error>>()?,
        (Some(p), _) => {
            let r: Regime = p.parse()?;
            vec![(r.to_string(), evaluate_regime(r, &geometry, &opts)?)]
        }
        (None, Some(n2)) => {
            let input = FeasibilityInput {
                lambda: geometry.lambda,
                l_cav: geometry.l_cav,
                l_nl: geometry.l_nl,
                n2,
                w: a.waist.ok_or_else(|| runtime("--waist is required"))?,
                power: a.power.ok_or_else(|| runtime("--power is required"))?,
                q_factor: a.q_factor.ok_or_else(|| runtime("--q is required"))?,
            };
            vec![("custom".to_string(), evaluate(&input, &opts)?)]
        }
        (None, None) => return Err(runtime("give --preset or --n2/--power/--waist/--q")),
    };

    Ok(match fmt {
        OutputFormat::Json if reports.len() == 1 => json(&reports[0].1)?,
        OutputFormat::Json => json(&reports.iter().map(|(_, r)| r).collect::<Vec<_>>())?,
        OutputFormat::Csv => feasibility_csv(&reports, &opts),
    }
    .into())
}

fn feasibility_csv(reports: &[(String, FeasibilityReport)], opts: &ReportOptions) -> String {
    let mut header = String::from(
        "preset,lambda,l_cav,l_nl,n2,w,power,q_factor,area,intensity,omega,tau,n_rt,phi0,phi_tot,feasible",
    );
    for n in &opts.ops {
        write!(header, ",max_linewidth_hz_n{n}").unwrap();
    }
    if opts.laser.is_some() {
        header.push_str(",laser_linewidth,tau_coh,coherence_ratio,coherence_margin,coherence_passed");
    }
    let has_implied = reports.iter().any(|(_, r)| r.implied.is_some());
    if has_implied {
        header.push_str(",target_phi_tot,l_nl_over_l_cav");
    }
    let mut s = header;
    s.push('\n');
    for (name, r) in reports {
        let i = &r.input;
        let d = &r.derived;
        let mut fields = vec![name.clone()];
        fields.extend(
            [
                i.lambda,
                i.l_cav,
                i.l_nl,
                i.n2,
                i.w,
                i.power,
                i.q_factor,
                d.area,
                d.intensity,
                d.omega,
                d.tau,
                d.n_rt,
                r.phi0,
                r.phi_tot,
            ]
            .map(num),
        );
        fields.push(r.feasible.to_string());
        fields.extend(r.linewidth_budget.iter().map(|e| num(e.max_linewidth_hz)));
        if let Some(c) = &r.coherence {
            fields.extend([c.laser_linewidth, c.tau_coh, c.ratio, c.margin].map(num));
            fields.push(c.passed.to_string());
        }
        if has_implied {
            match &r.implied {
                Some(g) => fields.extend([num(g.target_phi_tot), num(g.l_nl_over_l_cav)]),
                None => fields.extend([String::new(), String::new()]),
            }
        }
        s.push_str(&fields.join(","));
        s.push('\n');
    }
    s
}

pub fn oracle_check(a: &OracleArgs, fmt: OutputFormat) -> CmdResult {
    let results = run_suite(&OracleOptions {
        n_max: a.n_max,
        samples: a.samples,
        seed: a.seed,
        inject_sign_flip: a.inject_sign_flip,
    })?;
    let success = all_pass(&results);
    let text = match fmt {
        OutputFormat::Json => json(&results)?,
        OutputFormat::Csv => {
            let mut s = String::from("status,check,max_error,tolerance\n");
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{status},{},{},{}", r.name, num(r.max_error), num(r.tolerance)).unwrap();
            }
            s
        }
    };
    if !success {
        let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
        eprintln!("error: {} check(s) failed: {}", failed.len(), failed.join(", "));
    }
    Ok(Output { text, success })
}
