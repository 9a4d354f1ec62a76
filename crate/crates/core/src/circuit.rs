//! Line-oriented circuit programs.
//!
//! ```text
//! # comments start with '#'
//! QUBITS 2
//! H 1
//! CNOT 1 0
//! RZ 0 pi/4
//! RPERP 1 pi 0
//! CP 0 1 3*pi/4
//! CZ 0 1
//! EA phases.txt
//! ```
//!
//! Angles are numbers or products/quotients of numbers and `pi`
//! (`-pi/2`, `3*pi/4`, `0.5*pi`). An `EA` matrix file holds `M` rows of `M`
//! angles; relative paths resolve against the circuit file's directory.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::entanglement::{apply_cp, apply_ea, cnot, cz, PairwisePhaseMatrix};
use crate::error::{Error, Result};
use crate::polarization::{hadamard, rperp, rz, RegisterState, MAX_ARMS};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Instruction {
    Rz { arm: usize, phi: f64 },
    Rperp { arm: usize, theta: f64, gamma: f64 },
    H { arm: usize },
    Cp { a: usize, b: usize, phi: f64 },
    Cz { a: usize, b: usize },
    Cnot { control: usize, target: usize },
    Ea { phases: PairwisePhaseMatrix },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitProgram {
    pub num_qubits: usize,
    /// Instructions with their 1-based source line.
    pub instructions: Vec<(usize, Instruction)>,
}

/// Evaluates an angle expression such as `-3*pi/4`.
pub fn parse_angle(expr: &str) -> std::result::Result<f64, String> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
    };
    let mut value = sign;
    let mut op = '*';
    let mut rest = body;
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let (tok, tail) = rest.split_at(end);
        let factor = match tok.to_ascii_lowercase().as_str() {
            "pi" | "π" => PI,
            "" => return Err(format!("malformed angle `{expr}`")),
            t => t.parse::<f64>().map_err(|_| format!("malformed angle `{expr}`"))?,
        };
        if op == '*' {
            value *= factor;
        } else {
            value /= factor;
        }
        let mut chars = tail.chars();
        match chars.next() {
            None => break,
            Some(c) => {
                op = c;
                rest = chars.as_str();
            }
        }
    }
    if !value.is_finite() {
        return Err(format!("angle `{expr}` is not finite"));
    }
    Ok(value)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads an `EA` matrix file: whitespace-separated angles, one row per line.
pub fn parse_phase_matrix(text: &str) -> Result<PairwisePhaseMatrix> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| parse_angle(t).map_err(|m| parse_err(i + 1, m)))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    PairwisePhaseMatrix::new(rows)
}

impl CircuitProgram {
    /// Parses program text. `base_dir` resolves relative `EA` paths.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let mut num_qubits: Option<usize> = None;
        let mut instructions = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let op = toks[0].to_ascii_uppercase();
            let args = &toks[1..];

            let expect = |n: usize| -> Result<()> {
                if args.len() != n {
                    Err(parse_err(
                        lineno,
                        format!("{op} takes {n} argument(s), got {}", args.len()),
                    ))
                } else {
                    Ok(())
                }
            };
            let m = match (op.as_str(), num_qubits) {
                ("QUBITS", None) => {
                    expect(1)?;
                    let n: usize = args[0]
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad qubit count `{}`", args[0])))?;
                    if n == 0 || n > MAX_ARMS {
                        return Err(parse_err(lineno, format!("qubit count must be in 1..={MAX_ARMS}")));
                    }
                    num_qubits = Some(n);
                    continue;
                }
                ("QUBITS", Some(_)) => return Err(parse_err(lineno, "QUBITS declared twice")),
                (_, None) => return Err(parse_err(lineno, "QUBITS must come before any gate")),
                (_, Some(m)) => m,
            };
            let arm = |s: &str| -> Result<usize> {
                let a: usize = s
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad arm index `{s}`")))?;
                if a >= m {
                    return Err(parse_err(lineno, format!("arm {a} out of range for {m} qubits")));
                }
                Ok(a)
            };
            let angle = |s: &str| parse_angle(s).map_err(|e| parse_err(lineno, e));
            let pair = |a: &str, b: &str| -> Result<(usize, usize)> {
                let (a, b) = (arm(a)?, arm(b)?);
                if a == b {
                    return Err(parse_err(lineno, "two-qubit gate needs distinct arms"));
                }
                Ok((a, b))
            };

            let ins = match op.as_str() {
                "RZ" => {
                    expect(2)?;
                    Instruction::Rz {
                        arm: arm(args[0])?,
                        phi: angle(args[1])?,
                    }
                }
                "RPERP" => {
                    expect(3)?;
                    Instruction::Rperp {
                        arm: arm(args[0])?,
                        theta: angle(args[1])?,
                        gamma: angle(args[2])?,
                    }
                }
                "H" => {
                    expect(1)?;
                    Instruction::H { arm: arm(args[0])? }
                }
                "CP" => {
                    expect(3)?;
                    let (a, b) = pair(args[0], args[1])?;
                    Instruction::Cp {
                        a,
                        b,
                        phi: angle(args[2])?,
                    }
                }
                "CZ" => {
                    expect(2)?;
                    let (a, b) = pair(args[0], args[1])?;
                    Instruction::Cz { a, b }
                }
                "CNOT" => {
                    expect(2)?;
                    let (control, target) = pair(args[0], args[1])?;
                    Instruction::Cnot { control, target }
                }
                "EA" => {
                    expect(1)?;
                    let mut path = PathBuf::from(args[0]);
                    if path.is_relative() {
                        if let Some(dir) = base_dir {
                            path = dir.join(path);
                        }
                    }
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| parse_err(lineno, format!("cannot read {}: {e}", path.display())))?;
                    let phases =
                        parse_phase_matrix(&text).map_err(|e| parse_err(lineno, format!("{}: {e}", path.display())))?;
                    if phases.num_arms() != m {
                        return Err(parse_err(
                            lineno,
                            format!("EA matrix is {0}x{0}, expected {m}x{m}", phases.num_arms()),
                        ));
                    }
                    Instruction::Ea { phases }
                }
                other => return Err(parse_err(lineno, format!("unknown instruction `{other}`"))),
            };
            instructions.push((lineno, ins));
        }

        let num_qubits =
            num_qubits.ok_or_else(|| parse_err(text.lines().count().max(1), "missing QUBITS declaration"))?;
        Ok(Self {
            num_qubits,
            instructions,
        })
    }

    pub fn parse_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| parse_err(0, format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent())
    }

    /// Runs the program from `|0…0⟩`.
    pub fn run(&self) -> Result<RegisterState> {
        self.run_from(RegisterState::zero(self.num_qubits)?)
    }

    pub fn run_from(&self, mut state: RegisterState) -> Result<RegisterState> {
        if state.num_arms() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                left: state.num_arms(),
                right: self.num_qubits,
            });
        }
        for (_, ins) in &self.instructions {
            state = match ins {
                Instruction::Rz { arm, phi } => state.apply_single(*arm, &rz(*phi)?)?,
                Instruction::Rperp { arm, theta, gamma } => state.apply_single(*arm, &rperp(*theta, *gamma)?)?,
                Instruction::H { arm } => state.apply_single(*arm, &hadamard())?,
                Instruction::Cp { a, b, phi } => apply_cp(&state, *a, *b, *phi)?,
                Instruction::Cz { a, b } => state.apply_two(*a, *b, cz().matrix())?,
                Instruction::Cnot { control, target } => cnot(&state, *control, *target)?,
                Instruction::Ea { phases } => apply_ea(&state, phases)?,
            };
        }
        Ok(state)
    }
}
