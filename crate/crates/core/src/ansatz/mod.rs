//! Parameterised circuits: ALT, random circuits and the state efficient
//! ansatz, plus the exact constructive SEA for a given target state.

mod builders;
mod exact;
mod text;

use crate::qstate::{validate_targets, Gate, StateVector, UnitaryMatrix};
use crate::{Error, Result};

pub use builders::{
    build_alt, build_random_circuit, build_sea, parameter_count, SchmidtLayer, SeaSpec,
};
pub use exact::{construct_exact_sea, orthonormal_completion, ExactSea};
pub use text::{circuit_from_text, circuit_to_text};

/// Rotation axis of a parameterised gate `exp(-iθP/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Which builder produced a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Alt,
    Random,
    Sea,
    ExactSea,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Alt => "ALT",
            Family::Random => "RANDOM",
            Family::Sea => "SEA",
            Family::ExactSea => "EXACT_SEA",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "ALT" => Family::Alt,
            "RANDOM" => Family::Random,
            "SEA" => Family::Sea,
            "EXACT_SEA" => Family::ExactSea,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    Cz,
    Cnot,
    DenseBlock,
}

/// One operation of an [`AnsatzCircuit`].
///
/// Rotations carry exactly one parameter slot; entanglers and dense blocks
/// carry none.
#[derive(Clone, Debug, PartialEq)]
pub enum GateOp {
    Rotation { axis: Axis, qubit: usize, param: usize },
    Cz(usize, usize),
    Cnot { control: usize, target: usize },
    Dense { targets: Vec<usize>, matrix: UnitaryMatrix },
}

impl GateOp {
    pub fn kind(&self) -> GateKind {
        match self {
            GateOp::Rotation { axis: Axis::X, .. } => GateKind::Rx,
            GateOp::Rotation { axis: Axis::Y, .. } => GateKind::Ry,
            GateOp::Rotation { axis: Axis::Z, .. } => GateKind::Rz,
            GateOp::Cz(..) => GateKind::Cz,
            GateOp::Cnot { .. } => GateKind::Cnot,
            GateOp::Dense { .. } => GateKind::DenseBlock,
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match self {
            GateOp::Rotation { qubit, .. } => vec![*qubit],
            GateOp::Cz(a, b) => vec![*a, *b],
            GateOp::Cnot { control, target } => vec![*control, *target],
            GateOp::Dense { targets, .. } => targets.clone(),
        }
    }

    pub fn param_index(&self) -> Option<usize> {
        match self {
            GateOp::Rotation { param, .. } => Some(*param),
            _ => None,
        }
    }

    pub fn fixed_matrix(&self) -> Option<&UnitaryMatrix> {
        match self {
            GateOp::Dense { matrix, .. } => Some(matrix),
            _ => None,
        }
    }

    /// Applies the op (or its inverse) with parameters bound from `params`.
    pub(crate) fn apply(&self, state: &mut StateVector, params: &[f64], inverse: bool) {
        let sign = if inverse { -1.0 } else { 1.0 };
        match self {
            GateOp::Rotation { axis, qubit, param } => {
                let t = sign * params[*param];
                let g = match axis {
                    Axis::X => Gate::Rx(t),
                    Axis::Y => Gate::Ry(t),
                    Axis::Z => Gate::Rz(t),
                };
                state.apply_unchecked(&g, &[*qubit]);
            }
            GateOp::Cz(a, b) => state.apply_unchecked(&Gate::Cz, &[*a, *b]),
            GateOp::Cnot { control, target } => {
                state.apply_unchecked(&Gate::Cnot, &[*control, *target])
            }
            GateOp::Dense { targets, matrix } => {
                if inverse {
                    state.apply_unchecked(&Gate::Dense(&matrix.dagger()), targets)
                } else {
                    state.apply_unchecked(&Gate::Dense(matrix), targets)
                }
            }
        }
    }
}

/// Ordered gate list with parameter slots `0..n_params`, each used once.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzCircuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
    n_params: usize,
    family: Family,
}

impl AnsatzCircuit {
    /// Validates targets and that parameter slots are exactly `0..n_params`.
    pub fn new(n_qubits: usize, ops: Vec<GateOp>, family: Family) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::arg("circuit needs at least one qubit"));
        }
        let mut seen = Vec::new();
        for op in &ops {
            validate_targets(n_qubits, &op.targets())?;
            if let GateOp::Dense { targets, matrix } = op {
                if matrix.dim() != 1usize << targets.len() {
                    return Err(Error::arg(format!(
                        "dense block of dimension {} on {} qubits",
                        matrix.dim(),
                        targets.len()
                    )));
                }
            }
            if let Some(p) = op.param_index() {
                seen.push(p);
            }
        }
        let n_params = seen.len();
        seen.sort_unstable();
        if seen.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::invalid(
                "parameter indices must be exactly 0..n_params, each used once",
            ));
        }
        Ok(Self {
            n_qubits,
            ops,
            n_params,
            family,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn family(&self) -> Family {
        self.family
    }

    fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_params {
            return Err(Error::arg(format!(
                "circuit has {} parameters, got {}",
                self.n_params,
                params.len()
            )));
        }
        Ok(())
    }

    fn check_state(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::arg(format!(
                "{}-qubit circuit applied to {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        Ok(())
    }

    /// `U(θ)|0...0⟩`.
    pub fn evaluate(&self, params: &[f64]) -> Result<StateVector> {
        self.evaluate_from(params, &StateVector::zero(self.n_qubits)?)
    }

    /// `U(θ)|initial⟩`.
    pub fn evaluate_from(&self, params: &[f64], initial: &StateVector) -> Result<StateVector> {
        let mut state = initial.clone();
        self.apply_in_place(params, &mut state)?;
        Ok(state)
    }

    pub fn apply_in_place(&self, params: &[f64], state: &mut StateVector) -> Result<()> {
        self.check_params(params)?;
        self.check_state(state)?;
        for op in &self.ops {
            op.apply(state, params, false);
        }
        Ok(())
    }

    /// `U(θ)†|state⟩`.
    pub fn apply_inverse_in_place(&self, params: &[f64], state: &mut StateVector) -> Result<()> {
        self.check_params(params)?;
        self.check_state(state)?;
        for op in self.ops.iter().rev() {
            op.apply(state, params, true);
        }
        Ok(())
    }
}

/// Free-function form of [`AnsatzCircuit::evaluate_from`].
pub fn evaluate_circuit(
    circuit: &AnsatzCircuit,
    params: &[f64],
    initial: &StateVector,
) -> Result<StateVector> {
    circuit.evaluate_from(params, initial)
}
