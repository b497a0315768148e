//! Functional oracles: permutation and dense statevector simulation, query
//! checks against the classical memory, and unitary checks of lowerings.

mod checks;
mod classical;
mod state;
mod suite;

pub use checks::{
    check_circuit_semantics, check_decomposition_unitary, check_formula_vs_builder, check_query_semantics,
    check_superposition_query, inject_fault, GateSpec, MetricRow, QueryReport, Rule,
};
pub use classical::{format_bits, parse_bits, simulate_classical};
pub use state::{simulate_state, StateVector, MAX_STATE_QUBITS};
pub use suite::{run_suite, Status, SuiteOptions, SuiteRow};

use crate::decomp::DecompError;
use crate::families::FamilyError;
use crate::ir::IrError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("non-classical gate {0} in permutation simulation")]
    NonClassical(&'static str),
    #[error("state too large: {0} qubits (max {MAX_STATE_QUBITS})")]
    TooLarge(u32),
    #[error("input has {got} bits, circuit has {want} qubits")]
    InputLength { got: usize, want: usize },
    #[error("bit string may only hold 0 and 1, found '{0}'")]
    BadBit(char),
    #[error("amplitudes must have norm 1, got {0}")]
    Norm(f64),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Ir(#[from] IrError),
}
