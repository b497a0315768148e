//! Gates, circuits, ASAP layering, resource counting and the text format.

mod circuit;
mod counts;
mod gate;
pub(crate) mod schedule;
mod text;

pub use circuit::{Circuit, CircuitBuilder, Register, RegisterRole};
pub use counts::{count_resources, gate_tally, GateTally, ResourceCounts};
pub use gate::{Gate, GateKind, Operands, Qubit};
pub use schedule::{schedule_asap, Layer, LayeredCircuit};
pub use text::{parse_circuit, write_circuit, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IrError {
    #[error("duplicate operand {0}")]
    DuplicateOperand(Qubit),
    #[error("MPMCT needs at least 2 controls, got {0}")]
    TooFewControls(usize),
    #[error("polarity length mismatch: {polarity} symbols for {controls} controls")]
    PolarityLength { polarity: usize, controls: usize },
    #[error("qubit {qubit} out of range for {count} qubits")]
    QubitOutOfRange { qubit: Qubit, count: u32 },
    #[error("unknown register role '{0}'")]
    UnknownRole(String),
    #[error("bad register name '{0}'")]
    BadRegisterName(String),
    #[error("register '{0}' is empty")]
    EmptyRegister(String),
    #[error("register '{0}' exceeds the qubit count")]
    RegisterOutOfRange(String),
    #[error("qubit {0} belongs to two registers")]
    RegisterOverlap(Qubit),
    #[error("qubit {0} belongs to no register")]
    Unassigned(Qubit),
    #[error("not lowered: circuit still contains '{0}' gates")]
    NotLowered(&'static str),
}
