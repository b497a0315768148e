use std::fmt;
use std::str::FromStr;

use super::{Gate, IrError, Qubit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegisterRole {
    Address,
    Ancilla,
    Output,
    ParityRegister,
    Memory,
    Trigger,
    Copy,
}

impl RegisterRole {
    pub fn as_str(self) -> &'static str {
        match self {
            RegisterRole::Address => "address",
            RegisterRole::Ancilla => "ancilla",
            RegisterRole::Output => "output",
            RegisterRole::ParityRegister => "parity-register",
            RegisterRole::Memory => "memory",
            RegisterRole::Trigger => "trigger",
            RegisterRole::Copy => "copy",
        }
    }
}

impl fmt::Display for RegisterRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegisterRole {
    type Err = IrError;

    fn from_str(s: &str) -> Result<Self, IrError> {
        Ok(match s {
            "address" => RegisterRole::Address,
            "ancilla" => RegisterRole::Ancilla,
            "output" => RegisterRole::Output,
            "parity-register" => RegisterRole::ParityRegister,
            "memory" => RegisterRole::Memory,
            "trigger" => RegisterRole::Trigger,
            "copy" => RegisterRole::Copy,
            other => return Err(IrError::UnknownRole(other.to_string())),
        })
    }
}

/// A contiguous, named block of qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Register {
    pub name: String,
    pub role: RegisterRole,
    pub start: u32,
    pub len: u32,
}

impl Register {
    pub fn qubit(&self, i: usize) -> Qubit {
        assert!(i < self.len as usize, "register {} has no qubit {i}", self.name);
        Qubit(self.start + i as u32)
    }

    pub fn qubits(&self) -> impl Iterator<Item = Qubit> + '_ {
        (self.start..self.start + self.len).map(Qubit)
    }

    pub fn contains(&self, q: Qubit) -> bool {
        q.0 >= self.start && q.0 < self.start + self.len
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: u32,
    registers: Vec<Register>,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Validates operands and that the registers partition the qubits.
    pub fn new(num_qubits: u32, registers: Vec<Register>, gates: Vec<Gate>) -> Result<Circuit, IrError> {
        let mut owner = vec![false; num_qubits as usize];
        for r in &registers {
            if r.name.is_empty() || r.name.chars().any(char::is_whitespace) {
                return Err(IrError::BadRegisterName(r.name.clone()));
            }
            if r.len == 0 {
                return Err(IrError::EmptyRegister(r.name.clone()));
            }
            if r.start as u64 + r.len as u64 > num_qubits as u64 {
                return Err(IrError::RegisterOutOfRange(r.name.clone()));
            }
            for q in r.qubits() {
                if std::mem::replace(&mut owner[q.index()], true) {
                    return Err(IrError::RegisterOverlap(q));
                }
            }
        }
        if let Some(q) = owner.iter().position(|&o| !o) {
            return Err(IrError::Unassigned(Qubit(q as u32)));
        }
        for g in &gates {
            check_gate(g, num_qubits)?;
        }
        Ok(Circuit { num_qubits, registers, gates })
    }

    pub fn num_qubits(&self) -> u32 {
        self.num_qubits
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn registers_with_role(&self, role: RegisterRole) -> impl Iterator<Item = &Register> {
        self.registers.iter().filter(move |r| r.role == role)
    }

    pub fn qubits_with_role(&self, role: RegisterRole) -> Vec<Qubit> {
        self.registers_with_role(role).flat_map(|r| r.qubits()).collect()
    }

    /// Same registers, different gate list.
    pub fn with_gates(&self, gates: Vec<Gate>) -> Result<Circuit, IrError> {
        for g in &gates {
            check_gate(g, self.num_qubits)?;
        }
        Ok(Circuit { num_qubits: self.num_qubits, registers: self.registers.clone(), gates })
    }

    /// The gate list in reverse order with phase gates inverted.
    pub fn inverse(&self) -> Circuit {
        let gates = self.gates.iter().rev().map(Gate::inverse).collect();
        Circuit { num_qubits: self.num_qubits, registers: self.registers.clone(), gates }
    }

    pub fn contains_kind(&self, pred: impl Fn(&Gate) -> bool) -> bool {
        self.gates.iter().any(pred)
    }
}

fn check_gate(g: &Gate, num_qubits: u32) -> Result<(), IrError> {
    g.validate()?;
    for q in g.qubits() {
        if q.0 >= num_qubits {
            return Err(IrError::QubitOutOfRange { qubit: q, count: num_qubits });
        }
    }
    Ok(())
}

/// Incremental construction with registers allocated back to back.
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    num_qubits: u32,
    registers: Vec<Register>,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Allocates `len` qubits. Zero-length requests return an empty handle
    /// that is not recorded.
    pub fn register(&mut self, name: &str, role: RegisterRole, len: usize) -> Register {
        let r = Register { name: name.to_string(), role, start: self.num_qubits, len: len as u32 };
        if len > 0 {
            self.num_qubits += len as u32;
            self.registers.push(r.clone());
        }
        r
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn finish(self) -> Result<Circuit, IrError> {
        Circuit::new(self.num_qubits, self.registers, self.gates)
    }
}
