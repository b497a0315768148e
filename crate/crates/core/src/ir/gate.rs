use std::fmt;

use super::IrError;

/// Index of a logical qubit inside a [`Circuit`](super::Circuit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qubit(pub u32);

impl Qubit {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for Qubit {
    fn from(v: u32) -> Self {
        Qubit(v)
    }
}

/// Gate alphabet. Multi-controlled gates are kept opaque until lowering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X(Qubit),
    H(Qubit),
    S(Qubit),
    Sdg(Qubit),
    T(Qubit),
    Tdg(Qubit),
    Cnot { control: Qubit, target: Qubit },
    Swap(Qubit, Qubit),
    Toffoli { controls: [Qubit; 2], target: Qubit },
    /// `polarity[i]` is `true` when control `i` fires on 1.
    Mpmct { controls: Vec<Qubit>, polarity: Vec<bool>, target: Qubit },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Cnot,
    Swap,
    Toffoli,
    Mpmct,
}

impl GateKind {
    pub const ALL: [GateKind; 10] = [
        GateKind::X,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Cnot,
        GateKind::Swap,
        GateKind::Toffoli,
        GateKind::Mpmct,
    ];

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Cnot => "cnot",
            GateKind::Swap => "swap",
            GateKind::Toffoli => "tof",
            GateKind::Mpmct => "mpmct",
        }
    }
}

impl Gate {
    pub fn cnot(control: impl Into<Qubit>, target: impl Into<Qubit>) -> Gate {
        Gate::Cnot { control: control.into(), target: target.into() }
    }

    pub fn toffoli(c1: impl Into<Qubit>, c2: impl Into<Qubit>, target: impl Into<Qubit>) -> Gate {
        Gate::Toffoli { controls: [c1.into(), c2.into()], target: target.into() }
    }

    /// Checked MPMCT constructor.
    pub fn mpmct(controls: Vec<Qubit>, polarity: Vec<bool>, target: Qubit) -> Result<Gate, IrError> {
        let g = Gate::Mpmct { controls, polarity, target };
        g.validate()?;
        Ok(g)
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X(_) => GateKind::X,
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::T(_) => GateKind::T,
            Gate::Tdg(_) => GateKind::Tdg,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Swap(..) => GateKind::Swap,
            Gate::Toffoli { .. } => GateKind::Toffoli,
            Gate::Mpmct { .. } => GateKind::Mpmct,
        }
    }

    pub fn is_t_like(&self) -> bool {
        matches!(self, Gate::T(_) | Gate::Tdg(_))
    }

    /// True for gates with a pure permutation action on basis states.
    pub fn is_classical(&self) -> bool {
        matches!(
            self,
            Gate::X(_) | Gate::Cnot { .. } | Gate::Swap(..) | Gate::Toffoli { .. } | Gate::Mpmct { .. }
        )
    }

    /// Operand qubits, controls first and target last.
    pub fn qubits(&self) -> Operands<'_> {
        let mut head = [Qubit(0); 3];
        let (len, tail): (u8, &[Qubit]) = match self {
            Gate::X(q) | Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) => {
                head[0] = *q;
                (1, &[])
            }
            Gate::Cnot { control, target } => {
                head[0] = *control;
                head[1] = *target;
                (2, &[])
            }
            Gate::Swap(a, b) => {
                head[0] = *a;
                head[1] = *b;
                (2, &[])
            }
            Gate::Toffoli { controls, target } => {
                head = [controls[0], controls[1], *target];
                (3, &[])
            }
            Gate::Mpmct { controls, target, .. } => {
                head[0] = *target;
                (0, controls.as_slice())
            }
        };
        Operands { head, len, tail, pos: 0, tail_target: matches!(self, Gate::Mpmct { .. }) }
    }

    pub fn validate(&self) -> Result<(), IrError> {
        if let Gate::Mpmct { controls, polarity, .. } = self {
            if controls.len() < 2 {
                return Err(IrError::TooFewControls(controls.len()));
            }
            if polarity.len() != controls.len() {
                return Err(IrError::PolarityLength { polarity: polarity.len(), controls: controls.len() });
            }
        }
        let ops: Vec<Qubit> = self.qubits().collect();
        for (i, a) in ops.iter().enumerate() {
            if ops[i + 1..].contains(a) {
                return Err(IrError::DuplicateOperand(*a));
            }
        }
        Ok(())
    }

    /// Same gate with every qubit index passed through `f`.
    pub fn map_qubits(&self, mut f: impl FnMut(Qubit) -> Qubit) -> Gate {
        match self {
            Gate::X(q) => Gate::X(f(*q)),
            Gate::H(q) => Gate::H(f(*q)),
            Gate::S(q) => Gate::S(f(*q)),
            Gate::Sdg(q) => Gate::Sdg(f(*q)),
            Gate::T(q) => Gate::T(f(*q)),
            Gate::Tdg(q) => Gate::Tdg(f(*q)),
            Gate::Cnot { control, target } => Gate::Cnot { control: f(*control), target: f(*target) },
            Gate::Swap(a, b) => Gate::Swap(f(*a), f(*b)),
            Gate::Toffoli { controls, target } => Gate::Toffoli {
                controls: [f(controls[0]), f(controls[1])],
                target: f(*target),
            },
            Gate::Mpmct { controls, polarity, target } => Gate::Mpmct {
                controls: controls.iter().map(|&c| f(c)).collect(),
                polarity: polarity.clone(),
                target: f(*target),
            },
        }
    }

    /// Inverse gate. Only the phase gates change.
    pub fn inverse(&self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(*q),
            Gate::Sdg(q) => Gate::S(*q),
            Gate::T(q) => Gate::Tdg(*q),
            Gate::Tdg(q) => Gate::T(*q),
            g => g.clone(),
        }
    }
}

/// Iterator over a gate's operands without allocating.
pub struct Operands<'a> {
    head: [Qubit; 3],
    len: u8,
    tail: &'a [Qubit],
    pos: usize,
    tail_target: bool,
}

impl Iterator for Operands<'_> {
    type Item = Qubit;

    fn next(&mut self) -> Option<Qubit> {
        let p = self.pos;
        self.pos += 1;
        if self.tail_target {
            // MPMCT: controls from the slice, then the target kept in head[0]
            match p.cmp(&self.tail.len()) {
                std::cmp::Ordering::Less => Some(self.tail[p]),
                std::cmp::Ordering::Equal => Some(self.head[0]),
                std::cmp::Ordering::Greater => None,
            }
        } else if p < self.len as usize {
            Some(self.head[p])
        } else {
            None
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind().mnemonic())?;
        if let Gate::Mpmct { controls, polarity, target } = self {
            f.write_str(" ")?;
            for &p in polarity {
                f.write_str(if p { "+" } else { "-" })?;
            }
            for c in controls {
                write!(f, " {c}")?;
            }
            return write!(f, " -> {target}");
        }
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}
