use std::fmt;
use std::str::FromStr;

use super::DecompError;
use crate::ir::{Gate, Qubit};

/// Toffoli lowering variants, named by T-depth.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ToffoliVariant {
    /// no ancilla
    Td3,
    /// one ancilla
    Td2,
    /// four ancillas, T-depth 1
    #[default]
    Td1,
}

impl ToffoliVariant {
    pub const ALL: [ToffoliVariant; 3] = [ToffoliVariant::Td3, ToffoliVariant::Td2, ToffoliVariant::Td1];

    pub fn ancillas_required(self) -> usize {
        match self {
            ToffoliVariant::Td3 => 0,
            ToffoliVariant::Td2 => 1,
            ToffoliVariant::Td1 => 4,
        }
    }
}

impl fmt::Display for ToffoliVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ToffoliVariant::Td3 => "td3",
            ToffoliVariant::Td2 => "td2",
            ToffoliVariant::Td1 => "td1",
        })
    }
}

impl FromStr for ToffoliVariant {
    type Err = DecompError;

    fn from_str(s: &str) -> Result<Self, DecompError> {
        match s {
            "td3" => Ok(ToffoliVariant::Td3),
            "td2" => Ok(ToffoliVariant::Td2),
            "td1" => Ok(ToffoliVariant::Td1),
            _ => Err(DecompError::UnknownVariant(s.to_string())),
        }
    }
}

pub fn decompose_toffoli(
    variant: ToffoliVariant,
    controls: [Qubit; 2],
    target: Qubit,
    ancillas: &[Qubit],
) -> Result<Vec<Gate>, DecompError> {
    let need = variant.ancillas_required();
    if ancillas.len() < need {
        return Err(DecompError::InsufficientAncillas { needed: need, available: ancillas.len() });
    }
    let [a, b] = controls;
    let c = target;
    let cx = |x: Qubit, y: Qubit| Gate::Cnot { control: x, target: y };
    let gates = match variant {
        ToffoliVariant::Td3 => vec![
            Gate::H(c),
            cx(b, c),
            Gate::Tdg(c),
            cx(a, c),
            Gate::T(c),
            cx(b, c),
            Gate::Tdg(c),
            cx(a, c),
            Gate::T(b),
            Gate::T(c),
            Gate::H(c),
            cx(a, b),
            Gate::T(a),
            Gate::Tdg(b),
            cx(a, b),
        ],
        ToffoliVariant::Td2 => {
            let p = ancillas[0];
            vec![
                Gate::H(c),
                cx(a, p),
                cx(b, p),
                cx(c, p),
                Gate::T(a),
                Gate::T(b),
                Gate::T(c),
                Gate::T(p),
                cx(a, b),
                cx(a, c),
                cx(a, p),
                Gate::Tdg(b),
                Gate::Tdg(c),
                Gate::Tdg(p),
                cx(a, p),
                cx(a, c),
                cx(a, b),
                cx(c, p),
                cx(b, p),
                cx(a, p),
                Gate::H(c),
            ]
        }
        ToffoliVariant::Td1 => {
            let [p, q, r, s] = [ancillas[0], ancillas[1], ancillas[2], ancillas[3]];
            // after the three CNOT layers: p=a^c q=b^c r=a^b^c s=a^b
            let compute = [
                cx(a, p),
                cx(b, q),
                cx(c, p),
                cx(b, r),
                cx(a, s),
                cx(c, q),
                cx(p, r),
                cx(b, s),
            ];
            let mut g = vec![Gate::H(c)];
            g.extend(compute.iter().cloned());
            g.extend([Gate::T(a), Gate::T(b), Gate::T(c), Gate::T(r), Gate::Tdg(p), Gate::Tdg(q), Gate::Tdg(s)]);
            g.extend(compute.iter().rev().cloned());
            g.push(Gate::H(c));
            g
        }
    };
    Ok(gates)
}
