use std::collections::BTreeMap;
use std::fmt;

use super::schedule::place;
use super::{Circuit, Gate, GateKind, IrError};

/// The six logical metrics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ResourceCounts {
    pub logical_qubits: u64,
    pub depth: u64,
    pub t_count: u64,
    pub t_depth: u64,
    pub h_count: u64,
    pub cnot_count: u64,
}

impl ResourceCounts {
    /// Average T gates per T layer, `None` when there are no T layers.
    pub fn t_width(&self) -> Option<f64> {
        (self.t_depth > 0).then(|| self.t_count as f64 / self.t_depth as f64)
    }

    /// `(T_c, T_d)` as an unreduced ratio.
    pub fn t_width_ratio(&self) -> (u64, u64) {
        (self.t_count, self.t_depth)
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        if self.t_depth > self.depth {
            return Err(format!("T-depth {} exceeds depth {}", self.t_depth, self.depth));
        }
        if self.t_depth > self.t_count {
            return Err(format!("T-depth {} exceeds T-count {}", self.t_depth, self.t_count));
        }
        if (self.t_count > 0) != (self.t_depth > 0) {
            return Err("T-count and T-depth disagree on emptiness".into());
        }
        Ok(())
    }
}

impl fmt::Display for ResourceCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N_Q={} D={} T_c={} T_d={} H_c={} CNOT_c={}",
            self.logical_qubits, self.depth, self.t_count, self.t_depth, self.h_count, self.cnot_count
        )
    }
}

/// Raw per-kind tallies. Multi-controlled gates count as single opaque gates
/// and the depth treats them as one layer each.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GateTally {
    pub by_kind: BTreeMap<GateKind, u64>,
    pub depth: u64,
}

impl GateTally {
    pub fn get(&self, kind: GateKind) -> u64 {
        self.by_kind.get(&kind).copied().unwrap_or(0)
    }
}

pub fn gate_tally(circuit: &Circuit) -> GateTally {
    let mut by_kind = BTreeMap::new();
    for g in circuit.gates() {
        *by_kind.entry(g.kind()).or_insert(0) += 1;
    }
    let depth = place(circuit.gates(), circuit.num_qubits()).depth as u64;
    GateTally { by_kind, depth }
}

/// Clifford+T metrics. Fails on circuits that still hold Toffoli or MPMCT gates.
pub fn count_resources(circuit: &Circuit) -> Result<ResourceCounts, IrError> {
    let gates = circuit.gates();
    if let Some(g) = gates.iter().find(|g| matches!(g, Gate::Toffoli { .. } | Gate::Mpmct { .. })) {
        return Err(IrError::NotLowered(g.kind().mnemonic()));
    }
    let mut c = ResourceCounts { logical_qubits: circuit.num_qubits() as u64, ..Default::default() };
    for g in gates {
        match g {
            Gate::T(_) | Gate::Tdg(_) => c.t_count += 1,
            Gate::H(_) => c.h_count += 1,
            Gate::Cnot { .. } => c.cnot_count += 1,
            Gate::Swap(..) => c.cnot_count += 3,
            _ => {}
        }
    }
    let p = place(gates, circuit.num_qubits());
    c.depth = p.depth as u64;
    c.t_depth = p.t_depth(gates) as u64;
    Ok(c)
}
