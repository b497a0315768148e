use std::collections::HashMap;

use super::mpmct::{instantiate, mpmct_template};
use super::{decompose_toffoli, DecompError, ToffoliVariant};
use crate::ir::{Circuit, Gate, Qubit, RegisterRole};

/// Lowers every Toffoli and MPMCT to Clifford+T.
///
/// Ancillas come from the circuit's ancilla registers. For each gate the
/// pool qubits that free up earliest (by ASAP layer) are taken, ties by
/// index, so gates that run one after another share qubits while gates that
/// could overlap spread across the pool.
pub fn lower_to_clifford_t(circuit: &Circuit, variant: ToffoliVariant) -> Result<Circuit, DecompError> {
    let pool: Vec<Qubit> = circuit.qubits_with_role(RegisterRole::Ancilla);
    let mut ready = vec![0u32; circuit.num_qubits() as usize];
    let mut templates: HashMap<usize, Vec<Gate>> = HashMap::new();
    let mut out = Vec::with_capacity(circuit.gates().len());

    for g in circuit.gates() {
        let emitted = match g {
            Gate::Toffoli { controls, target } => {
                let anc = pick(&pool, &ready, g, variant.ancillas_required())?;
                decompose_toffoli(variant, *controls, *target, &anc)?
            }
            Gate::Mpmct { controls, polarity, target } => {
                let c = controls.len();
                if c < 4 {
                    return Err(DecompError::TooFewControls(c));
                }
                let anc = pick(&pool, &ready, g, c - 1)?;
                let tpl = match templates.get(&c) {
                    Some(t) => t,
                    None => templates.entry(c).or_insert(mpmct_template(c)?),
                };
                instantiate(tpl, controls, polarity, *target, &anc)?
            }
            other => vec![other.clone()],
        };
        for e in &emitted {
            if matches!(e, Gate::X(_)) {
                continue;
            }
            let l = 1 + e.qubits().map(|q| ready[q.index()]).max().unwrap_or(0);
            for q in e.qubits() {
                ready[q.index()] = l;
            }
        }
        out.extend(emitted);
    }
    Ok(circuit.with_gates(out)?)
}

fn pick(pool: &[Qubit], ready: &[u32], g: &Gate, k: usize) -> Result<Vec<Qubit>, DecompError> {
    let mut free: Vec<(u32, Qubit)> = pool
        .iter()
        .filter(|&&q| !g.qubits().any(|o| o == q))
        .map(|&q| (ready[q.index()], q))
        .collect();
    if free.len() < k {
        return Err(DecompError::InsufficientAncillas { needed: k, available: free.len() });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    if k < free.len() {
        free.select_nth_unstable(k - 1);
        free.truncate(k);
    }
    free.sort_unstable();
    Ok(free.into_iter().map(|(_, q)| q).collect())
}
