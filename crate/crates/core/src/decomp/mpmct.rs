//! Multi-controlled Toffoli lowering.
//!
//! The gate is first expanded into the 4(c-2) Toffoli ladder over `c-2`
//! ancillas. Each Toffoli is written as H·CCZ·H on its target, adjacent H
//! pairs are cancelled, and the CCZ phases are merged as a phase polynomial.
//! Signs of the individual CCZs are chosen so that every even term cancels,
//! which leaves 12c-20 odd terms. Each surviving term is realised at the first
//! CCZ it came from, through a small CNOT parity network over that CCZ's
//! three wires plus one extra clean ancilla.

use std::collections::{BTreeMap, HashMap};

use super::DecompError;
use crate::ir::{Gate, Qubit};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Top,
    Down,
    Bottom,
    Up,
}

#[derive(Clone, Copy)]
enum Op {
    H(usize),
    Ccz { id: usize, wires: [usize; 3], sign: i32 },
}

impl Op {
    fn touches(&self, w: usize) -> bool {
        match self {
            Op::H(v) => *v == w,
            Op::Ccz { wires, .. } => wires.contains(&w),
        }
    }
}

/// Lowered MPMCT. Needs `c - 1` clean ancillas, all returned to 0.
pub fn decompose_mpmct(
    controls: &[Qubit],
    polarity: &[bool],
    target: Qubit,
    ancillas: &[Qubit],
) -> Result<Vec<Gate>, DecompError> {
    let template = mpmct_template(controls.len())?;
    instantiate(&template, controls, polarity, target, ancillas)
}

pub(crate) fn instantiate(
    template: &[Gate],
    controls: &[Qubit],
    polarity: &[bool],
    target: Qubit,
    ancillas: &[Qubit],
) -> Result<Vec<Gate>, DecompError> {
    let c = controls.len();
    if polarity.len() != c {
        return Err(DecompError::PolarityLength);
    }
    if c < 4 {
        return Err(DecompError::TooFewControls(c));
    }
    if ancillas.len() < c - 1 {
        return Err(DecompError::InsufficientAncillas { needed: c - 1, available: ancillas.len() });
    }
    let mut wires: Vec<Qubit> = controls.to_vec();
    wires.push(target);
    wires.extend_from_slice(&ancillas[..c - 1]);

    let flips: Vec<Gate> =
        controls.iter().zip(polarity).filter(|(_, &p)| !p).map(|(&q, _)| Gate::X(q)).collect();
    let mut out = Vec::with_capacity(template.len() + 2 * flips.len());
    out.extend(flips.iter().cloned());
    out.extend(template.iter().map(|g| g.map_qubits(|q| wires[q.index()])));
    out.extend(flips);
    Ok(out)
}

/// All-positive gate list on local wires: controls `0..c`, target `c`,
/// ladder ancillas `c+1..=2c-2`, extra ancilla `2c-1`.
pub fn mpmct_template(c: usize) -> Result<Vec<Gate>, DecompError> {
    if c < 4 {
        return Err(DecompError::TooFewControls(c));
    }
    let m = c - 2;
    let t = c;
    let anc = |j: usize| c + j;
    let extra = c + m + 1;

    let mut ops = Vec::with_capacity(12 * m);
    let mut id = 0;
    for half in 0..2 {
        let mut steps = vec![(c - 1, anc(m), t, Step::Top)];
        steps.extend((1..m).rev().map(|j| (j + 1, anc(j), anc(j + 1), Step::Down)));
        steps.push((0, 1, anc(1), Step::Bottom));
        steps.extend((1..m).map(|j| (j + 1, anc(j), anc(j + 1), Step::Up)));
        for (p, q, r, step) in steps {
            // CCZ is self-inverse, so the sign is free; this choice cancels all even terms
            let sign = match (half, step) {
                (0, Step::Up) => -1,
                (0, _) => 1,
                (_, Step::Down) => 1,
                _ => -1,
            };
            ops.push(Op::H(r));
            ops.push(Op::Ccz { id, wires: [p, q, r], sign });
            ops.push(Op::H(r));
            id += 1;
        }
    }
    cancel_hadamards(&mut ops);
    let terms = merge_phases(&ops, extra + 1, id);

    let mut nets: HashMap<Vec<u8>, Network> = HashMap::new();
    let mut gates = Vec::new();
    for op in &ops {
        match *op {
            Op::H(w) => gates.push(Gate::H(Qubit(w as u32))),
            Op::Ccz { id, wires: [p, q, r], .. } => {
                let ts = &terms[id];
                if ts.is_empty() {
                    continue;
                }
                let masks: Vec<u8> = ts.iter().map(|&(mask, _)| mask).collect();
                let net = nets.entry(masks.clone()).or_insert_with(|| parity_network(&masks));
                let local = [p, q, r, extra].map(|w| Qubit(w as u32));
                let cx = |&(a, b): &(u8, u8)| Gate::Cnot { control: local[a as usize], target: local[b as usize] };
                gates.extend(net.cnots.iter().map(cx));
                for (&(_, coef), &host) in ts.iter().zip(&net.hosts) {
                    emit_phase(&mut gates, local[host as usize], coef);
                }
                gates.extend(net.cnots.iter().rev().map(cx));
            }
        }
    }
    Ok(gates)
}

/// Drops H pairs on one wire with nothing touching that wire in between.
fn cancel_hadamards(ops: &mut Vec<Op>) {
    loop {
        let mut hit = None;
        'outer: for i in 0..ops.len() {
            let Op::H(v) = ops[i] else { continue };
            for (j, op) in ops.iter().enumerate().skip(i + 1) {
                if op.touches(v) {
                    if matches!(op, Op::H(_)) {
                        hit = Some((i, j));
                        break 'outer;
                    }
                    continue 'outer;
                }
            }
        }
        let Some((i, j)) = hit else { break };
        ops.remove(j);
        ops.remove(i);
    }
}

/// Surviving phase terms per CCZ as `(subset of its wires, coefficient mod 8)`.
///
/// Every H starts a fresh variable on its wire, so a term keyed by variable
/// ids is constant between its first and last occurrence and can be applied
/// where it first appears.
fn merge_phases(ops: &[Op], wires: usize, cczs: usize) -> Vec<Vec<(u8, i32)>> {
    let mut var: Vec<u32> = (0..wires as u32).collect();
    let mut fresh = wires as u32;
    // key -> (coefficient, first ccz, mask there), plus first-seen order
    let mut table: BTreeMap<Vec<u32>, (i32, usize, u8)> = BTreeMap::new();
    let mut order: Vec<Vec<u32>> = Vec::new();
    for op in ops {
        match *op {
            Op::H(w) => {
                var[w] = fresh;
                fresh += 1;
            }
            Op::Ccz { id, wires, sign } => {
                for mask in 1u8..8 {
                    let mut key: Vec<u32> =
                        (0..3).filter(|b| mask >> b & 1 == 1).map(|b| var[wires[b]]).collect();
                    key.sort_unstable();
                    let coef = if mask.count_ones() == 2 { -sign } else { sign };
                    table
                        .entry(key.clone())
                        .and_modify(|e| e.0 += coef)
                        .or_insert_with(|| {
                            order.push(key);
                            (coef, id, mask)
                        });
                }
            }
        }
    }
    let mut per = vec![Vec::new(); cczs];
    for key in order {
        let (coef, id, mask) = table[&key];
        let coef = coef.rem_euclid(8);
        if coef != 0 {
            per[id].push((mask, coef));
        }
    }
    per
}

fn emit_phase(gates: &mut Vec<Gate>, q: Qubit, coef: i32) {
    match coef {
        1 => gates.push(Gate::T(q)),
        2 => gates.push(Gate::S(q)),
        3 => gates.extend([Gate::S(q), Gate::T(q)]),
        4 => gates.extend([Gate::S(q), Gate::S(q)]),
        5 => gates.extend([Gate::Sdg(q), Gate::Tdg(q)]),
        6 => gates.push(Gate::Sdg(q)),
        7 => gates.push(Gate::Tdg(q)),
        _ => {}
    }
}

/// CNOTs over wires 0..4 (three CCZ wires plus a zeroed extra) after which
/// every requested parity sits on its own wire.
struct Network {
    cnots: Vec<(u8, u8)>,
    hosts: Vec<u8>,
}

const PAIRS: [(u8, u8); 12] =
    [(0, 1), (0, 2), (0, 3), (1, 0), (1, 2), (1, 3), (2, 0), (2, 1), (2, 3), (3, 0), (3, 1), (3, 2)];

/// Shortest network, then fewest layers, then first in lexicographic order.
fn parity_network(masks: &[u8]) -> Network {
    for len in 0..=6u32 {
        let mut best: Option<(usize, Vec<(u8, u8)>, Vec<u8>)> = None;
        for code in 0..PAIRS.len().pow(len) {
            // base-12 digits, most significant first
            let seq: Vec<(u8, u8)> = (0..len)
                .rev()
                .map(|d| PAIRS[code / PAIRS.len().pow(d) % PAIRS.len()])
                .collect();
            if let Some(hosts) = hosts_for(&seq, masks) {
                let layers = layer_count(&seq);
                if best.as_ref().is_none_or(|b| layers < b.0) {
                    best = Some((layers, seq, hosts));
                }
            }
        }
        if let Some((_, cnots, hosts)) = best {
            return Network { cnots, hosts };
        }
    }
    unreachable!("any set of at most four parities over three wires needs at most 6 CNOTs")
}

fn hosts_for(seq: &[(u8, u8)], masks: &[u8]) -> Option<Vec<u8>> {
    let mut st = [1u8, 2, 4, 0];
    for &(a, b) in seq {
        st[b as usize] ^= st[a as usize];
    }
    let mut used = [false; 4];
    let mut hosts = Vec::with_capacity(masks.len());
    for &m in masks {
        let w = (0..4).find(|&w| st[w] == m && !used[w])?;
        used[w] = true;
        hosts.push(w as u8);
    }
    Some(hosts)
}

fn layer_count(seq: &[(u8, u8)]) -> usize {
    let mut ready = [0usize; 4];
    let mut depth = 0;
    for &(a, b) in seq {
        let l = 1 + ready[a as usize].max(ready[b as usize]);
        ready[a as usize] = l;
        ready[b as usize] = l;
        depth = depth.max(l);
    }
    depth
}
