use std::collections::BTreeSet;

use super::{Circuit, Gate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub gates: Vec<Gate>,
    /// X-only layers carry no depth.
    pub x_only: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayeredCircuit {
    pub layers: Vec<Layer>,
}

impl LayeredCircuit {
    /// Number of layers that hold a non-X gate.
    pub fn depth(&self) -> usize {
        self.layers.iter().filter(|l| !l.x_only).count()
    }

    pub fn t_depth(&self) -> usize {
        self.layers.iter().filter(|l| l.gates.iter().any(Gate::is_t_like)).count()
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(|l| l.gates.len()).sum()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flat_map(|l| l.gates.iter())
    }
}

/// Where each gate of a list lands.
///
/// Non-X gates get a main layer in `1..=depth`. An X gate gets the main layer
/// it follows (`0` when it precedes everything on its qubit) plus a slot among
/// the X-only sublayers after that layer.
#[derive(Clone, Debug)]
pub(crate) struct Placement {
    pub layer: Vec<u32>,
    pub x_slot: Vec<u32>,
    pub depth: u32,
}

impl Placement {
    pub fn t_depth(&self, gates: &[Gate]) -> u32 {
        let set: BTreeSet<u32> =
            gates.iter().zip(&self.layer).filter(|(g, _)| g.is_t_like()).map(|(_, &l)| l).collect();
        set.len() as u32
    }
}

/// Layer assignment with X gates transparent.
///
/// Depth is the ASAP depth. Within it, T and T† gates are packed onto as few
/// layers as possible: every gate keeps a window between its earliest and
/// latest feasible layer, T gates are fixed one at a time onto a shared
/// layer (an existing T layer when one fits, otherwise the layer inside the
/// most open windows), and each fix is propagated along the dependency edges.
/// Remaining gates then take their earliest layer.
pub(crate) fn place(gates: &[Gate], num_qubits: u32) -> Placement {
    let nq = num_qubits as usize;
    let dag = Dag::new(gates, nq);
    let mut est = vec![0u32; gates.len()];
    for &i in &dag.order {
        est[i] = 1 + dag.pred[i].iter().map(|&p| est[p]).max().unwrap_or(0);
    }
    let depth = dag.order.iter().map(|&i| est[i]).max().unwrap_or(0);
    let mut layer = est.clone();
    if gates.iter().any(Gate::is_t_like) {
        let mut lst = vec![0u32; gates.len()];
        for &i in dag.order.iter().rev() {
            lst[i] = dag.succ[i].iter().map(|&s| lst[s]).min().unwrap_or(depth + 1) - 1;
        }
        // two strategies from the same windows, fewer T layers wins
        let runs: Vec<Vec<u32>> = [true, false]
            .into_iter()
            .map(|join_first| {
                let (mut e, mut l) = (est.clone(), lst.clone());
                pack_t(gates, &dag, &mut e, &mut l, join_first);
                e
            })
            .collect();
        let used = |l: &[u32]| gates.iter().zip(l).filter(|(g, _)| g.is_t_like()).map(|(_, &x)| x).collect::<BTreeSet<_>>().len();
        layer = runs.into_iter().min_by_key(|l| used(l)).expect("two runs");
    }

    let mut x_slot = vec![0u32; gates.len()];
    let mut prev = vec![0u32; nq];
    // (main layer, next free slot) of the last X seen on each wire
    let mut last_x: Vec<Option<(u32, u32)>> = vec![None; nq];
    for (i, g) in gates.iter().enumerate() {
        match g {
            Gate::X(q) => {
                let after = prev[q.index()];
                let slot = match last_x[q.index()] {
                    Some((a, s)) if a == after => s,
                    _ => 0,
                };
                layer[i] = after;
                x_slot[i] = slot;
                last_x[q.index()] = Some((after, slot + 1));
            }
            _ => {
                for q in g.qubits() {
                    prev[q.index()] = layer[i];
                }
            }
        }
    }
    Placement { layer, x_slot, depth }
}

/// Dependency edges between non-X gates sharing a qubit.
struct Dag {
    order: Vec<usize>,
    pred: Vec<Vec<usize>>,
    succ: Vec<Vec<usize>>,
}

impl Dag {
    fn new(gates: &[Gate], nq: usize) -> Dag {
        let mut last: Vec<Option<usize>> = vec![None; nq];
        let mut pred = vec![Vec::new(); gates.len()];
        let mut succ = vec![Vec::new(); gates.len()];
        let mut order = Vec::new();
        for (i, g) in gates.iter().enumerate() {
            if matches!(g, Gate::X(_)) {
                continue;
            }
            order.push(i);
            for q in g.qubits() {
                if let Some(p) = last[q.index()].replace(i) {
                    if !pred[i].contains(&p) {
                        pred[i].push(p);
                        succ[p].push(i);
                    }
                }
            }
        }
        Dag { order, pred, succ }
    }
}

fn fix(dag: &Dag, est: &mut [u32], lst: &mut [u32], i: usize, t: u32) {
    est[i] = t;
    lst[i] = t;
    let mut work = vec![i];
    while let Some(g) = work.pop() {
        for &s in &dag.succ[g] {
            if est[s] <= est[g] {
                est[s] = est[g] + 1;
                work.push(s);
            }
        }
    }
    work.push(i);
    while let Some(g) = work.pop() {
        for &p in &dag.pred[g] {
            if lst[p] >= lst[g] {
                lst[p] = lst[g] - 1;
                work.push(p);
            }
        }
    }
}

/// With `join_first`, open windows that contain an existing T layer are
/// fixed there before any new layer is opened. Otherwise an existing layer is
/// used only when it covers at least as many open windows as a new one.
fn pack_t(gates: &[Gate], dag: &Dag, est: &mut [u32], lst: &mut [u32], join_first: bool) {
    let mut points: BTreeSet<u32> = BTreeSet::new();
    let mut open: Vec<usize> = Vec::new();
    for &i in &dag.order {
        if !gates[i].is_t_like() {
            continue;
        }
        if est[i] == lst[i] {
            points.insert(est[i]);
        } else {
            open.push(i);
        }
    }
    loop {
        if join_first {
            let mut rest = Vec::new();
            for &i in &open {
                match points.range(est[i]..=lst[i]).next() {
                    Some(&t) => fix(dag, est, lst, i, t),
                    None => rest.push(i),
                }
            }
            open = rest;
        }
        let Some((count, mut t)) = best_stab(&open, est, lst) else { break };
        // an existing T layer costs nothing, so it wins ties
        let mut lo: Vec<u32> = open.iter().map(|&i| est[i]).collect();
        let mut hi: Vec<u32> = open.iter().map(|&i| lst[i]).collect();
        lo.sort_unstable();
        hi.sort_unstable();
        let inside = |p: u32| lo.partition_point(|&x| x <= p) - hi.partition_point(|&x| x < p);
        if let Some((c, p)) = points.iter().map(|&p| (inside(p), p)).max_by_key(|&(c, p)| (c, std::cmp::Reverse(p))) {
            if c > 0 && c >= count {
                t = p;
            }
        }
        points.insert(t);
        let mut rest = Vec::new();
        for &i in &open {
            if est[i] <= t && t <= lst[i] {
                fix(dag, est, lst, i, t);
            } else {
                rest.push(i);
            }
        }
        open = rest;
    }
}

/// Layer inside the most windows and that count, smallest layer on ties.
fn best_stab(open: &[usize], est: &[u32], lst: &[u32]) -> Option<(usize, u32)> {
    let mut events: Vec<(u32, i32)> = Vec::with_capacity(2 * open.len());
    for &i in open {
        events.push((est[i], 1));
        events.push((lst[i] + 1, -1));
    }
    events.sort_unstable_by_key(|&(t, d)| (t, d));
    let (mut cur, mut best) = (0, None::<(i32, u32)>);
    for (t, d) in events {
        cur += d;
        if d > 0 && best.is_none_or(|(c, _)| cur > c) {
            best = Some((cur, t));
        }
    }
    best.map(|(c, t)| (c as usize, t))
}

pub fn schedule_asap(circuit: &Circuit) -> LayeredCircuit {
    schedule_gates(circuit.gates(), circuit.num_qubits())
}

pub(crate) fn schedule_gates(gates: &[Gate], num_qubits: u32) -> LayeredCircuit {
    let p = place(gates, num_qubits);
    let d = p.depth as usize;
    let mut main: Vec<Vec<Gate>> = vec![Vec::new(); d + 1];
    let mut xs: Vec<Vec<Vec<Gate>>> = vec![Vec::new(); d + 1];
    for (i, g) in gates.iter().enumerate() {
        let l = p.layer[i] as usize;
        if matches!(g, Gate::X(_)) {
            let s = p.x_slot[i] as usize;
            if xs[l].len() <= s {
                xs[l].resize_with(s + 1, Vec::new);
            }
            xs[l][s].push(g.clone());
        } else {
            main[l].push(g.clone());
        }
    }
    let mut layers = Vec::new();
    for (l, (m, x)) in main.into_iter().zip(xs).enumerate() {
        if l > 0 {
            layers.push(Layer { gates: m, x_only: false });
        }
        layers.extend(x.into_iter().map(|gates| Layer { gates, x_only: true }));
    }
    LayeredCircuit { layers }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::Qubit;

    fn depth(gates: &[Gate], nq: u32) -> usize {
        schedule_gates(gates, nq).depth()
    }

    #[test]
    fn empty_has_no_layers() {
        assert_eq!(schedule_gates(&[], 3).layers.len(), 0);
    }

    #[test]
    fn disjoint_and_chained() {
        assert_eq!(depth(&[Gate::cnot(0, 1), Gate::cnot(2, 3)], 4), 1);
        assert_eq!(depth(&[Gate::cnot(0, 1), Gate::cnot(1, 2)], 3), 2);
    }

    #[test]
    fn x_is_transparent() {
        let g = [Gate::cnot(0, 1), Gate::X(Qubit(1)), Gate::X(Qubit(1)), Gate::cnot(1, 2)];
        let lc = schedule_gates(&g, 3);
        assert_eq!(lc.depth(), 2);
        assert_eq!(lc.layers.len(), 4);
        assert_eq!(lc.gates().cloned().collect::<Vec<_>>(), g.to_vec());
        // leading X gets its own sublayer before the first main layer
        let lc = schedule_gates(&[Gate::X(Qubit(0)), Gate::H(Qubit(0))], 1);
        assert!(lc.layers[0].x_only);
        assert_eq!(lc.depth(), 1);
    }

    #[test]
    fn t_alignment_merges_slack() {
        // T on qubit 0 could go at layer 1, the other T must sit at layer 2
        let g = [
            Gate::T(Qubit(0)),
            Gate::cnot(1, 2),
            Gate::T(Qubit(2)),
            Gate::cnot(0, 2),
        ];
        let lc = schedule_gates(&g, 3);
        assert_eq!(lc.depth(), 3);
        assert_eq!(lc.t_depth(), 1);
    }
}
