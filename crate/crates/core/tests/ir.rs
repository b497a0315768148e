use proptest::prelude::*;
use qram_core::decomp::decompose_toffoli;
use qram_core::ir::{
    count_resources, gate_tally, parse_circuit, schedule_asap, write_circuit, Circuit, CircuitBuilder, Gate, GateKind,
    Qubit, RegisterRole,
};
use qram_core::ToffoliVariant;

fn plain(m: usize, gates: Vec<Gate>) -> Circuit {
    let mut b = CircuitBuilder::new();
    b.register("w", RegisterRole::Ancilla, m);
    b.extend(gates);
    b.finish().unwrap()
}

#[test]
fn empty_circuit_has_no_layers_and_zero_counts() {
    let c = plain(2, vec![]);
    assert_eq!(schedule_asap(&c).layers.len(), 0);
    let r = count_resources(&c).unwrap();
    assert_eq!((r.depth, r.t_count, r.t_depth, r.h_count, r.cnot_count), (0, 0, 0, 0, 0));
}

#[test]
fn disjoint_cnots_share_a_layer() {
    let c = plain(4, vec![Gate::cnot(0, 1), Gate::cnot(2, 3)]);
    assert_eq!(schedule_asap(&c).depth(), 1);
}

#[test]
fn chained_cnots_need_two_layers() {
    let c = plain(3, vec![Gate::cnot(0, 1), Gate::cnot(1, 2)]);
    assert_eq!(schedule_asap(&c).depth(), 2);
}

#[test]
fn x_gates_add_no_depth() {
    let c = plain(2, vec![Gate::X(Qubit(0)), Gate::cnot(0, 1), Gate::X(Qubit(0)), Gate::X(Qubit(1))]);
    let r = count_resources(&c).unwrap();
    assert_eq!(r.depth, 1);
    assert_eq!(r.cnot_count, 1);
}

#[test]
fn td1_toffoli_counts() {
    let q: Vec<Qubit> = (0..7).map(Qubit).collect();
    let c = plain(7, decompose_toffoli(ToffoliVariant::Td1, [q[0], q[1]], q[2], &q[3..]).unwrap());
    let r = count_resources(&c).unwrap();
    assert_eq!((r.t_count, r.t_depth, r.cnot_count, r.depth), (7, 1, 16, 7));
}

#[test]
fn unlowered_circuits_refuse_t_metrics() {
    let c = plain(3, vec![Gate::toffoli(0, 1, 2)]);
    let e = count_resources(&c).unwrap_err();
    assert!(e.to_string().contains("not lowered"), "{e}");
    assert_eq!(gate_tally(&c).get(GateKind::Toffoli), 1);
}

const HEADER: &str = ".qubits 9\n.reg w ancilla 0 8\n";

#[test]
fn parses_toffoli_line() {
    let c = parse_circuit(&format!("{HEADER}tof 1 2 5\n")).unwrap();
    assert_eq!(c.gates(), &[Gate::toffoli(1, 2, 5)]);
}

#[test]
fn parses_mpmct_line() {
    let c = parse_circuit(&format!("{HEADER}mpmct ++-+ 0 1 2 3 -> 8\n")).unwrap();
    let want = Gate::Mpmct {
        controls: vec![Qubit(0), Qubit(1), Qubit(2), Qubit(3)],
        polarity: vec![true, true, false, true],
        target: Qubit(8),
    };
    assert_eq!(c.gates(), &[want]);
}

#[test]
fn duplicate_operand_is_a_parse_error() {
    let e = parse_circuit(&format!("{HEADER}cnot 1 1\n")).unwrap_err();
    assert_eq!(e.line, 3);
    assert!(e.reason.contains("duplicate operand"), "{}", e.reason);
}

#[test]
fn parse_errors_name_the_problem() {
    for (line, needle) in [("foo 1", "unknown gate"), ("x 9", "out of range"), ("mpmct +- 0 1 2 -> 3", "polarity")] {
        let e = parse_circuit(&format!("{HEADER}{line}\n")).unwrap_err();
        assert!(e.reason.contains(needle), "{line}: {}", e.reason);
    }
}

const M: u32 = 8;

/// `k` distinct qubits in random order.
fn distinct(k: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::sample::subsequence((0..M).collect::<Vec<_>>(), k).prop_shuffle()
}

fn arb_gate() -> impl Strategy<Value = Gate> {
    let q = || 0..M;
    prop_oneof![
        q().prop_map(|a| Gate::X(Qubit(a))),
        q().prop_map(|a| Gate::H(Qubit(a))),
        q().prop_map(|a| Gate::S(Qubit(a))),
        q().prop_map(|a| Gate::Sdg(Qubit(a))),
        q().prop_map(|a| Gate::T(Qubit(a))),
        q().prop_map(|a| Gate::Tdg(Qubit(a))),
        distinct(2).prop_map(|v| Gate::cnot(v[0], v[1])),
        distinct(2).prop_map(|v| Gate::Swap(Qubit(v[0]), Qubit(v[1]))),
        distinct(3).prop_map(|v| Gate::toffoli(v[0], v[1], v[2])),
        (2usize..6)
            .prop_flat_map(|c| (distinct(c + 1), prop::collection::vec(any::<bool>(), c)))
            .prop_map(|(v, polarity)| {
                let (controls, target) = v.split_at(v.len() - 1);
                Gate::Mpmct { controls: controls.iter().map(|&i| Qubit(i)).collect(), polarity, target: Qubit(target[0]) }
            }),
    ]
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (prop::collection::vec(arb_gate(), 0..40), 1..M).prop_map(|(gates, split)| {
        let mut b = CircuitBuilder::new();
        b.register("addr", RegisterRole::Address, split as usize);
        b.register("anc", RegisterRole::Ancilla, (M - split) as usize);
        b.extend(gates);
        b.finish().unwrap()
    })
}

fn clifford_t(c: &Circuit) -> Circuit {
    let gates = c.gates().iter().filter(|g| !matches!(g, Gate::Toffoli { .. } | Gate::Mpmct { .. })).cloned().collect();
    c.with_gates(gates).unwrap()
}

proptest! {
    #[test]
    fn text_round_trip(c in arb_circuit()) {
        let back = parse_circuit(&write_circuit(&c)).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn layers_are_disjoint_and_topological(c in arb_circuit()) {
        let layered = schedule_asap(&c);
        let mut at = vec![None; c.num_qubits() as usize];
        // gates on each qubit must appear in program order
        let mut seen: Vec<Vec<&Gate>> = vec![Vec::new(); c.num_qubits() as usize];
        for (li, layer) in layered.layers.iter().enumerate() {
            let mut used = vec![false; c.num_qubits() as usize];
            for g in &layer.gates {
                for q in g.qubits() {
                    prop_assert!(!used[q.index()], "qubit {} twice in layer {}", q, li);
                    used[q.index()] = true;
                    if let Some(prev) = at[q.index()] {
                        prop_assert!(prev < li);
                    }
                    at[q.index()] = Some(li);
                    seen[q.index()].push(g);
                }
            }
        }
        for q in 0..c.num_qubits() as usize {
            let program: Vec<&Gate> = c.gates().iter().filter(|g| g.qubits().any(|o| o.index() == q)).collect();
            prop_assert_eq!(&seen[q], &program);
        }
        prop_assert_eq!(layered.gate_count(), c.gates().len());
    }

    #[test]
    fn counts_are_consistent(c in arb_circuit()) {
        let c = clifford_t(&c);
        let r = count_resources(&c).unwrap();
        prop_assert!(r.t_depth <= r.depth);
        prop_assert!(r.t_depth <= r.t_count);
        prop_assert!(r.check_invariants().is_ok());
        if r.t_count > 0 {
            prop_assert!(r.t_width().unwrap() >= 1.0);
        }
    }
}
