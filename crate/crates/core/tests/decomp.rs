use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qram_core::decomp::{decompose_mpmct, decompose_toffoli, lower_to_clifford_t, DecompError};
use qram_core::ir::{count_resources, Circuit, CircuitBuilder, Gate, Qubit, RegisterRole};
use qram_core::verify::{check_decomposition_unitary, simulate_state, GateSpec, StateVector};
use qram_core::ToffoliVariant;

fn wires(m: u32) -> Vec<Qubit> {
    (0..m).map(Qubit).collect()
}

fn fragment(m: usize, gates: Vec<Gate>) -> Circuit {
    let mut b = CircuitBuilder::new();
    b.register("w", RegisterRole::Ancilla, m);
    b.extend(gates);
    b.finish().unwrap()
}

fn mpmct_fragment(polarity: &[bool]) -> Circuit {
    let c = polarity.len();
    let q = wires(2 * c as u32);
    let gates = decompose_mpmct(&q[..c], polarity, q[c], &q[c + 1..]).unwrap();
    fragment(2 * c, gates)
}

#[test]
fn toffoli_variants_are_exact() {
    for v in ToffoliVariant::ALL {
        let dev = check_decomposition_unitary(&GateSpec::Toffoli(v)).unwrap();
        assert!(dev < 1e-10, "{v}: {dev}");
    }
}

#[test]
fn toffoli_needs_its_ancillas() {
    let q = wires(6);
    let e = decompose_toffoli(ToffoliVariant::Td1, [q[0], q[1]], q[2], &q[3..6]).unwrap_err();
    assert!(matches!(e, DecompError::InsufficientAncillas { needed: 4, available: 3 }));
    assert!(decompose_toffoli(ToffoliVariant::Td2, [q[0], q[1]], q[2], &[]).is_err());
    assert!(decompose_toffoli(ToffoliVariant::Td3, [q[0], q[1]], q[2], &[]).is_ok());
}

#[test]
fn mpmct_counts_follow_the_closed_forms() {
    for c in 4..=12u64 {
        let r = count_resources(&mpmct_fragment(&vec![true; c as usize])).unwrap();
        assert_eq!(r.t_count, 12 * c - 20, "c={c}");
        assert_eq!(r.t_depth, 4 * (c - 2), "c={c}");
        assert_eq!(r.h_count, 4 * c - 6, "c={c}");
        assert_eq!(r.cnot_count, 24 * c - 40, "c={c}");
        // the emitted cascade is shallower than the canonical depth
        assert!(r.depth <= 28 * c - 60, "c={c}: {}", r.depth);
    }
}

#[test]
fn mpmct_spot_rows() {
    let r = count_resources(&mpmct_fragment(&[true, true, false, true])).unwrap();
    assert_eq!((r.t_count, r.t_depth, r.h_count, r.cnot_count), (28, 8, 10, 56));
    assert!(r.depth <= 52);
    let r = count_resources(&mpmct_fragment(&[true; 5])).unwrap();
    assert_eq!((r.t_count, r.t_depth, r.h_count, r.cnot_count), (40, 12, 14, 80));
    assert!(r.depth <= 80);
}

#[test]
fn negative_controls_cost_nothing() {
    let plain = count_resources(&mpmct_fragment(&[true; 6])).unwrap();
    let mixed = count_resources(&mpmct_fragment(&[false, true, false, false, true, false])).unwrap();
    assert_eq!(plain, mixed);
}

#[test]
fn mpmct_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in 4..=6 {
        let mut patterns = vec![vec![true; c]];
        if c == 4 {
            patterns.push(vec![true, true, false, true]);
            patterns.push(vec![true, false, true, false]);
        }
        while patterns.len() < 4 {
            patterns.push((0..c).map(|_| rng.gen()).collect());
        }
        for p in patterns {
            let dev = check_decomposition_unitary(&GateSpec::Mpmct { polarity: p.clone() }).unwrap();
            assert!(dev < 1e-10, "{p:?}: {dev}");
        }
    }
}

#[test]
fn mpmct_too_few_controls() {
    let q = wires(8);
    let e = decompose_mpmct(&q[..3], &[true; 3], q[3], &q[4..]).unwrap_err();
    assert!(e.to_string().contains("MPMCT decomposition requires ≥ 4 controls"));
    let e = decompose_mpmct(&q[..4], &[true; 4], q[4], &q[5..7]).unwrap_err();
    assert!(matches!(e, DecompError::InsufficientAncillas { needed: 3, available: 2 }));
}

#[test]
fn fragments_restore_ancillas_on_every_basis_input() {
    for c in [4usize, 5] {
        let polarity: Vec<bool> = (0..c).map(|i| i % 3 != 1).collect();
        let circuit = mpmct_fragment(&polarity);
        let m = circuit.num_qubits();
        for x in 0..1usize << (c + 1) {
            let out = simulate_state(&circuit, &StateVector::basis(m, x).unwrap()).unwrap();
            let (j, a) = out
                .amplitudes()
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                .unwrap();
            assert!((a.norm() - 1.0).abs() < 1e-10, "input {x:b} spreads");
            assert_eq!(j >> (c + 1), 0, "input {x:b} leaves ancillas set");
            let fires = (0..c).all(|i| (x >> i & 1 == 1) == polarity[i]);
            assert_eq!(j, if fires { x ^ 1 << c } else { x });
        }
    }
}

#[test]
fn lowering_reuses_the_ancilla_pool() {
    let mpmct = || Gate::Mpmct { controls: wires(4), polarity: vec![true; 4], target: Qubit(4) };
    let build = |count: usize| {
        let mut b = CircuitBuilder::new();
        b.register("addr", RegisterRole::Address, 4);
        b.register("out", RegisterRole::Output, 1);
        b.register("anc", RegisterRole::Ancilla, 3);
        b.extend((0..count).map(|_| mpmct()));
        b.finish().unwrap()
    };
    let one = count_resources(&lower_to_clifford_t(&build(1), ToffoliVariant::Td1).unwrap()).unwrap();
    let two = count_resources(&lower_to_clifford_t(&build(2), ToffoliVariant::Td1).unwrap()).unwrap();
    assert_eq!((one.t_count, one.t_depth, one.h_count, one.cnot_count), (28, 8, 10, 56));
    assert_eq!(two.logical_qubits, one.logical_qubits);
    assert_eq!(two.t_count, 2 * one.t_count);
}

#[test]
fn clifford_circuits_pass_through() {
    let c = fragment(3, vec![Gate::H(Qubit(0)), Gate::cnot(0, 1), Gate::Swap(Qubit(1), Qubit(2)), Gate::T(Qubit(2))]);
    assert_eq!(lower_to_clifford_t(&c, ToffoliVariant::Td1).unwrap(), c);
}

#[test]
fn lowered_output_is_clifford_t() {
    let mut b = CircuitBuilder::new();
    b.register("addr", RegisterRole::Address, 5);
    b.register("anc", RegisterRole::Ancilla, 4);
    b.push(Gate::toffoli(0, 1, 2));
    b.push(Gate::Mpmct { controls: wires(4), polarity: vec![false, true, true, false], target: Qubit(4) });
    let lowered = lower_to_clifford_t(&b.finish().unwrap(), ToffoliVariant::Td1).unwrap();
    assert!(lowered.gates().iter().all(|g| !matches!(g, Gate::Toffoli { .. } | Gate::Mpmct { .. })));
}

#[test]
fn lowering_reports_a_short_pool() {
    let mut b = CircuitBuilder::new();
    b.register("addr", RegisterRole::Address, 5);
    b.register("anc", RegisterRole::Ancilla, 2);
    b.push(Gate::Mpmct { controls: wires(4), polarity: vec![true; 4], target: Qubit(4) });
    assert!(lower_to_clifford_t(&b.finish().unwrap(), ToffoliVariant::Td1).is_err());
}
