use std::collections::BTreeSet;

use qram_core::families::*;
use qram_core::ir::{gate_tally, Gate, GateKind};
use qram_core::verify::check_query_semantics;

fn six(c: qram_core::ResourceCounts) -> [u64; 6] {
    [c.logical_qubits, c.depth, c.t_count, c.t_depth, c.h_count, c.cnot_count]
}

fn cfg(f: Family, n: u32, q: Option<u32>, k: Option<u32>) -> FamilyConfig {
    let mut c = FamilyConfig::new(f, n);
    c.q = q;
    c.k = k;
    c
}

#[test]
fn random_memory_rejects_full_memories() {
    assert!(random_memory(3, 3, 5).is_err());
}

#[test]
fn random_memory_is_seeded() {
    let a = random_memory(3, 2, 42).unwrap();
    assert_eq!(a, random_memory(3, 2, 42).unwrap());
    assert_eq!(a.len(), 4);
    assert!(a.ones().iter().all(|&x| x < 8));
}

#[test]
fn memory_file_round_trip_and_errors() {
    let m = MemorySpec::parse("n=3\n011\n100\n").unwrap();
    assert_eq!(m.ones().iter().copied().collect::<Vec<_>>(), vec![3, 4]);
    assert_eq!(MemorySpec::parse(&m.to_text()).unwrap(), m);
    let e = MemorySpec::parse("n=3\n011\n10\n").unwrap_err();
    assert!(matches!(e, FamilyError::MemoryParse { line: 3, .. }), "{e}");
    assert!(matches!(MemorySpec::parse("n=3\n011\n100\n111\n"), Err(FamilyError::NotPowerOfTwo(3))));
}

#[test]
fn worst_case_memory_loads_one_prefix() {
    let (n, q, k) = (9, 4, 4);
    let m = worst_case_memory(n, q, k, 3).unwrap();
    assert_eq!(m.len(), 16);
    let mut per: std::collections::BTreeMap<u64, usize> = Default::default();
    for a in m.ones() {
        *per.entry(a >> (n - k)).or_default() += 1;
    }
    assert_eq!(*per.values().max().unwrap(), (1 << (q - 1)) + 1);
}

#[test]
fn balanced_memory_uses_every_prefix() {
    let m = balanced_memory(9, 6, 4, 1).unwrap();
    let prefixes: BTreeSet<u64> = m.ones().iter().map(|a| a >> 5).collect();
    assert_eq!(prefixes.len(), 16);
    let m = balanced_memory(9, 3, 5, 1).unwrap();
    let prefixes: BTreeSet<u64> = m.ones().iter().map(|a| a >> 4).collect();
    assert_eq!(prefixes.len(), 8);
}

#[test]
fn bb_serial_toffoli_tally() {
    let c = build_circuit(&cfg(Family::BbSerial, 3, None, None), &random_memory(3, 1, 0).unwrap()).unwrap();
    assert_eq!(gate_tally(&c).get(GateKind::Toffoli), 3 * 8 - 4);
}

#[test]
fn large_depth_single_address() {
    let mem = MemorySpec::new(4, [0b1111]).unwrap();
    let c = build_circuit(&cfg(Family::LargeDepth, 4, Some(0), None), &mem).unwrap();
    let mpmcts: Vec<&Gate> = c.gates().iter().filter(|g| matches!(g, Gate::Mpmct { .. })).collect();
    assert_eq!(mpmcts.len(), 1);
    let Gate::Mpmct { polarity, .. } = mpmcts[0] else { unreachable!() };
    assert!(polarity.iter().all(|&p| p));
}

#[test]
fn large_width_copy_and_parity_cnots() {
    let (n, q) = (4u64, 2u32);
    let c = build_circuit(&cfg(Family::LargeWidth, 4, Some(q), None), &random_memory(4, q, 9).unwrap()).unwrap();
    assert_eq!(gate_tally(&c).get(GateKind::Cnot), 2 * (n + 1) * ((1 << q) - 1) + 2);
}

#[test]
fn builder_rejects_bad_configs() {
    let mem = random_memory(9, 5, 0).unwrap();
    assert!(matches!(
        build_circuit(&cfg(Family::Hybrid, 9, Some(5), None), &mem),
        Err(FamilyError::Missing { param: "k", .. })
    ));
    assert!(matches!(
        build_circuit(&cfg(Family::SelectSwapClean, 9, None, None).with_lambda(2), &mem),
        Err(FamilyError::NoBuilder(_))
    ));
    assert!(build_circuit(&cfg(Family::Hybrid, 9, Some(5), Some(7)), &mem).is_err());
}

#[test]
fn closed_form_spot_values() {
    let rows: [(FamilyConfig, [u64; 6]); 5] = [
        (cfg(Family::BbSerial, 3, None, None), [24, 148, 140, 20, 40, 336]),
        (cfg(Family::BbParallel, 15, None, None), [262144, 235, 688100, 29, 2 * (3 * 32768 - 4), 1769376]),
        (cfg(Family::LargeDepth, 4, Some(2), None), [8, 208, 112, 32, 40, 224]),
        (cfg(Family::LargeWidth, 4, Some(2), None), [33, 60, 112, 8, 40, 256]),
        (cfg(Family::Hybrid, 9, Some(5), Some(4)), [31, 5120, 2560, 768, 896, 5120]),
    ];
    for (c, want) in rows {
        assert_eq!(six(formula_counts(&c).unwrap()), want, "{}", c.family);
    }
}

#[test]
fn mpmct_families_need_four_bits() {
    let e = formula_counts(&cfg(Family::LargeDepth, 3, Some(1), None)).unwrap_err();
    assert!(e.to_string().contains("n ≥ 4 required"), "{e}");
}

#[test]
fn hybrid_closed_form_needs_k_below_q() {
    let e = formula_counts(&cfg(Family::Hybrid, 9, Some(4), Some(4))).unwrap_err();
    assert!(matches!(e, FamilyError::NoClosedForm { .. }));
    assert!(e.to_string().contains("build_circuit"));
    for f in [Family::HybridT1Parallel, Family::HybridT2Parallel, Family::HybridParallel] {
        assert!(matches!(formula_counts(&cfg(f, 9, Some(5), Some(4))), Err(FamilyError::BuilderOnly(_))));
    }
}

#[test]
fn selectswap_bound_rows() {
    let c = selectswap_bounds(1024, 1, 1, SelectSwapMode::Clean).unwrap();
    assert_eq!((c.logical_qubits, c.t_count), (21, 4104));
    let c = selectswap_bounds(1024, 1, 1, SelectSwapMode::Dirty).unwrap();
    assert_eq!((c.logical_qubits, c.t_count), (22, 8224));
    let c = selectswap_bounds(16, 1, 16, SelectSwapMode::Clean).unwrap();
    assert_eq!((c.logical_qubits, c.t_count), (24, 132));
    assert!(selectswap_bounds(16, 1, 17, SelectSwapMode::Clean).is_err());
}

#[test]
fn selectswap_counts_are_flagged() {
    let fc = family_counts(&cfg(Family::SelectSwapClean, 10, None, None).with_lambda(1).with_b(1)).unwrap();
    assert_eq!(fc.provenance, Provenance::AsymptoticModel);
    assert_eq!(fc.provenance.to_string(), "asymptotic model");
    assert!(!fc.is_complete());
    assert!(fc.unmodeled.contains(&Metric::Depth));
    assert_eq!((fc.counts.logical_qubits, fc.counts.t_count), (21, 4104));
}

#[test]
fn provenance_follows_the_family() {
    let closed = family_counts(&cfg(Family::LargeWidth, 6, Some(3), None)).unwrap();
    assert_eq!(closed.provenance, Provenance::ClosedForm);
    let built = family_counts(&cfg(Family::HybridParallel, 9, Some(5), Some(4))).unwrap();
    assert_eq!(built.provenance, Provenance::BuilderDerived);
    let built = family_counts(&cfg(Family::Hybrid, 9, Some(4), Some(5))).unwrap();
    assert_eq!(built.provenance, Provenance::BuilderDerived);
}

#[test]
fn structural_counts_match_small_builds() {
    for f in [Family::Hybrid, Family::HybridT1Parallel, Family::HybridT2Parallel, Family::HybridParallel] {
        for (n, q, k) in [(8, 3, 4), (8, 6, 5), (9, 7, 4)] {
            let c = cfg(f, n, Some(q), Some(k));
            let s = structural_counts(&c).unwrap();
            let b = builder_counts(&c, &balanced_memory(n, q, k, 4).unwrap()).unwrap();
            assert_eq!(
                (b.logical_qubits, b.t_count, b.h_count, b.cnot_count),
                (s.logical_qubits, s.t_count, s.h_count, s.cnot_count),
                "{f} {n} {q} {k}"
            );
            assert!(b.depth <= s.depth, "{f} {n} {q} {k}");
        }
    }
}

/// T-count bound evaluated directly for every λ.
fn lambda_oracle(cells: u64, b: u64) -> (u64, u64) {
    (1..=cells).map(|l| (l, 4 * cells.div_ceil(l) + 8 * b * l)).min_by_key(|&(l, v)| (v, l)).unwrap()
}

#[test]
fn lambda_search() {
    assert_eq!(optimal_lambda(1024, 1, SelectSwapMode::Clean).unwrap(), lambda_oracle(1024, 1));
    assert_eq!(optimal_lambda(1024, 1, SelectSwapMode::Clean).unwrap(), (21, 364));
    assert_eq!(optimal_lambda(1, 1, SelectSwapMode::Clean).unwrap().0, 1);
    let (l, _) = optimal_lambda(1024, 1, SelectSwapMode::Clean).unwrap();
    let cont = (1024f64 / 2.0).sqrt();
    assert!(l as f64 >= cont / 2.0 && l as f64 <= cont * 2.0);
    for (cells, b) in [(64, 1), (256, 3), (1000, 2)] {
        assert_eq!(optimal_lambda(cells, b, SelectSwapMode::Clean).unwrap(), lambda_oracle(cells, b));
    }
}

#[test]
fn split_search() {
    let k = optimal_k(36, 35).unwrap();
    assert!((30..=32).contains(&k), "k* = {k}");
    let approx = 36.0 - 36f64.log2();
    assert!((k as f64 - approx).abs() <= 1.5);
    // (8, 5): compare both candidates on built circuits
    let cost = |k| {
        let c = cfg(Family::HybridParallel, 8, Some(5), Some(k));
        let b = builder_counts(&c, &balanced_memory(8, 5, k, 0).unwrap()).unwrap();
        b.logical_qubits * b.t_depth
    };
    let best = if cost(4) <= cost(5) { 4 } else { 5 };
    assert_eq!(optimal_k(8, 5).unwrap(), best);
    assert!(optimal_k(6, 5).is_err());
}

/// Rough costs compared directly for every q.
fn crossover_oracle(n: u32) -> i64 {
    let bb = (8.0 * 2f64.powi(n as i32) * (2 * n - 1) as f64).log2();
    (0..n)
        .filter(|&q| ((2 * n) as f64 * 2f64.powi(q as i32 + 2) * (n - 2) as f64).log2() < bb)
        .max()
        .map_or(-1, i64::from)
}

#[test]
fn crossover() {
    assert_eq!(find_crossover_q(36), 31);
    assert_eq!(find_crossover_q(15), 12);
    for n in [15, 24, 36] {
        let q = find_crossover_q(n);
        assert_eq!(q, crossover_oracle(n));
        assert!((q as f64 - (n as f64 - (n as f64).log2())).abs() <= 1.0, "n={n} q={q}");
    }
}

#[test]
fn complement_build_matches_direct_semantics() {
    for seed in 0..5 {
        let mem = random_memory(5, 4, seed).unwrap();
        let mut c = cfg(Family::LargeDepth, 5, Some(4), None);
        c.complement = true;
        assert!(check_query_semantics(&c, &mem).unwrap().passed(), "seed {seed}");
    }
    let full = MemorySpec::new(3, 0..8).unwrap();
    let mut c = cfg(Family::LargeWidth, 3, Some(3), None);
    c.complement = true;
    c.relaxed = true;
    let r = check_query_semantics(&c, &full).unwrap();
    assert!(r.passed());
    let mut bb = cfg(Family::BbSerial, 3, None, None);
    bb.complement = true;
    assert!(build_circuit(&bb, &full).is_err());
}

#[test]
fn family_names_round_trip() {
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
    }
    assert!("bucket".parse::<Family>().is_err());
}
