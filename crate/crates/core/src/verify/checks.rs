use std::fmt;

use num_complex::Complex64;

use super::classical::simulate_classical;
use super::state::{bits_to_index, simulate_state, StateVector, MAX_STATE_QUBITS};
use super::VerifyError;
use crate::decomp::{decompose_mpmct, decompose_toffoli, ToffoliVariant};
use crate::families::{
    balanced_memory, build_circuit, formula_counts, random_memory, structural_counts, Family, FamilyConfig,
    MemorySpec,
};
use crate::ir::{count_resources, Circuit, CircuitBuilder, Gate, Qubit, RegisterRole};
use crate::lower_to_clifford_t;

/// Exhaustive checks stop here; beyond it the address loop dominates.
const MAX_EXHAUSTIVE_BITS: u32 = 14;
const TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct QueryReport {
    pub n: u32,
    pub addresses_checked: u64,
    pub failures: u64,
    /// First few failing addresses with the reason.
    pub examples: Vec<String>,
    /// Entrywise error of the all-address superposition query, when small
    /// enough to simulate densely.
    pub superposition_deviation: Option<f64>,
}

impl QueryReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.superposition_deviation.is_none_or(|d| d < TOL)
    }
}

struct Layout {
    addr: Vec<Qubit>,
    out: Qubit,
    parity: Vec<Qubit>,
}

fn layout(circuit: &Circuit, n: u32) -> Result<Layout, VerifyError> {
    let addr = circuit.qubits_with_role(RegisterRole::Address);
    if addr.len() != n as usize {
        return Err(VerifyError::Invalid(format!("circuit has {} address qubits, expected {n}", addr.len())));
    }
    let out = match circuit.qubits_with_role(RegisterRole::Output)[..] {
        [q] => q,
        ref other => return Err(VerifyError::Invalid(format!("expected one output qubit, found {}", other.len()))),
    };
    Ok(Layout { addr, out, parity: circuit.qubits_with_role(RegisterRole::ParityRegister) })
}

/// Basis input for address `a`, MSB on the first address qubit.
fn address_input(lay: &Layout, m: usize, a: u64) -> Vec<bool> {
    let n = lay.addr.len();
    let mut bits = vec![false; m];
    for (i, q) in lay.addr.iter().enumerate() {
        bits[q.index()] = a >> (n - 1 - i) & 1 == 1;
    }
    bits
}

fn diagnose(lay: &Layout, input: &[bool], output: &[bool], expect: bool) -> Option<String> {
    if output[lay.out.index()] != expect {
        return Some(format!("output {} expected {}", output[lay.out.index()] as u8, expect as u8));
    }
    if lay.parity.iter().filter(|q| output[q.index()]).count() % 2 == 1 {
        return Some("parity register left odd".into());
    }
    let dirty: Vec<usize> = (0..output.len())
        .filter(|&i| i != lay.out.index() && !lay.parity.iter().any(|q| q.index() == i))
        .filter(|&i| output[i] != input[i])
        .collect();
    (!dirty.is_empty()).then(|| format!("qubits {dirty:?} not restored"))
}

/// Exhaustive classical query check of an already built circuit.
pub fn check_circuit_semantics(circuit: &Circuit, mem: &MemorySpec) -> Result<QueryReport, VerifyError> {
    let n = mem.n();
    if n > MAX_EXHAUSTIVE_BITS {
        return Err(VerifyError::Invalid(format!("exhaustive check needs n ≤ {MAX_EXHAUSTIVE_BITS}, got {n}")));
    }
    let lay = layout(circuit, n)?;
    let m = circuit.num_qubits() as usize;
    let mut report =
        QueryReport { n, addresses_checked: 0, failures: 0, examples: Vec::new(), superposition_deviation: None };
    let mut outputs = Vec::with_capacity(1 << n);
    for a in 0..1u64 << n {
        let input = address_input(&lay, m, a);
        let output = simulate_classical(circuit, &input)?;
        report.addresses_checked += 1;
        if let Some(why) = diagnose(&lay, &input, &output, mem.contains(a)) {
            report.failures += 1;
            if report.examples.len() < 4 {
                report.examples.push(format!("{}: {why}", crate::families::format_address(a, n)));
            }
        }
        outputs.push(output);
    }

    if n <= 4 && circuit.num_qubits() <= MAX_STATE_QUBITS {
        let m = circuit.num_qubits();
        let inputs: Vec<usize> = (0..1u64 << n).map(|a| bits_to_index(&address_input(&lay, m as usize, a))).collect();
        let expect: Vec<usize> = outputs.iter().map(|o| bits_to_index(o)).collect();
        let got = simulate_state(circuit, &StateVector::uniform(m, &inputs)?)?;
        report.superposition_deviation = Some(got.max_deviation(&StateVector::uniform(m, &expect)?));
    }
    Ok(report)
}

/// Builds the unprepared circuit and checks every address against the memory.
pub fn check_query_semantics(config: &FamilyConfig, mem: &MemorySpec) -> Result<QueryReport, VerifyError> {
    let mut config = config.clone();
    config.prepare_parity = false;
    check_circuit_semantics(&build_circuit(&config, mem)?, mem)
}

/// Dense simulation of a query on an equal superposition of `addresses`,
/// returning the entrywise error against the ideal final state. With a
/// prepared parity register the ideal leaves it in the even superposition.
pub fn check_superposition_query(
    config: &FamilyConfig,
    mem: &MemorySpec,
    addresses: &[u64],
) -> Result<f64, VerifyError> {
    let circuit = build_circuit(config, mem)?;
    let lay = layout(&circuit, mem.n())?;
    let m = circuit.num_qubits();
    if m > MAX_STATE_QUBITS {
        return Err(VerifyError::TooLarge(m));
    }
    let inputs: Vec<usize> = addresses.iter().map(|&a| bits_to_index(&address_input(&lay, m as usize, a))).collect();
    let got = simulate_state(&circuit, &StateVector::uniform(m, &inputs)?)?;

    let prepared = config.prepare_parity && lay.parity.len() > 1;
    let evens: Vec<usize> = if prepared {
        (0..1usize << lay.parity.len())
            .filter(|r| r.count_ones() % 2 == 0)
            .map(|r| {
                lay.parity.iter().enumerate().filter(|(j, _)| r >> j & 1 == 1).fold(0, |acc, (_, q)| acc | 1 << q.index())
            })
            .collect()
    } else {
        vec![0]
    };
    let mut want = vec![Complex64::new(0.0, 0.0); 1 << m];
    let w = 1.0 / ((addresses.len() * evens.len()) as f64).sqrt();
    for (&a, &base) in addresses.iter().zip(&inputs) {
        let base = if mem.contains(a) { base | 1 << lay.out.index() } else { base };
        for e in &evens {
            want[base | e] += w;
        }
    }
    if !prepared {
        // without preparation the parity register is a classical even string
        let expect: Vec<usize> = addresses
            .iter()
            .map(|&a| simulate_classical(&circuit, &address_input(&lay, m as usize, a)).map(|o| bits_to_index(&o)))
            .collect::<Result<_, _>>()?;
        return Ok(got.max_deviation(&StateVector::uniform(m, &expect)?));
    }
    Ok(got.max_deviation(&StateVector::from_amplitudes(want)?))
}

/// Replaces the first controlled gate aimed at the output or parity register,
/// else the first controlled gate, with a copy whose last control has the
/// opposite polarity.
pub fn inject_fault(circuit: &Circuit) -> Option<Circuit> {
    let mut targets = circuit.qubits_with_role(RegisterRole::Output);
    targets.extend(circuit.qubits_with_role(RegisterRole::ParityRegister));
    let mut gates = circuit.gates().to_vec();
    let controlled = |g: &Gate| matches!(g, Gate::Toffoli { .. } | Gate::Mpmct { .. });
    let i = gates
        .iter()
        .position(|g| controlled(g) && g.qubits().last().is_some_and(|t| targets.contains(&t)))
        .or_else(|| gates.iter().position(controlled))?;
    gates[i] = match &gates[i] {
        Gate::Toffoli { controls, target } => {
            Gate::Mpmct { controls: controls.to_vec(), polarity: vec![true, false], target: *target }
        }
        Gate::Mpmct { controls, polarity, target } => {
            let mut polarity = polarity.clone();
            let last = polarity.len() - 1;
            polarity[last] = !polarity[last];
            Gate::Mpmct { controls: controls.clone(), polarity, target: *target }
        }
        _ => unreachable!(),
    };
    circuit.with_gates(gates).ok()
}

/// A primitive whose Clifford+T lowering is compared to its ideal action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateSpec {
    Toffoli(ToffoliVariant),
    Mpmct { polarity: Vec<bool> },
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateSpec::Toffoli(v) => write!(f, "toffoli {v}"),
            GateSpec::Mpmct { polarity } => {
                let p: String = polarity.iter().map(|&b| if b { '+' } else { '-' }).collect();
                write!(f, "mpmct {p}")
            }
        }
    }
}

/// Largest entrywise error of the lowered gate against the ideal one on the
/// clean-ancilla subspace, after removing a global phase.
///
/// Wires: controls `0..c`, target `c`, then ancillas.
pub fn check_decomposition_unitary(spec: &GateSpec) -> Result<f64, VerifyError> {
    let (c, anc, polarity) = match spec {
        GateSpec::Toffoli(v) => (2, v.ancillas_required(), vec![true, true]),
        GateSpec::Mpmct { polarity } => (polarity.len(), polarity.len().saturating_sub(1), polarity.clone()),
    };
    let m = (c + 1 + anc) as u32;
    if m > 13 {
        return Err(VerifyError::Invalid(format!("unitary check needs at most 13 qubits, got {m}")));
    }
    let controls: Vec<Qubit> = (0..c as u32).map(Qubit).collect();
    let target = Qubit(c as u32);
    let ancillas: Vec<Qubit> = (c as u32 + 1..m).map(Qubit).collect();
    let gates = match spec {
        GateSpec::Toffoli(v) => decompose_toffoli(*v, [controls[0], controls[1]], target, &ancillas)?,
        GateSpec::Mpmct { polarity } => decompose_mpmct(&controls, polarity, target, &ancillas)?,
    };
    let mut b = CircuitBuilder::new();
    b.register("ctl", RegisterRole::Address, c);
    b.register("tgt", RegisterRole::Output, 1);
    if anc > 0 {
        b.register("anc", RegisterRole::Ancilla, anc);
    }
    b.extend(gates);
    let circuit = b.finish()?;

    let want_bits: usize = polarity.iter().enumerate().filter(|(_, &p)| p).fold(0, |acc, (i, _)| acc | 1 << i);
    let mask = (1usize << c) - 1;
    let mut phase: Option<Complex64> = None;
    let mut worst: f64 = 0.0;
    for x in 0..1usize << (c + 1) {
        let y = if x & mask == want_bits { x ^ 1 << c } else { x };
        let out = simulate_state(&circuit, &StateVector::basis(m, x)?)?;
        let ph = *phase.get_or_insert_with(|| {
            let a = out.amplitudes()[y];
            if a.norm() > 0.0 {
                a / a.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        });
        for (j, a) in out.amplitudes().iter().enumerate() {
            let ideal = if j == y { ph } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((a - ideal).norm());
        }
    }
    Ok(worst)
}

/// How a builder value must relate to its reference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rule {
    Equal,
    AtMost,
    /// Reference ± the given absolute slack.
    Within(u64),
    /// Builder within `[lo, hi]` times the reference.
    Ratio(f64, f64),
}

impl Rule {
    pub fn holds(self, reference: u64, builder: u64) -> bool {
        match self {
            Rule::Equal => builder == reference,
            Rule::AtMost => builder <= reference,
            Rule::Within(slack) => builder.abs_diff(reference) <= slack,
            Rule::Ratio(lo, hi) => {
                let (r, b) = (reference as f64, builder as f64);
                b >= lo * r && b <= hi * r
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Equal => f.write_str("=="),
            Rule::AtMost => f.write_str("<="),
            Rule::Within(s) => write!(f, "±{s}"),
            Rule::Ratio(lo, hi) => write!(f, "×[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricRow {
    pub metric: &'static str,
    pub reference: u64,
    pub builder: u64,
    pub rule: Rule,
    pub ok: bool,
}

fn row(metric: &'static str, reference: u64, builder: u64, rule: Rule) -> MetricRow {
    MetricRow { metric, reference, builder, rule, ok: rule.holds(reference, builder) }
}

/// Builds the config on a seeded memory, lowers it and compares each count
/// with the closed form, or with the layout counts for builder-only hybrids.
pub fn check_formula_vs_builder(config: &FamilyConfig, seed: u64) -> Result<Vec<MetricRow>, VerifyError> {
    let f = config.family;
    let n = config.n;
    let closed = match f {
        Family::Hybrid => config.k_or_err()? < config.q_or_err()?,
        _ => !f.is_hybrid(),
    };
    let reference = if closed { formula_counts(config)? } else { structural_counts(config)? };
    let mem = if f.is_bucket_brigade() {
        random_memory(n, n / 2, seed)?
    } else if closed {
        random_memory(n, config.q_or_err()?, seed)?
    } else {
        // builder-only layout counts assume every top prefix is used
        balanced_memory(n, config.q_or_err()?, config.k_or_err()?, seed)?
    };
    let built = build_circuit(config, &mem)?;
    let lowered = lower_to_clifford_t(&built, config.toffoli_variant)?;
    let got = count_resources(&lowered)?;
    let r = reference;

    let mut rows = Vec::new();
    if f.is_bucket_brigade() {
        let tof = built.gates().iter().filter(|g| matches!(g, Gate::Toffoli { .. })).count() as u64;
        let bare: u64 = built
            .gates()
            .iter()
            .map(|g| match g {
                Gate::Cnot { .. } => 1,
                Gate::Swap(..) => 3,
                _ => 0,
            })
            .sum();
        let cells = 1u64 << n;
        rows.push(row("Toffoli", 3 * cells - 4, tof, Rule::Equal));
        let nq_rule = if f == Family::BbParallel { Rule::Ratio(0.9, 1.1) } else { Rule::Equal };
        rows.push(row("NQ", r.logical_qubits, got.logical_qubits, nq_rule));
        rows.push(row("D", r.depth, got.depth, Rule::AtMost));
        rows.push(row("Tc", r.t_count, got.t_count, Rule::Equal));
        rows.push(row("Td", r.t_depth, got.t_depth, Rule::AtMost));
        rows.push(row("Hc", r.h_count, got.h_count, Rule::Equal));
        rows.push(row("bare CNOT", r.cnot_count.saturating_sub(16 * tof), bare, Rule::Within(8)));
        return Ok(rows);
    }
    rows.push(row("NQ", r.logical_qubits, got.logical_qubits, Rule::Equal));
    rows.push(row("D", r.depth, got.depth, Rule::AtMost));
    rows.push(row("Tc", r.t_count, got.t_count, Rule::Equal));
    // lockstep of parallel fragments is not always reachable at minimum depth
    let td_rule = if matches!(f, Family::HybridParallel | Family::HybridT1Parallel | Family::HybridT2Parallel) {
        Rule::Ratio(0.0, 1.5)
    } else {
        Rule::AtMost
    };
    rows.push(row("Td", r.t_depth, got.t_depth, td_rule));
    rows.push(row("Hc", r.h_count, got.h_count, Rule::Equal));
    rows.push(row("CNOTc", r.cnot_count, got.cnot_count, Rule::Equal));
    Ok(rows)
}
