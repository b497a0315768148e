//! Explicit circuit builders. All circuits are emitted before lowering, with
//! Toffoli and MPMCT gates kept opaque.

use std::collections::BTreeMap;

use super::{Family, FamilyConfig, FamilyError, MemorySpec};
use crate::ir::{Circuit, CircuitBuilder, Gate, Qubit, Register, RegisterRole};

pub fn build_circuit(config: &FamilyConfig, mem: &MemorySpec) -> Result<Circuit, FamilyError> {
    config.validate()?;
    if mem.n() != config.n {
        return Err(FamilyError::Invalid(format!(
            "memory has {} address bits but the config asks for {}",
            mem.n(),
            config.n
        )));
    }
    if !config.family.has_builder() {
        return Err(FamilyError::NoBuilder(config.family));
    }
    if config.family.uses_mpmct() && config.n < 2 {
        return Err(FamilyError::TooSmall { family: config.family, n: config.n });
    }
    if !config.complement {
        return build_direct(config, mem);
    }
    if config.family.is_bucket_brigade() {
        return Err(FamilyError::Invalid("complement builds apply only to the implicit families".into()));
    }
    let circuit = match mem.complement() {
        Some(zeros) => build_direct(config, &zeros)?,
        None => {
            // every cell stores 1
            let mut b = CircuitBuilder::new();
            b.register("addr", RegisterRole::Address, config.n as usize);
            b.register("out", RegisterRole::Output, 1);
            b.finish()?
        }
    };
    let out = circuit.qubits_with_role(RegisterRole::Output)[0];
    let mut gates = circuit.gates().to_vec();
    gates.push(Gate::X(out));
    Ok(circuit.with_gates(gates)?)
}

fn build_direct(config: &FamilyConfig, mem: &MemorySpec) -> Result<Circuit, FamilyError> {
    match config.family {
        Family::BbSerial => Ok(bucket_brigade(mem, false)?),
        Family::BbParallel => Ok(bucket_brigade(mem, true)?),
        Family::LargeDepth => Ok(large_depth(mem)?),
        Family::LargeWidth => Ok(large_width(mem, config.prepare_parity)?),
        Family::Hybrid => hybrid(config, mem, false, false),
        Family::HybridT1Parallel => hybrid(config, mem, true, false),
        Family::HybridT2Parallel => hybrid(config, mem, false, true),
        Family::HybridParallel => hybrid(config, mem, true, true),
        Family::SelectSwapClean | Family::SelectSwapDirty => Err(FamilyError::NoBuilder(config.family)),
    }
}

fn mpmct(controls: Vec<Qubit>, polarity: Vec<bool>, target: Qubit) -> Gate {
    Gate::Mpmct { controls, polarity, target }
}

fn bits(value: u64, width: u32) -> Vec<bool> {
    (0..width).map(|i| value >> (width - 1 - i) & 1 == 1).collect()
}

/// Doubling cascade: block 0 is copied into every other block in
/// `⌈log₂ blocks⌉` rounds.
fn fanout(blocks: &[Vec<Qubit>]) -> Vec<Gate> {
    let mut gates = Vec::new();
    let mut have = 1;
    while have < blocks.len() {
        for i in 0..have {
            if let Some(dst) = blocks.get(i + have) {
                gates.extend(blocks[i].iter().zip(dst).map(|(&a, &b)| Gate::cnot(a, b)));
            }
        }
        have *= 2;
    }
    gates
}

/// XOR of the whole register into its first qubit, as a binary tree.
fn parity_into_first(r: &[Qubit]) -> Vec<Gate> {
    let mut gates = Vec::new();
    let mut s = 1;
    while s < r.len() {
        for j in (0..r.len()).step_by(2 * s) {
            if j + s < r.len() {
                gates.push(Gate::cnot(r[j + s], r[j]));
            }
        }
        s *= 2;
    }
    gates
}

fn blocks_of(first: &[Qubit], rest: &Register, width: usize, count: usize) -> Vec<Vec<Qubit>> {
    let mut blocks = vec![first.to_vec()];
    for i in 1..count {
        blocks.push((0..width).map(|b| rest.qubit((i - 1) * width + b)).collect());
    }
    blocks
}

/// Collapse the parity register onto the output and restore even parity.
fn read_parity(b: &mut CircuitBuilder, r: &[Qubit], out: Qubit) {
    let p = parity_into_first(r);
    b.extend(p.iter().cloned());
    b.push(Gate::cnot(r[0], out));
    b.push(Gate::cnot(out, r[0]));
    b.extend(p.into_iter().rev());
}

fn bucket_brigade(mem: &MemorySpec, parallel: bool) -> Result<Circuit, crate::ir::IrError> {
    let n = mem.n() as usize;
    let cells = 1usize << n;
    let mut b = CircuitBuilder::new();
    let addr = b.register("addr", RegisterRole::Address, n);
    let out = b.register("out", RegisterRole::Output, 1).qubit(0);
    let r = if parallel { b.register("par", RegisterRole::ParityRegister, cells) } else { empty() };
    let copies = if parallel { b.register("xcopy", RegisterRole::Copy, cells - n - 1) } else { empty() };
    let w = b.register("route", RegisterRole::Trigger, cells);
    b.register("anc", RegisterRole::Ancilla, if parallel { 4 * cells } else { 4 });
    let m = b.register("mem", RegisterRole::Memory, cells);

    let init: Vec<Gate> = mem.ones().iter().map(|&a| Gate::X(m.qubit(a as usize))).collect();
    b.extend(init.iter().cloned());

    // level i consumes x_{n-i+1}, so the final one-hot index equals the address
    let mut copy_gates = Vec::new();
    let mut level_bits: Vec<Vec<Qubit>> = Vec::new();
    let mut used = 0;
    for i in 1..=n {
        let x = addr.qubit(n - i);
        let h = 1usize << (i - 1);
        if parallel && h > 1 {
            let blocks: Vec<Vec<Qubit>> = std::iter::once(vec![x])
                .chain((0..h - 1).map(|j| vec![copies.qubit(used + j)]))
                .collect();
            used += h - 1;
            copy_gates.extend(fanout(&blocks));
            level_bits.push(blocks.into_iter().map(|v| v[0]).collect());
        } else {
            level_bits.push(vec![x; h]);
        }
    }

    let mut decode = vec![Gate::X(w.qubit(0)), Gate::cnot(addr.qubit(n - 1), w.qubit(1)), Gate::cnot(w.qubit(1), w.qubit(0))];
    for (lvl, xs) in level_bits.iter().enumerate().skip(1) {
        let h = 1usize << lvl;
        for j in 0..h {
            decode.push(Gate::toffoli(xs[j], w.qubit(j), w.qubit(j + h)));
        }
        for j in 0..h {
            decode.push(Gate::cnot(w.qubit(j + h), w.qubit(j)));
        }
    }

    b.extend(copy_gates.iter().cloned());
    b.extend(decode.iter().cloned());
    if parallel {
        for j in 0..cells {
            b.push(Gate::toffoli(w.qubit(j), m.qubit(j), r.qubit(j)));
        }
        let rq: Vec<Qubit> = r.qubits().collect();
        read_parity(&mut b, &rq, out);
    } else {
        for j in 0..cells {
            b.push(Gate::toffoli(w.qubit(j), m.qubit(j), out));
        }
    }
    b.extend(decode.into_iter().rev());
    b.extend(copy_gates.into_iter().rev());
    b.extend(init);
    b.finish()
}

fn empty() -> Register {
    Register { name: String::new(), role: RegisterRole::Copy, start: 0, len: 0 }
}

fn large_depth(mem: &MemorySpec) -> Result<Circuit, crate::ir::IrError> {
    let n = mem.n();
    let mut b = CircuitBuilder::new();
    let addr = b.register("addr", RegisterRole::Address, n as usize);
    let out = b.register("out", RegisterRole::Output, 1).qubit(0);
    b.register("anc", RegisterRole::Ancilla, n as usize - 1);
    for &a in mem.ones() {
        b.push(mpmct(addr.qubits().collect(), bits(a, n), out));
    }
    b.finish()
}

fn large_width(mem: &MemorySpec, prepare: bool) -> Result<Circuit, crate::ir::IrError> {
    let n = mem.n();
    let w = n as usize;
    let m = mem.len();
    let mut b = CircuitBuilder::new();
    let addr = b.register("addr", RegisterRole::Address, w);
    let out = b.register("out", RegisterRole::Output, 1).qubit(0);
    let r = b.register("par", RegisterRole::ParityRegister, m);
    let copies = b.register("xcopy", RegisterRole::Copy, w * (m - 1));
    b.register("anc", RegisterRole::Ancilla, (w - 1) * m);
    let rq: Vec<Qubit> = r.qubits().collect();

    if prepare && m > 1 {
        // uniform superposition over even-parity strings
        for &x in &rq[..m - 1] {
            b.push(Gate::H(x));
        }
        for &x in &rq[..m - 1] {
            b.push(Gate::cnot(x, rq[m - 1]));
        }
    }
    let addr_q: Vec<Qubit> = addr.qubits().collect();
    let blocks = blocks_of(&addr_q, &copies, w, m);
    let fan = fanout(&blocks);
    b.extend(fan.iter().cloned());
    for (j, &a) in mem.ones().iter().enumerate() {
        b.push(mpmct(blocks[j].clone(), bits(a, n), rq[j]));
    }
    read_parity(&mut b, &rq, out);
    b.extend(fan.into_iter().rev());
    b.finish()
}

/// Two-tier circuit. The top tier matches the first `k` address bits into
/// trigger qubits, the bottom tier matches the remaining bits under the
/// trigger for each stored address.
fn hybrid(
    config: &FamilyConfig,
    mem: &MemorySpec,
    top_parallel: bool,
    bottom_parallel: bool,
) -> Result<Circuit, FamilyError> {
    let n = mem.n();
    let k = config.k_or_err()?;
    let s = n - k;
    let m = mem.len();
    let ones: Vec<u64> = mem.ones().iter().copied().collect();

    // every prefix is matched while the memory has more ones than prefixes,
    // otherwise only the prefixes that occur
    let all_prefixes = (1usize << k) < m;
    let top: Vec<u64> = if all_prefixes {
        (0..1u64 << k).collect()
    } else {
        let mut p: Vec<u64> = ones.iter().map(|a| a >> s).collect();
        p.dedup();
        p
    };
    let slot: BTreeMap<u64, usize> = top.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let tsize = (1usize << k).min(m);

    let (kw, sw) = (k as usize, s as usize);
    let anc_top = if top_parallel { (kw - 1) * tsize } else { kw - 1 };
    let anc_bottom = if bottom_parallel { sw * m } else { sw };

    let mut b = CircuitBuilder::new();
    let addr = b.register("addr", RegisterRole::Address, n as usize);
    let out = b.register("out", RegisterRole::Output, 1).qubit(0);
    let r = if bottom_parallel { b.register("par", RegisterRole::ParityRegister, m) } else { empty() };
    let pcopy = if top_parallel { b.register("pcopy", RegisterRole::Copy, kw * (tsize - 1)) } else { empty() };
    let scopy = if bottom_parallel { b.register("scopy", RegisterRole::Copy, sw * (m - 1)) } else { empty() };
    let t = b.register("tier", RegisterRole::Trigger, tsize);
    let cc = if bottom_parallel { b.register("tcopy", RegisterRole::Copy, m) } else { empty() };
    b.register("anc", RegisterRole::Ancilla, anc_top.max(anc_bottom));

    let addr_q: Vec<Qubit> = addr.qubits().collect();
    let (prefix_q, suffix_q) = addr_q.split_at(kw);
    let pblocks = if top_parallel { blocks_of(prefix_q, &pcopy, kw, tsize) } else { vec![prefix_q.to_vec()] };
    let sblocks = if bottom_parallel { blocks_of(suffix_q, &scopy, sw, m) } else { vec![suffix_q.to_vec()] };
    let pfan = fanout(&pblocks);
    let sfan = fanout(&sblocks);

    let tier: Vec<Gate> = top
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let ctl = if top_parallel { pblocks[i].clone() } else { prefix_q.to_vec() };
            mpmct(ctl, bits(p, k), t.qubit(i))
        })
        .collect();

    b.extend(pfan.iter().cloned());
    b.extend(sfan.iter().cloned());
    b.extend(tier.iter().cloned());

    let suffix_mask = (1u64 << s) - 1;
    if bottom_parallel {
        // one copy of the trigger per bottom gate, fanned out per prefix
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (j, &a) in ones.iter().enumerate() {
            groups.entry(slot[&(a >> s)]).or_default().push(j);
        }
        let mut copy = Vec::new();
        for (&ti, members) in &groups {
            copy.push(Gate::cnot(t.qubit(ti), cc.qubit(members[0])));
        }
        let mut have = 1;
        while groups.values().any(|g| g.len() > have) {
            for g in groups.values() {
                for i in 0..have {
                    if let Some(&dst) = g.get(i + have) {
                        copy.push(Gate::cnot(cc.qubit(g[i]), cc.qubit(dst)));
                    }
                }
            }
            have *= 2;
        }
        b.extend(copy.iter().cloned());
        for (j, &a) in ones.iter().enumerate() {
            let mut ctl = sblocks[j].clone();
            ctl.push(cc.qubit(j));
            let mut pol = bits(a & suffix_mask, s);
            pol.push(true);
            b.push(mpmct(ctl, pol, r.qubit(j)));
        }
        let rq: Vec<Qubit> = r.qubits().collect();
        read_parity(&mut b, &rq, out);
        b.extend(copy.into_iter().rev());
    } else {
        for &a in &ones {
            let mut ctl = suffix_q.to_vec();
            ctl.push(t.qubit(slot[&(a >> s)]));
            let mut pol = bits(a & suffix_mask, s);
            pol.push(true);
            b.push(mpmct(ctl, pol, out));
        }
    }
    b.extend(tier.into_iter().rev());
    b.extend(sfan.into_iter().rev());
    b.extend(pfan.into_iter().rev());
    Ok(b.finish()?)
}
