use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qram_core::families::{
    balanced_memory, build_circuit, builder_counts, family_counts, random_memory, worst_case_memory, FamilyCounts,
    Provenance, SelectSwapMode, optimal_lambda,
};
use qram_core::ftcost::{estimate_physical, onoff_decision, SurfaceCodeParams};
use qram_core::ir::write_circuit;
use qram_core::verify::{run_suite, SuiteOptions};
use qram_core::{lower_to_clifford_t, Family, FamilyConfig, MemorySpec, ToffoliVariant};

use crate::args::*;
use crate::row::{write_csv, Row};
use crate::{plot, sweep, EXIT_OK, EXIT_VERIFY};

pub fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Count(a) => count(a, out),
        Cmd::Generate(a) => generate(a, out),
        Cmd::Estimate(a) => estimate(a, out),
        Cmd::Sweep(a) => sweep::run(a, out, err),
        Cmd::Plot(a) => plot::run(a, out),
        Cmd::Verify(a) => verify(a, out),
    }
}

pub fn variant(s: &str) -> Result<ToffoliVariant> {
    Ok(s.parse::<ToffoliVariant>()?)
}

pub fn family_config(a: &FamilyArgs) -> Result<FamilyConfig> {
    let family: Family = a.family.parse()?;
    let mut c = FamilyConfig::new(family, a.n);
    c.q = a.q;
    c.k = a.k;
    c.lambda = a.lambda;
    c.b = a.b;
    c.toffoli_variant = variant(&a.variant)?;
    c.relaxed = a.relaxed;
    if let (Some(mode), None) = (SelectSwapMode::of(family), c.lambda) {
        c.lambda = Some(default_lambda(a.n, c.b.unwrap_or(1), mode)?);
    }
    c.validate()?;
    Ok(c)
}

/// The T-count optimum over every λ.
pub fn default_lambda(n: u32, b: u64, mode: SelectSwapMode) -> Result<u64> {
    let cells = 1u64.checked_shl(n).filter(|_| n < 63).context("address width too large")?;
    Ok(optimal_lambda(cells, b, mode)?.0)
}

pub fn surface_params(a: &SurfaceArgs) -> SurfaceCodeParams {
    SurfaceCodeParams {
        p_in: a.pin,
        p_g: a.pg,
        t_c: a.cycle_ns * 1e-9,
        epsilon: a.eps,
        layer_cycles: a.layer_cycles,
        c_i: a.ci,
        c_t: a.ct,
    }
}

/// The memory named by `--addresses`, or a seeded one. Fills in `q` from the
/// memory when the config leaves it open.
pub fn memory_for(config: &mut FamilyConfig, a: &MemoryArgs) -> Result<MemorySpec> {
    let n = config.n;
    if let Some(path) = &a.addresses {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mem = MemorySpec::parse(&text).with_context(|| format!("in {}", path.display()))?;
        if mem.n() != n {
            bail!("{} holds {}-bit addresses but -n is {n}", path.display(), mem.n());
        }
        match (config.q, mem.q()) {
            (Some(q), Some(mq)) if q != mq => bail!("-q {q} disagrees with the {} ones in the memory file", mem.len()),
            (None, mq) => config.q = mq,
            _ => {}
        }
        return Ok(mem);
    }
    let q = match config.q {
        Some(q) => q,
        None if config.family.needs_q() => bail!("{} needs -q or --addresses", config.family),
        None => n - 1,
    };
    let mem = match (a.memory, config.k) {
        (MemoryMode::Balanced, Some(k)) => balanced_memory(n, q, k, a.seed)?,
        (MemoryMode::Worst, Some(k)) => worst_case_memory(n, q, k, a.seed)?,
        (MemoryMode::Random, _) => random_memory(n, q, a.seed)?,
        (_, None) => bail!("--memory balanced and worst need -k"),
    };
    Ok(mem)
}

/// Counts plus a label saying where they came from.
pub fn counts_for(config: &mut FamilyConfig, source: Source, mem: &MemoryArgs) -> Result<(FamilyCounts, &'static str)> {
    match source {
        Source::Formula => {
            let fc = family_counts(config)?;
            let label = fc.provenance.as_str();
            Ok((fc, label))
        }
        Source::Builder => {
            let m = memory_for(config, mem)?;
            let counts = builder_counts(config, &m)?;
            let fc = FamilyCounts { counts, provenance: Provenance::BuilderDerived, unmodeled: Vec::new() };
            Ok((fc, "built circuit"))
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn count(a: CountArgs, out: &mut dyn Write) -> Result<i32> {
    let mut config = family_config(&a.family)?;
    let (fc, label) = counts_for(&mut config, a.source, &a.memory)?;
    let row = Row::new(&config, &fc);
    if a.csv {
        write_csv(out, &[row])?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "family      {}", config.family)?;
    writeln!(out, "n           {}", config.n)?;
    for (name, v) in [("q", config.q.map(u64::from)), ("k", config.k.map(u64::from)), ("lambda", config.lambda)] {
        if v.is_some() {
            writeln!(out, "{name:<12}{}", opt(v))?;
        }
    }
    writeln!(out, "source      {label}")?;
    for (name, v) in [
        ("NQ", row.nq),
        ("D", row.d),
        ("Tc", row.tc),
        ("Td", row.td),
        ("Hc", row.hc),
        ("CNOTc", row.cnot),
    ] {
        writeln!(out, "{name:<12}{}", opt(v))?;
    }
    writeln!(out, "Tw          {}", opt(row.tw))?;
    if !fc.unmodeled.is_empty() {
        let names: Vec<&str> = fc.unmodeled.iter().map(|m| m.name()).collect();
        writeln!(out, "note        {} not covered by the asymptotic model", names.join(", "))?;
    }
    Ok(EXIT_OK)
}

fn write_to(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let mut config = family_config(&a.family)?;
    config.prepare_parity = a.prepare_parity;
    config.complement = a.complement;
    let mem = memory_for(&mut config, &a.memory)?;
    let mut circuit = build_circuit(&config, &mem)?;
    if a.lower {
        circuit = lower_to_clifford_t(&circuit, config.toffoli_variant)?;
    }
    write_to(a.out.as_deref(), out, &write_circuit(&circuit))?;
    Ok(EXIT_OK)
}

fn estimate(a: EstimateArgs, out: &mut dyn Write) -> Result<i32> {
    let mut config = family_config(&a.family)?;
    let (fc, label) = counts_for(&mut config, a.source, &a.memory)?;
    if !fc.is_complete() {
        bail!("{} counts are an asymptotic model without depth; no physical estimate", config.family);
    }
    let params = surface_params(&a.surface);
    let e = estimate_physical(&fc.counts, &params)?;
    let row = Row::new(&config, &fc).with_estimate(&e);
    if a.csv {
        write_csv(out, &[row])?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "family           {} (n = {}{})", config.family, config.n, match config.q {
        Some(q) => format!(", q = {q}"),
        None => String::new(),
    })?;
    writeln!(out, "counts           {label}")?;
    writeln!(out, "distance         {}", e.distance)?;
    let dists: Vec<String> = e.plan.rounds.iter().map(|r| r.distance.to_string()).collect();
    writeln!(out, "rounds           {} (distances {})", e.plan.rounds.len(), if dists.is_empty() { "-".into() } else { dists.join(", ") })?;
    writeln!(out, "factories        {}", e.factories)?;
    writeln!(out, "logical_total    {}", e.logical_qubits)?;
    writeln!(out, "physical_qubits  {} ({:.3e})", e.physical_qubits, e.physical_qubits as f64)?;
    writeln!(out, "cycles           {}", e.cycles)?;
    writeln!(out, "seconds          {:.6e}", e.seconds)?;
    writeln!(out, "cost             {:.4}", e.cost)?;
    writeln!(out, "rough_cost       {}", e.rough_cost.map_or("-".into(), |r| format!("{r:.4}")))?;
    if let Some(ca) = a.surface.ca {
        writeln!(out, "on/off           {}", onoff_decision(ca, params.c_i, params.c_t))?;
    }
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = SuiteOptions { max_n: a.max_n, seeds: a.seeds, inject_fault: a.inject_fault };
    let rows = run_suite(&opts)?;
    for r in &rows {
        writeln!(out, "{r}")?;
    }
    let failed = rows.iter().filter(|r| r.failed()).count();
    writeln!(out, "{} checks, {failed} failed", rows.len())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
}
