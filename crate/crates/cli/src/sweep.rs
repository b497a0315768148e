use std::fs::File;
use std::io::{BufWriter, Write};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use qram_core::families::{optimal_k, SelectSwapMode};
use qram_core::ftcost::estimate_physical;
use qram_core::{Family, FamilyConfig};

use crate::args::{KMode, MemoryArgs, MemoryMode, QMode, SweepArgs};
use crate::commands::{counts_for, default_lambda, surface_params, variant};
use crate::range::{parse_set, parse_set_u32};
use crate::row::{write_csv, Row};
use crate::EXIT_OK;

/// Every configuration the sweep covers, in output order.
pub fn configs(a: &SweepArgs) -> Result<Vec<FamilyConfig>> {
    let mut families: Vec<Family> = Vec::new();
    for name in a.families.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let f: Family = name.parse()?;
        if !families.contains(&f) {
            families.push(f);
        }
    }
    families.sort_by_key(|f| f.name());
    let ns = parse_set_u32(&a.n).context("-n")?;
    let qs = a.q.as_deref().map(parse_set_u32).transpose().context("-q")?;
    let ks = a.k.as_deref().map(parse_set_u32).transpose().context("-k")?;
    let lambdas = a.lambda.as_deref().map(parse_set).transpose().context("--lambda")?;
    if a.k_mode == KMode::List && ks.is_none() {
        bail!("--k-mode list needs -k");
    }
    let tv = variant(&a.variant)?;

    let mut out = Vec::new();
    for &f in &families {
        for &n in &ns {
            let base = FamilyConfig { toffoli_variant: tv, ..FamilyConfig::new(f, n) };
            if let Some(mode) = SelectSwapMode::of(f) {
                let ls = match &lambdas {
                    Some(ls) => ls.clone(),
                    None => vec![default_lambda(n, a.b, mode)?],
                };
                for l in ls {
                    let c = base.clone().with_lambda(l).with_b(a.b);
                    if c.validate().is_ok() {
                        out.push(c);
                    }
                }
                continue;
            }
            let q_values: Vec<u32> = match (a.q_mode, &qs) {
                (QMode::HalfFull, _) => vec![n - 1],
                (QMode::Range, Some(qs)) => qs.iter().copied().filter(|&q| q < n).collect(),
                (QMode::Range, None) => (0..n).collect(),
            };
            for q in q_values {
                let with_q = base.clone().with_q(q);
                if !f.is_hybrid() {
                    if with_q.validate().is_ok() {
                        out.push(with_q);
                    }
                    continue;
                }
                let k_values: Vec<u32> = match a.k_mode {
                    KMode::All => match &ks {
                        Some(ks) => ks.clone(),
                        None => (4..=n.saturating_sub(3)).collect(),
                    },
                    KMode::List => ks.clone().unwrap_or_default(),
                    KMode::Optimal => optimal_k(n, q).ok().into_iter().collect(),
                };
                for k in k_values {
                    let c = with_q.clone().with_k(k);
                    if c.validate().is_ok() {
                        out.push(c);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn evaluate(mut config: FamilyConfig, a: &SweepArgs) -> Result<Row> {
    // hybrids get the memory that realizes their largest top tier
    let memory = if config.k.is_some() { MemoryMode::Balanced } else { MemoryMode::Random };
    let mem = MemoryArgs { addresses: None, seed: a.seed, memory };
    let label = format!("{} n={} q={:?} k={:?} λ={:?}", config.family, config.n, config.q, config.k, config.lambda);
    let (fc, _) = counts_for(&mut config, a.source, &mem).with_context(|| label.clone())?;
    let row = Row::new(&config, &fc);
    if !fc.is_complete() {
        return Ok(row);
    }
    let e = estimate_physical(&fc.counts, &surface_params(&a.surface)).with_context(|| label)?;
    Ok(row.with_estimate(&e))
}

pub fn run(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    surface_params(&a.surface).validate()?;
    let configs = configs(&a)?;
    if configs.is_empty() {
        writeln!(err, "warning: sweep has no valid configurations")?;
    }
    let rows: Vec<Row> = configs.into_par_iter().map(|c| evaluate(c, &a)).collect::<Result<_>>()?;
    match &a.out {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(f);
            write_csv(&mut w, &rows)?;
            w.flush()?;
        }
        None => write_csv(out, &rows)?,
    }
    Ok(EXIT_OK)
}
