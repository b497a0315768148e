use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::{
    check_circuit_semantics, check_decomposition_unitary, check_formula_vs_builder, check_superposition_query,
    inject_fault, GateSpec,
};
use super::VerifyError;
use crate::decomp::ToffoliVariant;
use crate::families::{build_circuit, random_memory, Family, FamilyConfig, MemorySpec};

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteRow {
    pub check: String,
    pub status: Status,
}

impl SuiteRow {
    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail(_))
    }
}

impl fmt::Display for SuiteRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS  {}", self.check),
            Status::Fail(why) => write!(f, "FAIL  {}: {why}", self.check),
            Status::Skip(why) => write!(f, "SKIP  {}: {why}", self.check),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub max_n: u32,
    pub seeds: u64,
    /// Plant one wrong gate in every query circuit.
    pub inject_fault: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_n: 6, seeds: 5, inject_fault: false }
    }
}

/// Largest `n` the formula grid is run at.
const FORMULA_MAX_N: u32 = 9;

/// Query configurations at one `n`. Hybrids use the relaxed split range so
/// they can be checked below `n = 7`.
fn query_configs(f: Family, n: u32) -> Vec<FamilyConfig> {
    let qs: Vec<Option<u32>> = if f.needs_q() { (0..n).map(Some).collect() } else { vec![None] };
    let ks: Vec<Option<u32>> = if f.is_hybrid() { (2..n).map(Some).collect() } else { vec![None] };
    let mut out = Vec::new();
    for &q in &qs {
        for &k in &ks {
            let mut c = FamilyConfig::new(f, n);
            c.q = q;
            c.k = k;
            c.relaxed = true;
            out.push(c);
        }
    }
    out
}

fn query_row(f: Family, n: u32, opts: &SuiteOptions) -> Result<SuiteRow, VerifyError> {
    let check = format!("query {f} n={n}");
    if f.uses_mpmct() && n < 4 {
        return Ok(SuiteRow { check, status: Status::Skip(format!("{f}: n ≥ 4 required")) });
    }
    let (mut circuits, mut addresses) = (0, 0);
    for c in query_configs(f, n) {
        for seed in 0..opts.seeds {
            let mem = random_memory(n, c.q.unwrap_or(n / 2), seed)?;
            let mut circuit = build_circuit(&c, &mem)?;
            if opts.inject_fault {
                circuit = inject_fault(&circuit).unwrap_or(circuit);
            }
            let r = check_circuit_semantics(&circuit, &mem)?;
            if !r.passed() {
                let mut why = format!("q={:?} k={:?} seed {seed}", c.q, c.k);
                match r.examples.first() {
                    Some(e) => why += &format!(", address {e}"),
                    None => why += &format!(", superposition error {:?}", r.superposition_deviation),
                }
                return Ok(SuiteRow { check, status: Status::Fail(why) });
            }
            circuits += 1;
            addresses += r.addresses_checked;
        }
    }
    Ok(SuiteRow { check: format!("{check} ({circuits} circuits, {addresses} addresses)"), status: Status::Pass })
}

fn unitary_rows() -> Result<Vec<SuiteRow>, VerifyError> {
    let mut specs: Vec<GateSpec> = ToffoliVariant::ALL.into_iter().map(GateSpec::Toffoli).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for c in 4..=6 {
        specs.push(GateSpec::Mpmct { polarity: vec![true; c] });
        for _ in 0..2 {
            specs.push(GateSpec::Mpmct { polarity: (0..c).map(|_| rng.gen()).collect() });
        }
    }
    specs
        .into_iter()
        .map(|s| {
            let dev = check_decomposition_unitary(&s)?;
            let status = if dev < 1e-10 { Status::Pass } else { Status::Fail(format!("deviation {dev:.3e}")) };
            Ok(SuiteRow { check: format!("unitary {s}"), status })
        })
        .collect()
}

fn formula_row(f: Family, n: u32) -> Result<SuiteRow, VerifyError> {
    let mut configs = Vec::new();
    let qs: Vec<Option<u32>> = if f.needs_q() { (0..n).map(Some).collect() } else { vec![None] };
    let ks: Vec<Option<u32>> =
        if f.is_hybrid() { (4..=n.saturating_sub(3)).map(Some).collect() } else { vec![None] };
    for &q in &qs {
        for &k in &ks {
            let mut c = FamilyConfig::new(f, n);
            c.q = q;
            c.k = k;
            configs.push(c);
        }
    }
    let check = format!("counts {f} n={n}");
    if configs.is_empty() {
        return Ok(SuiteRow { check, status: Status::Skip("hybrids need n ≥ 7 (4 ≤ k ≤ n − 3)".into()) });
    }
    for c in &configs {
        for r in check_formula_vs_builder(c, 7)? {
            if !r.ok {
                let why = format!(
                    "q={:?} k={:?} {} reference {} builder {} rule {}",
                    c.q, c.k, r.metric, r.reference, r.builder, r.rule
                );
                return Ok(SuiteRow { check, status: Status::Fail(why) });
            }
        }
    }
    Ok(SuiteRow { check: format!("{check} ({} configs)", configs.len()), status: Status::Pass })
}

fn parity_row() -> Result<SuiteRow, VerifyError> {
    let mem = MemorySpec::new(3, [0b010, 0b111])?;
    let mut c = FamilyConfig::new(Family::LargeWidth, 3).with_q(1);
    c.relaxed = true;
    c.prepare_parity = true;
    let dev = check_superposition_query(&c, &mem, &[0b010, 0b111])?;
    let status = if dev < 1e-10 { Status::Pass } else { Status::Fail(format!("deviation {dev:.3e}")) };
    Ok(SuiteRow { check: "superposition large-width n=3 with prepared parity register".into(), status })
}

/// Query, count, unitary and superposition checks up to `max_n` address bits.
pub fn run_suite(opts: &SuiteOptions) -> Result<Vec<SuiteRow>, VerifyError> {
    let families: Vec<Family> = Family::ALL.into_iter().filter(|f| f.has_builder()).collect();
    let mut rows = Vec::new();
    for &f in &families {
        for n in 1..=opts.max_n {
            rows.push(query_row(f, n, opts)?);
        }
    }
    for &f in &families {
        for n in 4..=opts.max_n.min(FORMULA_MAX_N) {
            rows.push(formula_row(f, n)?);
        }
    }
    rows.extend(unitary_rows()?);
    rows.push(parity_row()?);
    Ok(rows)
}
