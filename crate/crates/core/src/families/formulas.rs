use std::fmt;

use super::{Family, FamilyConfig, FamilyError};
use crate::ir::ResourceCounts;

/// Where a set of counts came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    ClosedForm,
    /// Counted from the builder layout without materializing gates.
    BuilderDerived,
    /// Upper-bound model with unit constants; not a gate count.
    AsymptoticModel,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::BuilderDerived => "builder-derived",
            Provenance::AsymptoticModel => "asymptotic model",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    LogicalQubits,
    Depth,
    TCount,
    TDepth,
    HCount,
    CnotCount,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::LogicalQubits => "NQ",
            Metric::Depth => "D",
            Metric::TCount => "Tc",
            Metric::TDepth => "Td",
            Metric::HCount => "Hc",
            Metric::CnotCount => "CNOTc",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCounts {
    pub counts: ResourceCounts,
    pub provenance: Provenance,
    /// Fields left at zero because the model does not cover them.
    pub unmodeled: Vec<Metric>,
}

impl FamilyCounts {
    pub fn is_complete(&self) -> bool {
        self.unmodeled.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectSwapMode {
    Clean,
    Dirty,
}

impl SelectSwapMode {
    pub fn of(family: Family) -> Option<SelectSwapMode> {
        match family {
            Family::SelectSwapClean => Some(SelectSwapMode::Clean),
            Family::SelectSwapDirty => Some(SelectSwapMode::Dirty),
            _ => None,
        }
    }
}

/// Clifford+T counts of one lowered MPMCT with `c` controls. Depth is the
/// canonical `28c − 60`; the emitted fragment is shallower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MpmctCounts {
    pub depth: u128,
    pub t_count: u128,
    pub t_depth: u128,
    pub h_count: u128,
    pub cnot_count: u128,
}

pub fn mpmct_counts(c: u32) -> MpmctCounts {
    let c = c as u128;
    MpmctCounts {
        depth: 28 * c - 60,
        t_count: 12 * c - 20,
        t_depth: 4 * (c - 2),
        h_count: 4 * c - 6,
        cnot_count: 24 * c - 40,
    }
}

fn fit(x: u128) -> Result<u64, FamilyError> {
    u64::try_from(x).map_err(|_| FamilyError::Overflow)
}

fn pack(v: [u128; 6]) -> Result<ResourceCounts, FamilyError> {
    Ok(ResourceCounts {
        logical_qubits: fit(v[0])?,
        depth: fit(v[1])?,
        t_count: fit(v[2])?,
        t_depth: fit(v[3])?,
        h_count: fit(v[4])?,
        cnot_count: fit(v[5])?,
    })
}

fn pow2(e: u32) -> Result<u128, FamilyError> {
    if e >= 100 {
        return Err(FamilyError::Overflow);
    }
    Ok(1u128 << e)
}

/// Closed-form counts. Families without one return an error naming the
/// alternative.
pub fn formula_counts(config: &FamilyConfig) -> Result<ResourceCounts, FamilyError> {
    config.validate()?;
    let f = config.family;
    let n = config.n;
    if f.uses_mpmct() && n < 4 {
        return Err(FamilyError::TooSmall { family: f, n });
    }
    let nn = n as u128;
    match f {
        Family::BbSerial => {
            let big = pow2(n)?;
            pack([
                nn + 2 * big + 5,
                21 * big + 2 * nn - 26,
                21 * big - 28,
                3 * big - 4,
                2 * (3 * big - 4),
                50 * big - 64,
            ])
        }
        Family::BbParallel => {
            let big = pow2(n)?;
            pack([8 * big, 16 * nn - 5, 21 * big - 28, 2 * nn - 1, 2 * (3 * big - 4), 54 * big - 2 * nn - 66])
        }
        Family::LargeDepth => {
            let m = pow2(config.q_or_err()?)?;
            let g = mpmct_counts(n);
            pack([2 * nn, m * g.depth, m * g.t_count, m * g.t_depth, m * g.h_count, m * g.cnot_count])
        }
        Family::LargeWidth => {
            let q = config.q_or_err()?;
            let m = pow2(q)?;
            let g = mpmct_counts(n);
            pack([
                nn * 2 * m + 1,
                28 * nn + 3 * q as u128 - 58,
                m * g.t_count,
                g.t_depth,
                m * g.h_count,
                m * (26 * nn - 38) - 2 * nn,
            ])
        }
        Family::Hybrid => {
            let (q, k) = (config.q_or_err()?, config.k_or_err()?);
            if k >= q {
                return Err(FamilyError::NoClosedForm { family: f, k, q });
            }
            structural(config, q, k)
        }
        Family::HybridT1Parallel | Family::HybridT2Parallel | Family::HybridParallel => {
            Err(FamilyError::BuilderOnly(f))
        }
        Family::SelectSwapClean | Family::SelectSwapDirty => Err(FamilyError::Invalid(format!(
            "{f} is a bound model; use selectswap_bounds"
        ))),
    }
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u64
    }
}

/// SelectSwap bound model over `N` cells. Only N_Q, T_c and T_d are filled.
pub fn selectswap_bounds(cells: u64, b: u64, lambda: u64, mode: SelectSwapMode) -> Result<ResourceCounts, FamilyError> {
    if lambda == 0 || b == 0 || cells == 0 {
        return Err(FamilyError::Invalid("N, b and λ must be at least 1".into()));
    }
    if lambda > cells {
        return Err(FamilyError::Invalid(format!("λ = {lambda} exceeds N = {cells}")));
    }
    let (cells, b, lambda) = (cells as u128, b as u128, lambda as u128);
    let log_n = ceil_log2(cells as u64) as u128;
    let blocks = cells.div_ceil(lambda);
    let (nq, tc) = match mode {
        SelectSwapMode::Clean => (b * lambda + 2 * log_n, 4 * blocks + 8 * b * lambda),
        SelectSwapMode::Dirty => ((b + 1) * lambda + 2 * log_n, 8 * blocks + 32 * b * lambda),
    };
    let td = blocks + ceil_log2(lambda as u64) as u128;
    pack([nq, 0, tc, td, 0, 0])
}

/// Hybrid counts from the builder layout, evaluated without building.
///
/// Assumes the memory realises the largest top tier: every prefix when
/// `k < q`, `2^q` distinct prefixes otherwise. For the parallel bottom tier,
/// trigger copies are assumed evenly spread over the prefixes. Depth uses the
/// canonical MPMCT depth and is an upper bound on the built circuit.
pub fn structural_counts(config: &FamilyConfig) -> Result<ResourceCounts, FamilyError> {
    config.validate()?;
    if !config.family.is_hybrid() {
        return formula_counts(config);
    }
    structural(config, config.q_or_err()?, config.k_or_err()?)
}

fn structural(config: &FamilyConfig, q: u32, k: u32) -> Result<ResourceCounts, FamilyError> {
    let n = config.n;
    if k < 4 || k + 3 > n {
        return Err(FamilyError::SplitRange { n, k });
    }
    let s = n - k;
    let (nn, kk, ss, qq) = (n as u128, k as u128, s as u128, q as u128);
    let m = pow2(q)?;
    let top_bits = k.min(q);
    let kt = pow2(top_bits)?;
    let lk = top_bits as u128;
    let top = mpmct_counts(k);
    let bot = mpmct_counts(s + 1);
    let (top_par, bot_par) = match config.family {
        Family::Hybrid => (false, false),
        Family::HybridT1Parallel => (true, false),
        Family::HybridT2Parallel => (false, true),
        _ => (true, true),
    };

    let anc_top = if top_par { (kk - 1) * kt } else { kk - 1 };
    let anc_bot = if bot_par { ss * m } else { ss };
    let mut nq = nn + 1 + kt + anc_top.max(anc_bot);
    let mut bare_cnot = 0;
    if top_par {
        nq += kk * (kt - 1);
        bare_cnot += 2 * kk * (kt - 1);
    }
    if bot_par {
        // suffix copies, parity register, trigger copies
        nq += ss * (m - 1) + 2 * m;
        bare_cnot += 2 * ss * (m - 1) + 2 * m + 2 * (m - 1) + 2;
    }

    let tc = 2 * kt * top.t_count + m * bot.t_count;
    let hc = 2 * kt * top.h_count + m * bot.h_count;
    let cx = 2 * kt * top.cnot_count + m * bot.cnot_count + bare_cnot;

    let top_td = if top_par { top.t_depth } else { kt * top.t_depth };
    let bot_td = if bot_par { bot.t_depth } else { m * bot.t_depth };
    let td = 2 * top_td + bot_td;

    let top_d = if top_par { lk + top.depth } else { kt * top.depth };
    let depth = if bot_par {
        let cd = qq.min(ss) + 1;
        let down = top_d.max(qq) + cd + bot.depth;
        down + (2 * qq + 2).max(cd + top_d)
    } else {
        2 * top_d + m * bot.depth
    };
    pack([nq, depth, tc, td, hc, cx])
}

/// Counts for any family, tagged with where they came from.
pub fn family_counts(config: &FamilyConfig) -> Result<FamilyCounts, FamilyError> {
    config.validate()?;
    let f = config.family;
    if let Some(mode) = SelectSwapMode::of(f) {
        let counts = selectswap_bounds(
            1u64.checked_shl(config.n).ok_or(FamilyError::Overflow)?,
            config.b.unwrap_or(1),
            config.lambda.expect("validated"),
            mode,
        )?;
        return Ok(FamilyCounts {
            counts,
            provenance: Provenance::AsymptoticModel,
            unmodeled: vec![Metric::Depth, Metric::HCount, Metric::CnotCount],
        });
    }
    let closed = match f {
        Family::Hybrid => config.k_or_err()? < config.q_or_err()?,
        _ => !f.is_hybrid(),
    };
    let (counts, provenance) = if closed {
        (formula_counts(config)?, Provenance::ClosedForm)
    } else {
        if config.n < 4 {
            return Err(FamilyError::TooSmall { family: f, n: config.n });
        }
        (structural_counts(config)?, Provenance::BuilderDerived)
    };
    Ok(FamilyCounts { counts, provenance, unmodeled: Vec::new() })
}
