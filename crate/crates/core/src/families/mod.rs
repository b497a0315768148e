//! qRAM circuit families: memories, configurations, explicit builders,
//! closed-form counts and parameter searches.

mod build;
mod config;
mod formulas;
mod memory;
mod optimize;

pub use build::build_circuit;
pub use config::{Family, FamilyConfig};
pub use formulas::{
    family_counts, formula_counts, mpmct_counts, selectswap_bounds, structural_counts, FamilyCounts, Metric,
    Provenance, SelectSwapMode,
};
pub use memory::{balanced_memory, format_address, random_memory, worst_case_memory, MemorySpec, MAX_ADDRESS_BITS};
pub use optimize::{find_crossover_q, optimal_k, optimal_lambda};

use crate::decomp::{lower_to_clifford_t, DecompError};
use crate::ir::{count_resources, IrError, ResourceCounts};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("address width {0} out of range (1..=63)")]
    AddressWidth(u32),
    #[error("address {address} does not fit in {n} bits")]
    AddressRange { address: u64, n: u32 },
    #[error("duplicate address {0}")]
    DuplicateAddress(String),
    #[error("memory holds no ones")]
    EmptyMemory,
    #[error("memory holds {0} ones, not a power of two")]
    NotPowerOfTwo(usize),
    #[error("memory file line {line}: {reason}")]
    MemoryParse { line: usize, reason: String },
    #[error("q = {q} out of range for n = {n}")]
    FullnessRange { n: u32, q: u32 },
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("{family} requires parameter {param}")]
    Missing { param: &'static str, family: Family },
    #[error("{family}: n ≥ 4 required, got n = {n}")]
    TooSmall { family: Family, n: u32 },
    #[error("hybrid split k = {k} must satisfy 4 ≤ k ≤ n − 3 = {}", n.saturating_sub(3))]
    SplitRange { n: u32, k: u32 },
    #[error("{family} has no closed form for k = {k} ≥ q = {q}; use build_circuit")]
    NoClosedForm { family: Family, k: u32, q: u32 },
    #[error("{0} has no closed form; use build_circuit")]
    BuilderOnly(Family),
    #[error("{0} is a bound model with no circuit builder")]
    NoBuilder(Family),
    #[error("counts overflow 64 bits")]
    Overflow,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Ir(#[from] IrError),
}

/// Build, lower with the configured Toffoli variant, and count.
pub fn builder_counts(config: &FamilyConfig, mem: &MemorySpec) -> Result<ResourceCounts, FamilyError> {
    let circuit = build_circuit(config, mem)?;
    let lowered = lower_to_clifford_t(&circuit, config.toffoli_variant)?;
    Ok(count_resources(&lowered)?)
}
