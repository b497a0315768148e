//! Surface-code embedding of logical counts: code distance, magic-state
//! distillation, factories, physical qubits, cycles and cost.

use std::fmt;

use crate::ir::ResourceCounts;

/// Physical error rate at which the logical error model stops improving.
pub const THRESHOLD: f64 = 1e-2;

const MAX_DISTANCE: u32 = 10_001;
const MAX_ROUNDS: usize = 16;
/// Logical qubits in one 15-to-1 round.
pub const ROUND_QUBITS: u64 = 16;
/// Latency of one round, in units of its code distance.
pub const ROUND_LATENCY: u64 = 10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FtError {
    #[error("gate error {0} must be below threshold {THRESHOLD}")]
    AboveThreshold(f64),
    #[error("error budget must lie in (0, 1), got {0}")]
    Budget(f64),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("distillation does not converge from input error {0}")]
    Diverges(f64),
    #[error("T-depth is 0 but T-count is {0}")]
    NoTLayers(u64),
    #[error("cost needs positive operands, got {0} × {1}")]
    NonPositive(u128, u128),
    #[error("counts are empty: need N_Q > 0 and D > 0")]
    Empty,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceCodeParams {
    /// Injection error of raw magic states.
    pub p_in: f64,
    /// Physical gate error.
    pub p_g: f64,
    /// Seconds per surface-code cycle.
    pub t_c: f64,
    /// Total failure budget, split evenly between logical and T-state errors.
    pub epsilon: f64,
    /// Cycles per logical layer; `None` uses the code distance.
    pub layer_cycles: Option<u64>,
    /// Qubit initialization and teardown cycles for the on/off rule.
    pub c_i: u64,
    pub c_t: u64,
}

impl Default for SurfaceCodeParams {
    fn default() -> Self {
        SurfaceCodeParams {
            p_in: 1e-4,
            p_g: 1e-5,
            t_c: 200e-9,
            epsilon: 0.01,
            layer_cycles: None,
            c_i: 0,
            c_t: 0,
        }
    }
}

impl SurfaceCodeParams {
    pub fn validate(&self) -> Result<(), FtError> {
        for (name, p) in [("p_in", self.p_in), ("p_g", self.p_g), ("epsilon", self.epsilon)] {
            if !(p > 0.0 && p < 1.0) {
                return Err(FtError::Param(format!("{name} = {p} must lie in (0, 1)")));
            }
        }
        if !(self.t_c > 0.0 && self.t_c.is_finite()) {
            return Err(FtError::Param(format!("t_c = {} must be positive", self.t_c)));
        }
        if self.layer_cycles == Some(0) {
            return Err(FtError::Param("layer cycles must be positive".into()));
        }
        Ok(())
    }
}

/// `0.1 · (100 p_g)^((d+1)/2)`.
pub fn logical_error(p_g: f64, d: u32) -> f64 {
    0.1 * (100.0 * p_g).powf(f64::from(d + 1) / 2.0)
}

/// Smallest odd distance whose logical error fits the budget.
pub fn required_distance(p_g: f64, budget: f64) -> Result<u32, FtError> {
    if !(budget > 0.0 && budget < 1.0) {
        return Err(FtError::Budget(budget));
    }
    if !(p_g > 0.0) {
        return Err(FtError::Param(format!("p_g = {p_g} must be positive")));
    }
    if p_g >= THRESHOLD {
        return Err(FtError::AboveThreshold(p_g));
    }
    // relative slack so that exact boundary cases such as 1e-10 hold
    let limit = budget * (1.0 + 1e-12);
    (1..=MAX_DISTANCE)
        .step_by(2)
        .find(|&d| logical_error(p_g, d) <= limit)
        .ok_or(FtError::Budget(budget))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistillationRound {
    pub distance: u32,
    pub output_error: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct DistillationPlan {
    pub rounds: Vec<DistillationRound>,
}

impl DistillationPlan {
    pub fn output_error(&self, p_in: f64) -> f64 {
        self.rounds.last().map_or(p_in, |r| r.output_error)
    }

    /// Logical qubits of one factory.
    pub fn footprint(&self) -> u64 {
        ROUND_QUBITS * self.rounds.len() as u64
    }

    /// Physical qubits of one factory.
    pub fn physical_footprint(&self) -> u128 {
        self.rounds.iter().map(|r| u128::from(ROUND_QUBITS) * physical_per_logical(r.distance)).sum()
    }

    /// Cycles until the first state leaves the factory.
    pub fn latency(&self) -> u64 {
        self.rounds.iter().map(|r| ROUND_LATENCY * u64::from(r.distance)).sum()
    }

    /// Cycles between successive states once the pipeline is full.
    pub fn period(&self) -> u64 {
        self.rounds.iter().map(|r| ROUND_LATENCY * u64::from(r.distance)).max().unwrap_or(0)
    }
}

/// Fewest 15-to-1 rounds with `err' = 35 err³` that reach the budget.
pub fn distillation_plan(p_in: f64, budget: f64, p_g: f64) -> Result<DistillationPlan, FtError> {
    if !(budget > 0.0 && budget < 1.0) {
        return Err(FtError::Budget(budget));
    }
    if !(p_in > 0.0 && p_in < 1.0) {
        return Err(FtError::Param(format!("p_in = {p_in} must lie in (0, 1)")));
    }
    let mut plan = DistillationPlan::default();
    let mut err = p_in;
    while err > budget {
        let next = 35.0 * err.powi(3);
        if next >= err || plan.rounds.len() == MAX_ROUNDS {
            return Err(FtError::Diverges(p_in));
        }
        err = next;
        plan.rounds.push(DistillationRound { distance: required_distance(p_g, err)?, output_error: err });
    }
    Ok(plan)
}

/// `⌈T_c / T_d⌉`, enough factories to feed one T layer.
pub fn factory_count(counts: &ResourceCounts) -> Result<u64, FtError> {
    match (counts.t_count, counts.t_depth) {
        (0, _) => Ok(0),
        (tc, 0) => Err(FtError::NoTLayers(tc)),
        (tc, td) => Ok(tc.div_ceil(td)),
    }
}

pub fn physical_per_logical(d: u32) -> u128 {
    2 * (u128::from(d) + 1).pow(2)
}

/// `log₂(logical qubits × cycles)`.
pub fn cost_metric(logical_qubits: u128, cycles: u128) -> Result<f64, FtError> {
    if logical_qubits == 0 || cycles == 0 {
        return Err(FtError::NonPositive(logical_qubits, cycles));
    }
    Ok((logical_qubits as f64).log2() + (cycles as f64).log2())
}

/// `log₂(N_Q × T_d)`.
pub fn rough_cost(counts: &ResourceCounts) -> Result<f64, FtError> {
    cost_metric(u128::from(counts.logical_qubits), u128::from(counts.t_depth))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalEstimate {
    pub distance: u32,
    pub plan: DistillationPlan,
    pub factories: u64,
    /// Algorithm qubits plus factory qubits.
    pub logical_qubits: u128,
    pub physical_qubits: u128,
    pub cycles: u128,
    pub seconds: f64,
    pub cost: f64,
    /// `None` when there are no T layers.
    pub rough_cost: Option<f64>,
}

pub fn estimate_physical(counts: &ResourceCounts, params: &SurfaceCodeParams) -> Result<PhysicalEstimate, FtError> {
    params.validate()?;
    if counts.logical_qubits == 0 || counts.depth == 0 {
        return Err(FtError::Empty);
    }
    let nq = u128::from(counts.logical_qubits);
    let depth = u128::from(counts.depth);
    let half = params.epsilon / 2.0;

    let distance = required_distance(params.p_g, half / (nq as f64 * depth as f64))?;
    let factories = factory_count(counts)?;
    let plan = if counts.t_count == 0 {
        DistillationPlan::default()
    } else {
        distillation_plan(params.p_in, half / counts.t_count as f64, params.p_g)?
    };
    let fact = u128::from(factories);

    let layer = params.layer_cycles.map_or(u128::from(distance), u128::from);
    let mut cycles = depth * layer;
    if !plan.rounds.is_empty() && counts.t_depth > 0 {
        // every T layer draws one state per factory
        let fed = u128::from(plan.latency()) + u128::from(counts.t_depth - 1) * u128::from(plan.period());
        cycles = cycles.max(fed);
    }

    let logical_qubits = nq + fact * u128::from(plan.footprint());
    let physical_qubits = nq * physical_per_logical(distance) + fact * plan.physical_footprint();
    Ok(PhysicalEstimate {
        distance,
        factories,
        logical_qubits,
        physical_qubits,
        cycles,
        seconds: cycles as f64 * params.t_c,
        cost: cost_metric(logical_qubits, cycles)?,
        rough_cost: rough_cost(counts).ok(),
        plan,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OnOff {
    TurnOff,
    KeepOn,
}

impl fmt::Display for OnOff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OnOff::TurnOff => "turn off",
            OnOff::KeepOn => "keep on",
        })
    }
}

/// Turn qRAM qubits off between queries when the algorithm runs longer than
/// an init plus teardown; a tie keeps them on.
pub fn onoff_decision(c_a: u64, c_i: u64, c_t: u64) -> OnOff {
    if u128::from(c_a) > u128::from(c_i) + u128::from(c_t) {
        OnOff::TurnOff
    } else {
        OnOff::KeepOn
    }
}
