use std::io::Write;

use anyhow::Result;
use qram_core::families::{FamilyCounts, Metric};
use qram_core::ftcost::PhysicalEstimate;
use qram_core::FamilyConfig;

pub const HEADER: [&str; 21] = [
    "family",
    "n",
    "q",
    "k",
    "lambda",
    "NQ",
    "D",
    "Tc",
    "Td",
    "Hc",
    "CNOTc",
    "Tw",
    "distance",
    "rounds",
    "factories",
    "logical_total",
    "physical_qubits",
    "cycles",
    "seconds",
    "cost",
    "rough_cost",
];

/// One CSV record; `None` fields are written empty.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row {
    pub family: String,
    pub n: u32,
    pub q: Option<u32>,
    pub k: Option<u32>,
    pub lambda: Option<u64>,
    pub nq: Option<u64>,
    pub d: Option<u64>,
    pub tc: Option<u64>,
    pub td: Option<u64>,
    pub hc: Option<u64>,
    pub cnot: Option<u64>,
    pub tw: Option<f64>,
    pub distance: Option<u32>,
    pub rounds: Option<usize>,
    pub factories: Option<u64>,
    pub logical_total: Option<u128>,
    pub physical_qubits: Option<u128>,
    pub cycles: Option<u128>,
    pub seconds: Option<f64>,
    pub cost: Option<f64>,
    pub rough_cost: Option<f64>,
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl Row {
    pub fn new(config: &FamilyConfig, fc: &FamilyCounts) -> Row {
        let c = &fc.counts;
        let modeled = |m: Metric, v: u64| (!fc.unmodeled.contains(&m)).then_some(v);
        Row {
            family: config.family.to_string(),
            n: config.n,
            q: config.q,
            k: config.k,
            lambda: config.lambda,
            nq: modeled(Metric::LogicalQubits, c.logical_qubits),
            d: modeled(Metric::Depth, c.depth),
            tc: modeled(Metric::TCount, c.t_count),
            td: modeled(Metric::TDepth, c.t_depth),
            hc: modeled(Metric::HCount, c.h_count),
            cnot: modeled(Metric::CnotCount, c.cnot_count),
            tw: c.t_width(),
            rough_cost: qram_core::ftcost::rough_cost(c).ok(),
            ..Row::default()
        }
    }

    pub fn with_estimate(mut self, e: &PhysicalEstimate) -> Row {
        self.distance = Some(e.distance);
        self.rounds = Some(e.plan.rounds.len());
        self.factories = Some(e.factories);
        self.logical_total = Some(e.logical_qubits);
        self.physical_qubits = Some(e.physical_qubits);
        self.cycles = Some(e.cycles);
        self.seconds = Some(e.seconds);
        self.cost = Some(e.cost);
        self.rough_cost = e.rough_cost.or(self.rough_cost);
        self
    }

    pub fn record(&self) -> [String; 21] {
        [
            self.family.clone(),
            self.n.to_string(),
            cell(self.q),
            cell(self.k),
            cell(self.lambda),
            cell(self.nq),
            cell(self.d),
            cell(self.tc),
            cell(self.td),
            cell(self.hc),
            cell(self.cnot),
            cell(self.tw),
            cell(self.distance),
            cell(self.rounds),
            cell(self.factories),
            cell(self.logical_total),
            cell(self.physical_qubits),
            cell(self.cycles),
            cell(self.seconds),
            cell(self.cost),
            cell(self.rough_cost),
        ]
    }
}

pub fn write_csv(out: &mut dyn Write, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}
