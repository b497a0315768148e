use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qram", version, about = "qRAM circuit synthesis and fault-tolerant resource estimates")]
pub struct Cli {
    /// Config file of `key = value` lines; defaults to $QRAM_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Logical resource counts for one configuration.
    Count(CountArgs),
    /// Write a circuit in the text format.
    Generate(GenerateArgs),
    /// Surface-code estimate for one configuration.
    Estimate(EstimateArgs),
    /// CSV of counts and estimates over a parameter grid.
    Sweep(SweepArgs),
    /// SVG line plot from a sweep CSV.
    Plot(PlotArgs),
    /// Run the functional and count checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: String,
    #[arg(short = 'n', long = "n")]
    pub n: u32,
    #[arg(short = 'q', long = "q")]
    pub q: Option<u32>,
    #[arg(short = 'k', long = "k")]
    pub k: Option<u32>,
    #[arg(long)]
    pub lambda: Option<u64>,
    #[arg(short = 'b', long = "b")]
    pub b: Option<u64>,
    /// Toffoli lowering: td1, td2 or td3.
    #[arg(long, default_value = "td1")]
    pub variant: String,
    /// Allow unlowerable small MPMCT instances.
    #[arg(long)]
    pub relaxed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Closed form, layout counts for builder-only hybrids, bound model for SelectSwap.
    Formula,
    /// Build, lower and count.
    Builder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MemoryMode {
    Random,
    Balanced,
    Worst,
}

#[derive(Args, Debug, Clone)]
pub struct MemoryArgs {
    /// Memory file: `n=<bits>` then one address per line.
    #[arg(long)]
    pub addresses: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    pub memory: MemoryMode,
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 1e-4)]
    pub pin: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub pg: f64,
    #[arg(long = "cycle-ns", default_value_t = 200.0)]
    pub cycle_ns: f64,
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,
    /// Cycles per logical layer; the code distance when unset.
    #[arg(long = "layer-cycles")]
    pub layer_cycles: Option<u64>,
    /// Init and teardown cycles for the on/off rule.
    #[arg(long, default_value_t = 0)]
    pub ci: u64,
    #[arg(long, default_value_t = 0)]
    pub ct: u64,
    /// Algorithm cycles between queries; prints the on/off decision.
    #[arg(long)]
    pub ca: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value = "formula")]
    pub source: Source,
    #[command(flatten)]
    pub memory: MemoryArgs,
    /// CSV instead of a table.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub memory: MemoryArgs,
    /// Lower to Clifford+T.
    #[arg(long)]
    pub lower: bool,
    /// Emit the even-parity register preparation.
    #[arg(long = "prepare-parity")]
    pub prepare_parity: bool,
    /// Build on the zero cells and flip the output.
    #[arg(long)]
    pub complement: bool,
    /// Output file; stdout when unset.
    #[arg(short = 'o', long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, value_enum, default_value = "formula")]
    pub source: Source,
    #[command(flatten)]
    pub memory: MemoryArgs,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QMode {
    /// q = n − 1
    HalfFull,
    /// every q in 0..n, or the values given by -q
    Range,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KMode {
    /// every valid split, or the valid ones among -k
    All,
    /// the values given by -k
    List,
    /// the split with least N_Q·T_d
    Optimal,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Comma-separated family names.
    #[arg(long, default_value = "bb-parallel,large-depth,large-width")]
    pub families: String,
    /// Address widths, e.g. `15..36` or `9,12`.
    #[arg(short = 'n', long = "n")]
    pub n: String,
    #[arg(long = "q-mode", value_enum, default_value = "range")]
    pub q_mode: QMode,
    /// Fullness values for range mode, e.g. `30,35`.
    #[arg(short = 'q', long = "q")]
    pub q: Option<String>,
    #[arg(long = "k-mode", value_enum, default_value = "all")]
    pub k_mode: KMode,
    #[arg(short = 'k', long = "k")]
    pub k: Option<String>,
    /// SelectSwap λ values; the T-count optimum when unset.
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(short = 'b', long = "b", default_value_t = 1)]
    pub b: u64,
    #[arg(long, default_value = "td1")]
    pub variant: String,
    #[arg(long, value_enum, default_value = "formula")]
    pub source: Source,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(short = 'o', long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(short = 'o', long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    /// Column whose values split the rows into lines.
    #[arg(long)]
    pub series: Option<String>,
    /// Log x axis; `--logx false` undoes a config setting.
    #[arg(long, num_args = 0..=1, default_missing_value = "true", action = ArgAction::Set, default_value_t = false)]
    pub logx: bool,
    #[arg(long, num_args = 0..=1, default_missing_value = "true", action = ArgAction::Set, default_value_t = false)]
    pub logy: bool,
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "max-n", default_value_t = 6)]
    pub max_n: u32,
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    /// Test mode: plant one wrong gate in every query circuit.
    #[arg(long = "inject-fault")]
    pub inject_fault: bool,
}
