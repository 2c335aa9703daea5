//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qic_core::conditions::{Mode, DEFAULT_GRID_STEP};
use qic_core::simdec::DEFAULT_DELTA;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "qic",
    version,
    about = "Rate regions, interference conditions and decoder checks for quantum channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Entropies, mutual informations and min-entropies of a channel.
    Entropy(EntropyArgs),
    /// Certify the very strong or strong interference condition.
    CheckInterference(CheckArgs),
    /// Compute a rate region and write its frontier.
    Region(RegionArgs),
    /// Interference condition and capacity region over a range of theta.
    SweepTheta(SweepArgs),
    /// Gaussian interference channel figure data.
    Gaussian(GaussianArgs),
    /// Monte Carlo error of the simultaneous square-root decoder.
    Simulate(SimulateArgs),
    /// Property suites with a JUnit-style report.
    Selftest(SelftestArgs),
}

#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct ChannelArgs {
    /// Channel JSON file.
    #[arg(long, conflicts_with = "builtin")]
    pub channel: Option<PathBuf>,
    /// Builtin channel: `theta-swap:<radians>` or `bb84`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct DistArgs {
    /// Uniform input distributions (the default when no --p flags are given).
    #[arg(long, conflicts_with_all = ["p1", "p2", "p3"])]
    pub uniform: bool,
    /// Distribution of the first input, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub p1: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub p2: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub p3: Option<Vec<f64>>,
}

#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct SamplerArgs {
    /// Grid step for the union over input distributions.
    #[arg(long, default_value_t = 0.05)]
    pub grid_step: f64,
    /// Use this many random distributions instead of the grid.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct GaussArgs {
    #[arg(long)]
    pub snr1: Option<f64>,
    #[arg(long)]
    pub snr2: Option<f64>,
    #[arg(long)]
    pub inr1: Option<f64>,
    #[arg(long)]
    pub inr2: Option<f64>,
    /// Grid step for the power-split fractions.
    #[arg(long, default_value_t = 0.05)]
    pub split_step: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    VeryStrong,
    Strong,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::VeryStrong => Mode::VeryStrong,
            ModeArg::Strong => Mode::Strong,
        }
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[command(flatten)]
    pub dist: DistArgs,
    /// Also write the report to this JSON file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct CheckArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::VeryStrong)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    pub grid_step: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionMethod {
    Mac2,
    Mac3,
    MinEntropy,
    SimInner,
    Vsi,
    Strong,
    Hk,
    Sato,
    SdPoints,
    GaussSdRs,
    GaussHk,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct RegionArgs {
    #[arg(long, value_enum)]
    pub method: RegionMethod,
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[command(flatten)]
    pub dist: DistArgs,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub gauss: GaussArgs,
    /// Receiver whose induced MAC is used when the channel has two outputs.
    #[arg(long)]
    pub receiver: Option<usize>,
    /// Grid step used to certify the interference condition.
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    pub condition_step: f64,
    /// Decoding roles (X, Y, Z) as 1-based sender indices.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
    pub perm: Vec<usize>,
    /// Random Han-Kobayashi splits added to the structured ones.
    #[arg(long, default_value_t = 0)]
    pub hk_random: usize,
    /// Frontier (or constraint) CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Region JSON with polygon and frontier.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::VeryStrong)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    pub condition_step: f64,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct GaussianArgs {
    #[arg(long)]
    pub snr1: f64,
    #[arg(long)]
    pub snr2: f64,
    #[arg(long)]
    pub inr1: f64,
    #[arg(long)]
    pub inr2: f64,
    #[arg(long, default_value_t = 0.05)]
    pub split_step: f64,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateMode {
    /// Fractions of the single-rate pentagon bounds.
    Pentagon,
    /// Equal rates at a fraction of the sum bound.
    Sum,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long)]
    pub receiver: Option<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [4usize, 6, 8, 10])]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub rate_frac: f64,
    #[arg(long, value_enum, default_value_t = RateMode::Pentagon)]
    pub rate_mode: RateMode,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    pub delta: f64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    All,
    OperatorInequalities,
    EntropyIdentities,
    RegionNesting,
    FmProjection,
    Typicality,
    ClosedForm,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = SuiteName::All)]
    pub suite: SuiteName,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// JUnit XML destination; printed to stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
}
