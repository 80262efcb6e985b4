use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bcorder", version, about = "Orderings and rate regions of two-receiver broadcast channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test every ordering in both directions and report the finest one.
    Classify(ClassifyArgs),
    /// Sample D(x) = I(X;BSC) - I(X;BEC) on [0, 1].
    Dcurve(DcurveArgs),
    /// Tag a (p, e) grid of BSC/BEC pairs by regime.
    PhaseMap(PhaseMapArgs),
    /// Sweep rate-region frontiers.
    Region(RegionArgs),
    /// Look for a cyclic-shift symmetry of each channel.
    Symmetry(SymmetryArgs),
    /// Run the built-in reproduction checks.
    VerifyPaper(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Svg,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ChannelArgs {
    /// Receiver 1 is BSC(P).
    #[arg(long, value_name = "P")]
    pub bsc: Option<f64>,
    /// Receiver 2 is BEC(E).
    #[arg(long, value_name = "E")]
    pub bec: Option<f64>,
    /// Receiver 1 channel file (JSON).
    #[arg(long, value_name = "FILE")]
    pub channel1: Option<PathBuf>,
    /// Receiver 2 channel file (JSON).
    #[arg(long, value_name = "FILE")]
    pub channel2: Option<PathBuf>,
    /// Built-in named pair; `paper6vi` is the four-input example.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Rescale channel-file rows to sum to one instead of rejecting them.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write to this path instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub channels: ChannelArgs,
    /// Grid steps per unit for the simplex searches.
    #[arg(long, default_value_t = 50)]
    pub grid: usize,
    /// Also test "essentially more capable" on this candidate class.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DcurveArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub e: f64,
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PhaseMapArgs {
    /// Grid points per axis, endpoints included.
    #[arg(long, default_value_t = 51)]
    pub resolution: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[command(flatten)]
    pub channels: ChannelArgs,
    /// Comma-separated frontiers: ib, theorem1, theorem2, ob, vx.
    #[arg(long, default_value = "ib")]
    pub which: String,
    /// Input class for theorem1/theorem2: uniform, uniform01, uniform23,
    /// full, or comma-separated probabilities; `;` separates members.
    #[arg(long, default_value = "uniform")]
    pub class: String,
    /// Fixed input law for the ib sweep (comma-separated probabilities).
    #[arg(long)]
    pub marginal: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub grid: usize,
    /// Random three-letter auxiliaries added after the binary sweep.
    #[arg(long, default_value_t = 0)]
    pub ternary: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Distance below which two frontiers are reported as coinciding
    /// (default: twice the grid step).
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SymmetryArgs {
    #[command(flatten)]
    pub channels: ChannelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the tolerance of every selected check.
    #[arg(long, visible_alias = "tol")]
    pub tolerance: Option<f64>,
    /// Run only these checks (repeatable or comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub check: Vec<String>,
    /// Print the check names and exit.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
