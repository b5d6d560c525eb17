use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "insideness",
    version,
    about = "Digital Jordan curves and exact insideness solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a labelled dataset of one curve family.
    Gen(GenArgs),
    /// Run a solver over a dataset and compare with the stored masks.
    Verify(VerifyArgs),
    /// Count grid cycles and digital Jordan curves.
    Enumerate(EnumerateArgs),
    /// Print the 64-row table of one coloring step.
    TruthTable(TruthTableArgs),
    /// Evaluate the parity head.
    Parity(ParityArgs),
    /// Print the weights of a ray network in text form.
    Netspec(NetspecArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// polar4, polar9, polar14, polar19, polar24, spiral, digs or random-walk.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 0)]
    pub train: usize,
    #[arg(long, default_value_t = 0)]
    pub val: usize,
    #[arg(long, default_value_t = 0)]
    pub test: usize,
    /// Image side; defaults to 32 for polar families and 42 otherwise.
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = insideness_core::generators::DEFAULT_MAX_RETRIES)]
    pub max_retries: usize,
    /// Keep curves whose outside is connected only through diagonal gaps.
    #[arg(long)]
    pub allow_diagonal_gaps: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Dataset directory containing manifest.json.
    #[arg(long)]
    pub data: PathBuf,
    /// flood, ray-oracle, ray-net, dilated-net, rnn, convlstm or stacked.
    #[arg(long)]
    pub solver: String,
    /// Also score curve pixels.
    #[arg(long)]
    pub include_curve: bool,
    /// Where report.txt and report.json go; defaults to the dataset directory.
    #[arg(long)]
    pub report_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    /// Image side N: prints the lower bound (odd N >= 5).
    #[arg(long)]
    pub image_size: Option<usize>,
    /// Grid side k: prints the number of cycles of the k x k grid graph.
    #[arg(long)]
    pub grid: Option<usize>,
    /// With --image-size, also count every curve exactly.
    #[arg(long)]
    pub exact: bool,
    /// With --image-size, write the curves as a dataset directory.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TruthTableArgs {
    #[arg(long, default_value_t = insideness_core::networks::DEFAULT_Q)]
    pub q: f64,
    /// Print the NOT and AND network tables as well.
    #[arg(long)]
    pub boolean: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ParityArgs {
    /// Largest crossing count the head handles.
    #[arg(long, default_value_t = 42)]
    pub c: usize,
    /// Evaluate a single count.
    #[arg(long, conflicts_with = "sweep")]
    pub n: Option<usize>,
    /// Evaluate every count from 0 to C (the default).
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Clone, Args)]
pub struct NetspecArgs {
    /// ray-net or dilated-net.
    #[arg(long, default_value = "ray-net")]
    pub kind: String,
    #[arg(long)]
    pub n: usize,
}
