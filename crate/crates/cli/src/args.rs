use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(
    name = "circord",
    version,
    about = "Circular and linear orders on groups"
)]
pub struct Cli {
    /// Emit progress and reduction traces on stderr.
    #[arg(long, global = true)]
    pub trace: bool,

    /// Worker threads for the solver; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the order axioms on a ball; exit 0 iff no violations.
    Validate(ValidateArgs),
    /// Search for a non-orderability certificate; exit 10 when one is found.
    Search(SearchArgs),
    /// List every circular order on a finite group.
    Enumerate(EnumerateArgs),
    /// Evaluate an order on one triple.
    Eval(EvalArgs),
    /// Place elements on the circle.
    Realize(RealizeArgs),
    /// Find a rotation order agreeing with an intertwined order on a ball.
    Density(DensityArgs),
    /// Look for n with c(e, g, h) != c(e, g^n, h).
    Archimedean(ArchimedeanArgs),
    /// Replay a certificate; exit 0 iff it is unsatisfiable.
    VerifyCert(VerifyArgs),
    /// Reduce a free-product triple to its minimal form.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
pub struct OrderInput {
    /// Order spec JSON file.
    #[arg(long)]
    pub order: PathBuf,
    /// Group descriptor JSON file; defaults to the order's own group.
    #[arg(long)]
    pub group: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: OrderInput,
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Co,
    Lo,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub group: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Co)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 2)]
    pub max_radius: usize,
    /// Write the certificate or report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct EnumerateArgs {
    /// Orders of Z/m as finite rotations.
    #[arg(long)]
    pub cyclic: Option<u64>,
    /// Orders of a finite group as explicit tables.
    #[arg(long)]
    pub group: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub input: OrderInput,
    /// JSON array of three elements.
    #[arg(long)]
    pub triple: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    #[command(flatten)]
    pub input: OrderInput,
    /// Number of elements, taken from balls of increasing radius.
    #[arg(long)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub input: OrderInput,
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct ArchimedeanArgs {
    #[command(flatten)]
    pub input: OrderInput,
    /// Element JSON.
    #[arg(long)]
    pub g: String,
    /// Element JSON.
    #[arg(long)]
    pub h: String,
    #[arg(long, default_value_t = 100)]
    pub limit: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub cert: PathBuf,
    /// Also check every clause against this group.
    #[arg(long)]
    pub group: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// JSON array of three words.
    #[arg(long)]
    pub triple: String,
    /// Pick applicable reductions at random (seeded by --seed).
    #[arg(long)]
    pub random: bool,
}
