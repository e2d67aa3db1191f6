use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Largest d for the representation-theoretic commands.
pub const MAX_D_COMBINATORIAL: usize = 6;
/// Largest d for the Čech pipelines.
pub const MAX_D_CECH: usize = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bggcoh",
    version,
    about = "Exact cohomology computations on projective space and its linear complements"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for per-multidegree parallelism (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Directory for cached results. Caching is off when unset.
    #[arg(long, env = "BGGCOH_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Borel-Weil-Bott: cohomology of E_mu on P^d, or the dual BGG complex of lambda.
    Bwb(BwbArgs),
    /// de Rham cohomology of V = P^d minus P^j via the Čech-de Rham double complex.
    DerhamV(PipelineArgs),
    /// Exactness of the reduced local cohomology complex of differential forms.
    Acyclicity(PipelineArgs),
    /// Local cohomology of Omega^p(k) with supports in P^j, per multidegree.
    Local(LocalArgs),
    /// Degree-wise cohomology table with finite-field Steinberg sizes.
    Table(TableArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BwbArgs {
    #[arg(long)]
    pub d: usize,
    /// Weight of a homogeneous bundle, e.g. `-1,1`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lambda")]
    pub mu: Option<String>,
    /// Dominant weight for `--bgg`.
    #[arg(long, allow_hyphen_values = true, requires = "bgg")]
    pub lambda: Option<String>,
    /// Print the dual BGG complex of `--lambda`.
    #[arg(long)]
    pub bgg: bool,
    /// Treat `--mu` as a line bundle on the full flag variety.
    #[arg(long, requires = "mu")]
    pub flag_variety: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct PipelineArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub j: usize,
    /// Multidegree window bound B: only |m_i| <= B is computed.
    #[arg(long, default_value_t = 5)]
    pub window: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct LocalArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub j: usize,
    #[arg(long)]
    pub p: usize,
    /// Twist k of Omega^p(k).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long, default_value_t = 5)]
    pub window: i64,
    /// Report the reduced module coker(H^{d-j-1}(P^d) -> H^{d-j-1}(V)) instead.
    #[arg(long)]
    pub reduced: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}
