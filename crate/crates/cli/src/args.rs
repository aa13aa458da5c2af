use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rigpack::orientation::DEFAULT_RETRY_BUDGET;

#[derive(Debug, Parser)]
#[command(name = "rigpack", version, about = "Sparsity, rigidity, packing and orientation certificates for multigraphs")]
pub struct Cli {
    /// Seed for randomized constructions and generators; 0 when omitted, except that
    /// random generator families require it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest vertex count for exhaustive sweeps.
    #[arg(long, global = true, env = "RIGPACK_BUDGET")]
    pub budget: Option<usize>,
    /// Run constructions even when their hypothesis fails or cannot be checked.
    #[arg(long, global = true)]
    pub force: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Structured)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the graph is sparse.
    Sparse(FuncArgs),
    /// Rank, basis and rigidity.
    Rigid(FuncArgs),
    /// Rigid components of a sparse graph.
    Components(FuncArgs),
    /// Pack edge-disjoint sparse parts.
    Pack(PackArgs),
    /// Split a rigid graph into spanning rigid parts.
    Decompose(DecomposeArgs),
    /// Constrained orientations.
    Orient(OrientArgs),
    /// Re-check the certificate of a saved report.
    Verify(VerifyArgs),
    /// Exhaustively check a connectivity hypothesis.
    Hypothesis(HypothesisArgs),
    /// Run a brute-force oracle.
    Oracle(OracleArgs),
    /// Generate a graph file.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct FuncArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub func: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DegreeArg {
    None,
    Halved,
    Rho,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    #[value(name = "thm10-1")]
    Thm10_1,
    #[value(name = "thm10-2")]
    Thm10_2,
    Cor82,
}

#[derive(Debug, Args)]
pub struct PackArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// One part per function.
    #[arg(long, num_args = 1.., conflicts_with_all = ["l", "ell", "preset"])]
    pub funcs: Vec<String>,
    /// Partition-connected part of a partition/rigid packing.
    #[arg(long, requires = "ell")]
    pub l: Option<String>,
    /// Rigid part of a partition/rigid packing.
    #[arg(long, requires = "l")]
    pub ell: Option<String>,
    #[arg(long, value_enum, default_value_t = DegreeArg::None)]
    pub degree: DegreeArg,
    #[arg(long, value_enum, conflicts_with_all = ["l", "ell"])]
    pub preset: Option<PresetArg>,
    /// Integer for the thm10 presets, rational such as `3/2` for cor82 and the rho degree mode.
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Constrained side for cor82.
    #[arg(long, value_delimiter = ',')]
    pub side: Vec<usize>,
    /// Per-vertex rho values for the rho degree mode.
    #[arg(long, value_delimiter = ',')]
    pub rho: Vec<String>,
    /// Edge ids kept out of every part.
    #[arg(long, value_delimiter = ',')]
    pub forbid: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub func: String,
    #[arg(long)]
    pub p: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientMode {
    Hakimi,
    Eulerian,
    Smooth,
    Rigid,
    Packed,
    Robust,
    OddForest,
    Factor,
}

#[derive(Debug, Args)]
pub struct OrientArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub mode: OrientMode,
    /// In-degree targets for hakimi.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub targets: Vec<i64>,
    /// Rigidity function for the rigid mode.
    #[arg(long)]
    pub func: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub ell: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub r1: Vec<i64>,
    #[arg(long, value_delimiter = ',')]
    pub r2: Vec<i64>,
    #[arg(long)]
    pub preferred: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Degree divisor for odd-forest.
    #[arg(long)]
    pub m: Option<usize>,
    /// Regularity for factor.
    #[arg(long)]
    pub r: Option<usize>,
    /// Seeded attempts for robust.
    #[arg(long, default_value_t = DEFAULT_RETRY_BUDGET)]
    pub retries: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HypothesisArg {
    NecessaryRigid,
    Cor32,
    SufficientRigid,
    Pack61,
    Pack63,
    Pack81,
    WeaklyConnected,
}

#[derive(Debug, Args)]
pub struct HypothesisArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub check: HypothesisArg,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub ell: Option<String>,
    /// Integer for cor32, rational for pack81.
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub excluded: usize,
    /// Constant weight in [0, 1] for pack63.
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub rho: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Sparse,
    PartitionConnected,
    Rigid,
    ArcConnected,
    EdgeConnected,
    WeaklyConnected,
    MatroidAxioms,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub check: OracleArg,
    #[arg(long)]
    pub func: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub ell: Option<String>,
    /// Root vector for arc-connected; zero by default.
    #[arg(long, value_delimiter = ',')]
    pub roots: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Complete,
    CompleteBipartite,
    Circulant,
    RandomSimple,
    RandomRegular,
    Doubled,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub offsets: Vec<usize>,
    /// Graph file to multiply.
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub multiplicity: usize,
    /// Also write the canonical graph file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
