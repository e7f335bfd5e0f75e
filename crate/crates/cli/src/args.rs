use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "liftlab", version, about = "Random lifts, covers, spectra and return probabilities of graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Serialize)]
pub struct GlobalArgs {
    /// Seed for every random choice of the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker thread cap (results do not depend on it).
    #[arg(long, global = true, env = "LIFTLAB_THREADS")]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Write a CSV side-table here.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Directory for plot series, one CSV per series.
    #[arg(long, global = true)]
    pub plot_data: Option<PathBuf>,
    /// Indent the JSON output
    #[arg(long, global = true)]
    #[serde(skip)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build, inspect or export graphs.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Sample a phi-random lift of a base graph.
    Lift(LiftArgs),
    /// Ball of the cover of a base graph determined by a voltage assignment.
    CoverBall(CoverBallArgs),
    /// Markov-operator spectra.
    Spectrum(SpectrumArgs),
    /// Return probabilities and spectral-radius estimates.
    #[command(subcommand)]
    Walk(WalkCommand),
    /// Skeleton Markov chain of rooted types.
    Skeleton(SkeletonArgs),
    /// Desk-scale experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Subcommand, Debug)]
pub enum GraphCommand {
    Build(BuildArgs),
    Inspect(InspectArgs),
    Export(ExportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cycle,
    Path,
    Complete,
    Star,
    Bouquet,
    Petersen,
    Hypercube,
    RandomRegular,
    Configuration,
    RandomConnected,
}

#[derive(Args, Debug, Serialize)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Vertex count (leaves for a star, loops for a bouquet, dimension for a hypercube).
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree for random regular graphs.
    #[arg(long)]
    pub d: Option<usize>,
    /// Degree law for the configuration model, inline JSON or a file.
    #[arg(long)]
    pub distribution: Option<String>,
    /// Probability of each extra pair in random connected graphs.
    #[arg(long, default_value_t = 0.3)]
    pub extra_probability: f64,
    /// Reject pairings with loops or multiple edges.
    #[arg(long)]
    pub simple: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct InspectArgs {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Args, Debug, Serialize)]
pub struct ExportArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
    pub format: ExportFormat,
    /// Also write the exported text to this file.
    #[arg(long)]
    pub to: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum VoltageKind {
    /// A distinct generator on every edge.
    Free,
    /// Generators on non-tree edges only: the universal cover.
    Tree,
    /// Identity everywhere (rank 1): disjoint copies of the base.
    Trivial,
}

#[derive(Args, Debug, Serialize)]
pub struct VoltageArgs {
    /// Voltage assignment JSON; overrides --voltage-kind.
    #[arg(long)]
    pub voltage: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VoltageKind::Free)]
    pub voltage_kind: VoltageKind,
}

#[derive(Args, Debug, Serialize)]
pub struct LiftArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[command(flatten)]
    pub voltage: VoltageArgs,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct CoverBallArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[command(flatten)]
    pub voltage: VoltageArgs,
    #[arg(long, default_value_t = 0)]
    pub vertex: usize,
    #[arg(long)]
    pub radius: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMode {
    Dense,
    Extremes,
    New,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Dense,
    Lanczos,
}

#[derive(Args, Debug, Serialize, Clone, Copy)]
pub struct LanczosArgs {
    #[arg(long, default_value_t = 1e-6)]
    pub lanczos_tolerance: f64,
    /// Default: 10 sqrt(dimension).
    #[arg(long)]
    pub lanczos_max_iterations: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub mode: SpectrumMode,
    /// Graph for dense and extremes modes.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Number of largest-magnitude eigenvalues in extremes mode.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// In extremes mode, deflate the stationary direction.
    #[arg(long)]
    pub nontrivial: bool,
    /// Base graph for new mode; the lift is sampled from --seed.
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[command(flatten)]
    pub voltage: VoltageArgs,
    /// Fold count for new mode.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Solver::Dense)]
    pub solver: Solver,
    #[command(flatten)]
    pub lanczos: LanczosArgs,
}

#[derive(Subcommand, Debug)]
pub enum WalkCommand {
    /// Exact return probabilities p_2, .., p_2N.
    Returns(WalkSourceArgs),
    /// Quenched spectral-radius estimate at one root.
    Quenched(WalkSourceArgs),
    /// Annealed estimate over a random rooted-ball ensemble.
    Annealed(AnnealedArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct WalkSourceArgs {
    /// Finite graph.
    #[arg(long, group = "source")]
    pub graph: Option<PathBuf>,
    /// Base graph whose cover (by the voltage options) is walked on.
    #[arg(long, group = "source")]
    pub cover_of: Option<PathBuf>,
    /// Regular tree of this degree.
    #[arg(long, group = "source")]
    pub tree: Option<usize>,
    #[command(flatten)]
    pub voltage: VoltageArgs,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// N: probabilities up to 2N steps.
    #[arg(long, default_value_t = 10)]
    pub half_steps: usize,
    /// Skip exact rational arithmetic.
    #[arg(long)]
    pub floats: bool,
    /// Also run this many Monte-Carlo walkers as a cross-check.
    #[arg(long)]
    pub mc_walkers: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct AnnealedArgs {
    /// Unimodular Galton-Watson degree law, inline JSON or a file.
    #[arg(long, group = "ensemble")]
    pub distribution: Option<String>,
    /// Uniform mixture of regular trees, e.g. 3,4.
    #[arg(long, group = "ensemble", value_delimiter = ',')]
    pub trees: Option<Vec<usize>>,
    #[arg(long, default_value_t = 10)]
    pub half_steps: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub floats: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct SkeletonArgs {
    /// Finite graph: exact whole-graph types.
    #[arg(long, group = "source")]
    pub graph: Option<PathBuf>,
    /// Base graph of a cover: types are radius-r balls.
    #[arg(long, group = "source")]
    pub cover_of: Option<PathBuf>,
    #[command(flatten)]
    pub voltage: VoltageArgs,
    /// Type radius r for covers.
    #[arg(long, default_value_t = 1)]
    pub radius: usize,
    /// Sample radius for covers; default r + diam + 1.
    #[arg(long)]
    pub sample_radius: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCommand {
    /// Second eigenvalue of random regular graphs against the tree bound
    AlonBoppana(AlonBoppanaArgs),
    /// Fraction of random regular graphs within epsilon of Ramanujan
    Friedman(FriedmanArgs),
    /// New spectrum of random lifts against the cover spectrum
    BordenaveCollins(BordenaveCollinsArgs),
    /// Lifts of irregular bases against the universal cover radius
    RelativeRamanujan(RelativeRamanujanArgs),
    /// Annealed return-probability estimate for configuration models
    ConfigModel(ConfigModelArgs),
    /// Cheeger constant of graphs decorated with pendant paths
    Fraczyk(FraczykArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct AlonBoppanaArgs {
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[arg(long, value_delimiter = ',', default_value = "200,1000,4000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.05)]
    pub slack: f64,
    #[arg(long, default_value_t = 100)]
    pub size_floor: usize,
    #[command(flatten)]
    pub lanczos: LanczosArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct FriedmanArgs {
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.06)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.9)]
    pub required_fraction: f64,
    #[command(flatten)]
    pub lanczos: LanczosArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct BordenaveCollinsArgs {
    /// Base graph; default a bouquet of two loops.
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[command(flatten)]
    pub voltage: VoltageArgs,
    #[arg(long, value_delimiter = ',', default_value = "200,500,1000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.06)]
    pub epsilon: f64,
    /// Reference radius; default the walk estimate for the cover.
    #[arg(long)]
    pub rho_reference: Option<f64>,
    #[arg(long, default_value_t = 0.9)]
    pub required_fraction: f64,
    #[arg(long, default_value_t = 10)]
    pub half_steps: usize,
    /// Largest lift with dense Hausdorff distances.
    #[arg(long, default_value_t = 600)]
    pub dense_cap: usize,
    #[command(flatten)]
    pub lanczos: LanczosArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorArg {
    CenteredLabel,
    Constant,
    TypeOnly,
    RandomCosine,
}

#[derive(Args, Debug, Serialize)]
pub struct RelativeRamanujanArgs {
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[command(flatten)]
    pub voltage: VoltageArgs,
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub block_radius: usize,
    #[arg(long, default_value_t = 1)]
    pub label_seed: u64,
    #[arg(long, default_value_t = 12)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = FactorArg::CenteredLabel)]
    pub factor: FactorArg,
    #[arg(long)]
    pub rho_reference: Option<f64>,
    #[arg(long, default_value_t = 0.08)]
    pub margin: f64,
    #[arg(long, default_value_t = 4)]
    pub k_min: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub rayleigh_slack: f64,
    #[arg(long, default_value_t = 10)]
    pub half_steps: usize,
    #[command(flatten)]
    pub lanczos: LanczosArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ConfigModelArgs {
    /// Degree law, inline JSON or a file.
    #[arg(long)]
    pub distribution: String,
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0.05)]
    pub slack: f64,
    #[arg(long, default_value_t = 10)]
    pub half_steps: usize,
    #[arg(long, default_value_t = 200)]
    pub ugw_samples: usize,
    #[arg(long, default_value_t = 0.05)]
    pub evidence_margin: f64,
    #[command(flatten)]
    pub lanczos: LanczosArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct FraczykArgs {
    #[arg(long, default_value_t = 50)]
    pub corpus_size: usize,
    #[arg(long, default_value_t = 10)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 6)]
    pub label_range: usize,
    #[arg(long, default_value_t = 0.3)]
    pub extra_edge_probability: f64,
}
