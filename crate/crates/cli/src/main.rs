mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deckrecon_core::Error;

/// Simulate graph decks, remove cards and reconstruct graph parameters from what is left.
#[derive(Parser, Debug)]
#[command(name = "deckrecon", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Exit with status 3 when a result falls outside its guaranteed regime.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph as an edge list, with a ground-truth sidecar `<output>.truth.json`.
    Gen(GenArgs),
    /// Build decks or remove cards from them.
    #[command(subcommand)]
    Deck(DeckCommand),
    /// Reconstruct a parameter from a deck file.
    #[command(subcommand)]
    Recon(ReconCommand),
    /// Brute-force oracles on small graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Write the extremal graph pairs and their common-card count.
    #[command(subcommand)]
    Counterexample(CounterexampleCommand),
    /// Run a configured experiment.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Run the self-check suite.
    Verify(VerifyArgs),
    /// Largest number of missing cards each guarantee tolerates.
    Thresholds(ThresholdArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    /// Average-degree cap.
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// random_forest: number of edges kept.
    #[arg(long)]
    pub edges: Option<u64>,
    /// erdos_renyi_capped: edge probability before trimming.
    #[arg(long)]
    pub p: Option<f64>,
    /// star_union: leaves per star.
    #[arg(long)]
    pub leaves: Option<usize>,
    /// from_file: edge-list to load.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FamilyArg {
    Matching,
    Cycle,
    RandomForest,
    ErdosRenyiCapped,
    DisjointTriangles,
    StarUnion,
    FromFile,
}

#[derive(Subcommand, Debug)]
pub enum DeckCommand {
    /// Full deck of an edge-list graph.
    Build(DeckBuildArgs),
    /// Remove `k` cards from a deck file.
    Remove(DeckRemoveArgs),
}

#[derive(Args, Debug)]
pub struct DeckBuildArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Record r-clique counts on every card.
    #[arg(long)]
    pub cliques: Option<usize>,
    /// Attach sub-card histograms for vertices above degree 100·d², as needed by `recon degseq`.
    #[arg(long)]
    pub d: Option<u64>,
    /// Number of top cards (by edge count) that get sub-cards; use k + 1 for adversarial removal.
    #[arg(long, default_value_t = 1)]
    pub subcard_depth: usize,
}

#[derive(Args, Debug)]
pub struct DeckRemoveArgs {
    #[arg(long)]
    pub deck: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "random")]
    pub policy: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// target_degrees: comma-separated deleted-vertex degrees.
    #[arg(long, value_delimiter = ',')]
    pub target_degrees: Vec<u64>,
    /// target_degrees: the true edge count (simulation only).
    #[arg(long)]
    pub true_edges: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ReconCommand {
    Edges(ReconArgs),
    Cliques(CliqueArgs),
    Degseq(DegseqArgs),
}

#[derive(Args, Debug)]
pub struct ReconArgs {
    #[arg(long)]
    pub deck: PathBuf,
    /// Average-degree bound; inferred from the deck when absent.
    #[arg(long)]
    pub d: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CliqueArgs {
    #[command(flatten)]
    pub base: ReconArgs,
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    /// Reference card: most edges, or most cliques.
    #[arg(long, value_enum, default_value_t = ReferenceArg::MaxEdges)]
    pub reference: ReferenceArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ReferenceArg {
    MaxEdges,
    MaxCliques,
}

#[derive(Args, Debug)]
pub struct DegseqArgs {
    #[command(flatten)]
    pub base: ReconArgs,
    /// Use the window-and-rounding path even when k <= 1.
    #[arg(long)]
    pub force_general: bool,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Common-card count of two graphs of equal order.
    Cc {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    /// Check the card degree-count identity for every t.
    Identity {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum CounterexampleCommand {
    Star(PairArgs),
    Biclique(PairArgs),
    Densified {
        #[command(flatten)]
        pair: PairArgs,
        /// Edge list with 3p + 4 vertices; defaults to the empty graph.
        #[arg(long)]
        filler: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub p: usize,
    /// Also write `g.txt` and `h.txt` here.
    #[arg(long)]
    pub dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCommand {
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
    pub level: LevelArg,
    /// Additionally check that this deck file parses.
    #[arg(long)]
    pub deck: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum LevelArg {
    Fast,
    Full,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub r: Option<usize>,
}

/// A check ran and found a violation.
#[derive(Debug)]
pub struct Violation(pub String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant violation: {}", self.0)
    }
}

impl std::error::Error for Violation {}

/// A result was produced but lies outside its guaranteed regime (`--strict` only).
#[derive(Debug)]
pub struct OutOfRegime(pub String);

impl std::fmt::Display for OutOfRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "out of regime: {}", self.0)
    }
}

impl std::error::Error for OutOfRegime {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<Violation>() {
        return 1;
    }
    if err.is::<OutOfRegime>() {
        return 3;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Regime(_) | Error::NoWindow { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
