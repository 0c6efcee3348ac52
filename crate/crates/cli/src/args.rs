use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "conngame", version, about = "Solve, generate and inspect shortest connection game instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the equilibrium play of an instance.
    Solve(SolveArgs),
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Run an oracle or property suite.
    Verify(VerifyArgs),
    /// Step through a game against the equilibrium opponent.
    Play(PlayArgs),
    /// Equilibrium total over cooperative total.
    Poa(PoaArgs),
    /// Print the DOT description of an instance.
    Export(InputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rules {
    R2,
    R3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Auto,
    Exact,
    Cactus,
    Tree,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Instance file, `-` for standard input, or a built-in `example-1`, `example-2`, `example-3`.
    pub input: String,
    /// Value of M for the built-in examples 2 and 3.
    #[arg(long)]
    pub m: Option<String>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Movement rules; defaults to the instance's `rules` line, else r2.
    #[arg(long, value_enum)]
    pub rules: Option<Rules>,
    #[arg(long, value_enum, default_value = "auto")]
    pub engine: Engine,
    /// Answer whether cost_a <= CA and cost_b <= CB.
    #[arg(long, num_args = 2, value_names = ["CA", "CB"])]
    pub check_bounds: Option<Vec<String>>,
    #[arg(long)]
    pub json: bool,
    /// Print the dynamic-programming tables (cactus engine only).
    #[arg(long)]
    pub dump_tables: bool,
    /// Maximum number of game states the exact solver may expand.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub kind: GenerateKind,
    /// Write the instance here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write the DOT description to this file.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenerateKind {
    /// One of the three small worked instances.
    Example {
        #[arg(long)]
        which: u8,
        #[arg(long)]
        m: Option<String>,
    },
    /// Cactus for a 3-partition input.
    #[command(name = "3part")]
    ThreePart {
        /// Comma-separated positive integers, a multiple of three of them.
        #[arg(long)]
        items: String,
        #[arg(long, default_value_t = 4)]
        a_spine: usize,
        #[arg(long, default_value_t = 3)]
        b_spine: usize,
        /// Number of 2-cycles at b5.
        #[arg(long)]
        padding: Option<u64>,
    },
    /// Bipartite instance for a quantified formula.
    Qsat {
        /// For example `E x1 A x2 : (x1 | x2) & (x1 | ~x2)`.
        #[arg(long)]
        formula: String,
        /// Variant without the w/z vertices, for simple-path play.
        #[arg(long)]
        simple: bool,
        /// Normalize first (one universal literal per clause).
        #[arg(long)]
        normalize: bool,
    },
    /// Acyclic instance for a vertex cover question.
    Vc {
        /// Undirected edges on vertices 1..n, like `1-2,1-3,2-3`.
        #[arg(long)]
        edges: String,
        /// Vertex count; defaults to the largest label.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: usize,
        /// Split every edge through a midpoint (bipartite output).
        #[arg(long)]
        split: bool,
        /// Cost of the gamma->eta and lambda->mu edges.
        #[arg(long, default_value = "3")]
        dead_end_cost: String,
    },
    RandomCactus(SeededArgs),
    RandomTree(SeededArgs),
    RandomDag(SeededArgs),
    /// Large cactus used for timing the dynamic program.
    Scaling(SeededArgs),
}

#[derive(Args, Debug)]
pub struct SeededArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    DpVsExact,
    TreeVsExact,
    Gadgets,
    Examples,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Largest instance size.
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Args, Debug)]
pub struct PlayArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// The player you control.
    #[arg(long = "as", value_enum)]
    pub side: Side,
    #[arg(long, value_enum)]
    pub rules: Option<Rules>,
    /// Scripted moves, comma separated: `t->c`, `t→c` or a move index.
    #[arg(long)]
    pub moves: Option<String>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct PoaArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub rules: Option<Rules>,
    #[arg(long)]
    pub budget: Option<u64>,
}
