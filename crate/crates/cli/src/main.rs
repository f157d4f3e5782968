mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spherepack::coordination::DEFAULT_MEMORY_BUDGET;

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "spherepack",
    version,
    about = "Exact lattice and sphere-packing computations"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Enumeration node budget.
    #[arg(long, default_value_t = 1_000_000_000, global = true)]
    pub max_nodes: u64,
    /// Memory budget in bytes for breadth-first shells.
    #[arg(long, default_value_t = DEFAULT_MEMORY_BUDGET, global = true)]
    pub max_memory: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Built-in lattices.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Determinant, minimum, kissing number and densities.
    Invariants { input: String },
    /// Theta series through the given cutoff.
    Theta {
        input: String,
        #[arg(long, default_value = "6")]
        cutoff: String,
    },
    /// Coordination sequence and generating-function numerator.
    Coordseq {
        input: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Theta series of the lattice and of its shadow.
    Shadow {
        input: String,
        #[arg(long, default_value = "6")]
        cutoff: String,
    },
    /// Minimal-norm bounds for unimodular lattices.
    Bounds {
        #[arg(long, default_value_t = 48)]
        max_dim: usize,
    },
    /// Shadow test for odd unimodular lattices with a given minimal norm.
    Nonexist {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        min_norm: u64,
        #[arg(long, default_value = "4")]
        cutoff: String,
    },
    /// Whether the lattice is isometric to its dual rescaled by N.
    Modular {
        input: String,
        #[arg(long = "N", short = 'N')]
        n: u64,
    },
    /// Build a lattice or packing.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Built-in codes and code files.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Center density and log-scale ordinate for comparison across dimensions.
    Fig3 {
        #[arg(long, value_delimiter = ',', default_values_t = commands::FIG3_DEFAULT.map(String::from))]
        names: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List,
    Show {
        name: String,
    },
    /// Recompute recorded invariants (all entries when no name is given).
    Verify {
        name: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OutFile {
    /// Also write the result in the lattice/packing file format.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// Construction A from a binary code.
    A {
        #[arg(long)]
        code: String,
        #[command(flatten)]
        out: OutFile,
    },
    /// Construction B* from a compatible code pair.
    Bstar {
        #[arg(long)]
        b: String,
        /// Defaults to the dual of B.
        #[arg(long)]
        c: Option<String>,
        #[command(flatten)]
        out: OutFile,
    },
    /// Leech lattice from the Golay code.
    LeechGolay {
        #[arg(long, default_value = "golay24")]
        code: String,
        #[command(flatten)]
        out: OutFile,
    },
    /// Leech lattice as w^⊥/w in the even Lorentzian lattice.
    LeechLorentzian {
        #[command(flatten)]
        out: OutFile,
    },
    /// The D9 translate family with shift parameter θ.
    D9plus {
        #[arg(long, default_value = "1")]
        theta: String,
        #[command(flatten)]
        out: OutFile,
    },
    /// D_n together with its translate by (1/2, …, 1/2).
    Dplus {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutFile,
    },
    /// Add one layer over a deep hole.
    Stack {
        input: String,
        /// Hole in lattice coordinates, comma separated; searched for when omitted.
        #[arg(long, value_delimiter = ',')]
        hole: Option<Vec<String>>,
        /// Norm of the new basis vector; defaults to the minimal norm.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutFile,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodeCmd {
    Best10 {
        #[command(flatten)]
        out: OutFile,
    },
    Golay24 {
        #[command(flatten)]
        out: OutFile,
    },
    Qr18 {
        #[command(flatten)]
        out: OutFile,
    },
    Info {
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match commands::run(&cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
