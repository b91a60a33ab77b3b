use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sepcheck_core::Tolerances;

#[derive(Debug, Parser)]
#[command(
    name = "sepcheck",
    version,
    about = "Separability checks for pure n-qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the state is a product of single-qubit states.
    CheckFull(CheckFullArgs),
    /// Decide whether the state splits into two factors.
    CheckPq(CheckPqArgs),
    /// Find the finest factorization over all qubit subsets.
    Decompose(DecomposeArgs),
    /// Write a random state with a planted block structure.
    Random(RandomArgs),
    /// Time check-full on full-support product states.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TolArgs {
    /// Amplitudes with modulus at or below this count as zero.
    #[arg(long, default_value_t = Tolerances::default().zero)]
    pub tol_zero: f64,
    /// Relative tolerance for equality of amplitude products.
    #[arg(long, default_value_t = Tolerances::default().pp)]
    pub tol_pp: f64,
    /// Relative tolerance for vanishing minors in the rank-1 oracle.
    #[arg(long, default_value_t = Tolerances::default().rank)]
    pub tol_rank: f64,
}

impl TolArgs {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            zero: self.tol_zero,
            pp: self.tol_pp,
            rank: self.tol_rank,
        }
    }
}

#[derive(Debug, Args)]
pub struct CheckFullArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Cross-check with the rank-1 oracle; exit 3 on disagreement.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct CheckPqArgs {
    pub file: PathBuf,
    /// Split after the first p qubits.
    #[arg(long, conflicts_with = "subset", required_unless_present = "subset")]
    pub p: Option<usize>,
    /// Comma-separated qubits forming the first factor.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<usize>>,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    /// Total qubit count; must match the block sizes when both are given.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated block sizes, e.g. 1,2,1.
    #[arg(long, value_delimiter = ',')]
    pub blocks: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    pub n_min: usize,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub tol: TolArgs,
}
