use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Spectra and universal eigenvalue bounds for the clamped buckling problem
/// `(-Δ)^l u = -Λ Δu`.
#[derive(Debug, Parser)]
#[command(name = "polybuckle", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the polynomial Φ_Q for dimension N.
    Phi(PhiArgs),
    /// Print a_1 … a_{l-2}, their positive parts, and K(n, l).
    Coeffs(CoeffsArgs),
    /// Compute the lowest eigenvalues on an interval or rectangle.
    Solve(SolveArgs),
    /// Upper bounds for the next eigenvalue.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Run the verification harness on a computed spectrum.
    Verify(VerifyArgs),
    /// Evaluate the earlier second-order inequalities at a candidate.
    #[command(name = "compare-l2")]
    CompareL2(CompareArgs),
}

#[derive(Debug, Args)]
pub struct PhiArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long, conflicts_with = "exact")]
    pub json: bool,
    /// Print the ascending coefficient list.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub l: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub dim: u32,
    /// Edge lengths `A` (interval) or `A,B` (rectangle); unit edges by default.
    #[arg(long, value_delimiter = ',')]
    pub domain: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long)]
    pub l: u32,
    /// Basis functions per direction.
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub count: usize,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
    /// Also write the form matrices to FILE (JSON header line, then
    /// little-endian f64 row-major data).
    #[arg(long, value_name = "FILE")]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NextMethod {
    Cor11,
    Sharp,
    Sphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainMethodArg {
    Cor11,
    Sharp,
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    /// Upper bound for Λ_{k+1} from the first k eigenvalues of a spectrum file.
    Next(NextArgs),
    /// Iterate the bound from Λ_1 alone.
    Chain(ChainArgs),
}

/// Optional restatement of the spectrum file header; a mismatch is an
/// input error.
#[derive(Debug, Args)]
pub struct MetaArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
}

#[derive(Debug, Args)]
pub struct NextArgs {
    #[arg(long, value_enum)]
    pub method: NextMethod,
    #[arg(long, value_name = "FILE")]
    pub spectrum: PathBuf,
    /// Number of eigenvalues used; all of them by default.
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub meta: MetaArgs,
    #[arg(long, conflicts_with = "exact")]
    pub json: bool,
    /// Print the bound as an exact rational (quadratic bound with k = 1).
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long)]
    pub lambda1: f64,
    #[arg(long)]
    pub count: usize,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub l: u32,
    #[arg(long, value_enum)]
    pub method: ChainMethodArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long)]
    pub l: u32,
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub kmax: usize,
    #[arg(long)]
    pub json: bool,
    /// Worker threads for independent resolutions; results are ordered
    /// identically for any value.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_name = "FILE")]
    pub spectrum: PathBuf,
    #[arg(long)]
    pub candidate: f64,
    /// Scalar weight for the spherical inequality.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub meta: MetaArgs,
    #[arg(long)]
    pub json: bool,
}
