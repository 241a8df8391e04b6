use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normbound::classes::ClassId;
use normbound::{ExtIndex, Field};

#[derive(Debug, Parser)]
#[command(name = "normbound", version, about = "Induced Hölder matrix norms, norm-ratio bounds and equality classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute ‖A‖_{p,q} with a witness vector.
    Norm(NormArgs),
    /// Decide whether A attains the bound, for a class or a single (r,s).
    Check(CheckArgs),
    /// Tabulate ‖A‖_{r,s} against the bound over an (r,s) grid as CSV.
    Sweep(SweepArgs),
    /// Build a matrix that attains the bound and confirm it.
    Generate(GenerateArgs),
    /// Run the invariant battery on a matrix.
    Verify(VerifyArgs),
}

/// Norm exponent: a number in [1, ∞) or `inf`.
pub fn parse_index(s: &str) -> Result<ExtIndex, String> {
    s.parse().map_err(|e: normbound::Error| e.to_string())
}

pub fn parse_class(s: &str) -> Result<ClassId, String> {
    s.parse().map_err(|e: normbound::Error| e.to_string())
}

/// `p,q,value`.
pub fn parse_assertion(s: &str) -> Result<(ExtIndex, ExtIndex, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [p, q, v] = parts.as_slice() else {
        return Err(format!("expected p,q,value, got {s:?}"));
    };
    let v: f64 = v.trim().parse().map_err(|_| format!("not a number: {v:?}"))?;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("asserted norm must be finite and nonnegative, got {v}"));
    }
    Ok((parse_index(p)?, parse_index(q)?, v))
}

#[derive(Debug, Clone, Args)]
pub struct Exponents {
    #[arg(short, long, value_parser = parse_index)]
    pub p: ExtIndex,
    #[arg(short, long, value_parser = parse_index)]
    pub q: ExtIndex,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    /// Matrix file (JSON).
    pub file: PathBuf,
    #[command(flatten)]
    pub pq: Exponents,
    /// Fail with exit code 2 unless the value is exact.
    #[arg(long)]
    pub exact_only: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Brute-force samples added to estimated norms (0 disables).
    #[arg(long, default_value_t = 0)]
    pub budget: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub pq: Exponents,
    /// E_1inf, E_11, E_infinf or E_inf1.
    #[arg(long, value_parser = parse_class, conflicts_with_all = ["r", "s"])]
    pub class: Option<ClassId>,
    #[arg(short, long, value_parser = parse_index, requires = "s")]
    pub r: Option<ExtIndex>,
    #[arg(short, long, value_parser = parse_index, requires = "r")]
    pub s: Option<ExtIndex>,
    #[arg(long, default_value_t = normbound::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub budget: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub pq: Exponents,
    /// Comma-separated r values, e.g. `2,4,inf`.
    #[arg(long, value_parser = parse_index, value_delimiter = ',', required = true)]
    pub r_grid: Vec<ExtIndex>,
    #[arg(long, value_parser = parse_index, value_delimiter = ',', required = true)]
    pub s_grid: Vec<ExtIndex>,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hadamard,
    Dft,
    Tensor,
    Single,
    Svd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Target class; required for `svd`, defaults per kind otherwise.
    #[arg(long, value_parser = parse_class)]
    pub class: Option<ClassId>,
    /// Number of columns (the order for `hadamard` and `dft`).
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of rows; defaults to `m`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Singular values for `svd`, largest first.
    #[arg(long, value_delimiter = ',')]
    pub sigma: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "real")]
    pub field: FieldArg,
    /// Exponents at which the class is confirmed.
    #[arg(short, long, value_parser = parse_index, default_value = "2")]
    pub p: ExtIndex,
    #[arg(short, long, value_parser = parse_index, default_value = "2")]
    pub q: ExtIndex,
    /// Row of the entry for `single` (0-based).
    #[arg(long, default_value_t = 0)]
    pub row: usize,
    /// Column of the entry for `single` (0-based).
    #[arg(long, default_value_t = 0)]
    pub col: usize,
    /// Value of the entry for `single`.
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// Output path for the matrix file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = normbound::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    /// Replace the computed ‖A‖_{p,q} by `value` (format `p,q,value`).
    #[arg(long, value_parser = parse_assertion)]
    pub assert_norm: Option<(ExtIndex, ExtIndex, f64)>,
}
