use clap::{Args, Parser, Subcommand, ValueEnum};

use riordan::rational::{parse_rational, parse_rational_list};
use riordan::Rational;

#[derive(Parser, Debug)]
#[command(name = "riordan", version, about = "Riordan matrices, their Lie algebra, and the flows they generate")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputSpec,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OutputSpec {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Truncation order of series; matrices get `trunc + 1` rows.
    #[arg(long, default_value_t = 8, global = true)]
    pub trunc: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exact, global = true)]
    pub mode: Mode,
    /// Comparison tolerance in float mode.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub tol: f64,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Aligned text for matrices, indented JSON otherwise.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a named triangle or T(f|g) for explicit coefficient lists.
    Triangle(TriangleArgs),
    /// The one-parameter subgroup e^{tL} of L(a x^n, b x^n).
    Exp(ExpArgs),
    /// Apply T(f|g) to a series h.
    Apply(ApplyArgs),
    /// Trace the flow of the projected system x' = A x.
    Flow(FlowArgs),
    /// Run an invariant check; exits 1 on failure.
    Check(CheckArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleName {
    Pascal,
    Identity,
    M,
    MinusM,
}

#[derive(Args, Debug)]
pub struct TriangleArgs {
    #[arg(value_enum, required_unless_present_all = ["f", "g"])]
    pub name: Option<TriangleName>,
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true, conflicts_with = "name", requires = "g")]
    pub f: Option<List>,
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true, conflicts_with = "name", requires = "f")]
    pub g: Option<List>,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub rows: u64,
}

#[derive(Args, Debug, Clone)]
pub struct GeneratorArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1")]
    pub a: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1")]
    pub b: Rational,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct ExpArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1")]
    pub t: Rational,
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    pub f: List,
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    pub g: List,
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    pub h: List,
}

#[derive(Args, Debug)]
pub struct FlowArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim: u64,
    /// Initial state; defaults to e_0.
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true)]
    pub x0: Option<List>,
    #[arg(long, value_parser = rational_list, allow_hyphen_values = true, default_value = "0,1")]
    pub t: List,
    /// Also integrate with RK4 using this many steps per sample time.
    #[arg(long)]
    pub rk4: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    PseudoInvolution,
    Symmetry,
    TimeReversal,
    OracleExp,
    Ftrm,
    ASequence,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub what: CheckName,
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1")]
    pub t: Rational,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim: u64,
    /// Number of random cases for the seeded checks.
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// A comma separated list given as one argument, e.g. `--f 1,-1,1/2`.
#[derive(Clone, Debug)]
pub struct List(pub Vec<Rational>);

fn rational_list(s: &str) -> Result<List, String> {
    parse_rational_list(s).map(List).map_err(|e| e.to_string())
}
