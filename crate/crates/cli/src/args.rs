use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "refent", version, about = "Reflected entropy of Unruh-degraded Bell, W and GHZ states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// S_R, I, h and bounds over a grid in r, T or alpha.
    Sweep(SweepArgs),
    /// Scan S_R^xi(A:BC) - S_R^xi(A:B) over the Renyi index.
    Counterexample(CounterexampleArgs),
    /// sigma(T) = (1/omega) dS_R(A:B)/d(1/T) on a log-spaced T grid.
    Sigma(SigmaArgs),
    /// Run the built-in checks; exit 1 if any fails.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variable {
    R,
    #[value(name = "T")]
    T,
    Alpha,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// bell, werner or ghz
    #[arg(long)]
    pub state: String,

    /// Family weight (default: maximally entangled value)
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Comma-separated selectors, e.g. AB,ABbar,BBbar or A:BbarC
    #[arg(long, default_value = "AB,ABbar,BBbar", value_delimiter = ',')]
    pub pairs: Vec<String>,

    #[arg(long = "var", value_enum, default_value = "r")]
    pub variable: Variable,

    /// min:max:steps; endpoints accept `pi` and `pi/N`
    #[arg(long)]
    pub range: Option<String>,

    /// Fixed acceleration parameter for alpha sweeps
    #[arg(long)]
    pub r: Option<String>,

    /// Mode frequency for T sweeps
    #[arg(long)]
    pub omega: Option<f64>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CounterexampleArgs {
    /// A has n+1 levels
    #[arg(long, default_value_t = 3)]
    pub n: usize,

    /// B has m+1 levels
    #[arg(long, default_value_t = 2)]
    pub m: usize,

    #[arg(long)]
    pub a: f64,

    #[arg(long)]
    pub b: f64,

    /// Renyi index grid, min:max:steps
    #[arg(long, default_value = "0.01:1.99:200")]
    pub xi: String,

    /// diagonal or symmetrized
    #[arg(long, default_value = "diagonal")]
    pub reading: String,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[arg(long)]
    pub state: String,

    #[arg(long)]
    pub alpha: Option<f64>,

    /// Comma-separated mode frequencies
    #[arg(long, default_value = "10,20,30,40", value_delimiter = ',', allow_hyphen_values = true)]
    pub omega: Vec<f64>,

    /// Temperature grid min:max:steps (log-spaced)
    #[arg(long = "t", default_value = "0.1:1000:100")]
    pub t: String,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// all, values, closed-form, bounds, monotonicity, counterexample or sigma
    #[arg(long, default_value = "all")]
    pub scope: String,

    /// Replace every check's tolerance
    #[arg(long)]
    pub tol: Option<f64>,

    /// Inject a fault (natural-log, swap-bogoliubov) to see the suite fail
    #[arg(long, hide = true)]
    pub inject: Option<String>,
}
