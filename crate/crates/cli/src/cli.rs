use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Approximation constants, Lagrange-type spectra and cusp geometry.
#[derive(Debug, Parser)]
#[command(name = "lagrange", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximation constant of a point: c(x), c_I(x) or c'_I(x).
    ApproxConst(ApproxArgs),
    /// Sampled spectrum from closed-geodesic heights, one row per value.
    Spectrum(SpectrumArgs),
    /// Closed-geodesic height of a matrix, or limsup excursion height of a ray.
    Height(HeightArgs),
    /// Horoball penetration depth against the closed form.
    Penetration(PenetrationArgs),
    /// c(x), its dual height and the excursion limsup for a periodic word.
    DualityCheck(DualityArgs),
    /// Bounds, accumulation candidates and duality checks on a sample.
    ClosureReport(ClosureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SettingArg {
    Rational,
    Bianchi,
    Heisenberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "rational")]
    pub setting: SettingArg,
    /// Squarefree m selecting the maximal order of Q(i√m).
    #[arg(long, default_value_t = 1)]
    pub m: i64,
    /// Ideal generators, comma separated, e.g. "2,1+w" (i may stand for w when m = 1).
    #[arg(long, default_value = "1")]
    pub ideal: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub common: Common,
    /// Continued fraction word, e.g. "[1;(1)]" or "[2; 1, 2, ...]" (rational).
    #[arg(long)]
    pub cf: Option<String>,
    /// Complex point, e.g. "(1+i*sqrt3)/2" (bianchi).
    #[arg(long)]
    pub x: Option<String>,
    /// Heisenberg point "z_re,z_im;w_re,w_im" (heisenberg).
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub norm_bound: i64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 8)]
    pub word_length: usize,
    /// Bound on |c| for the form minimum search.
    #[arg(long)]
    pub cutoff: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HeightArgs {
    #[command(flatten)]
    pub common: Common,
    /// Loxodromic matrix "[[a,b],[c,d]]".
    #[arg(long)]
    pub matrix: Option<String>,
    /// Continued fraction word of the ray's endpoint (rational).
    #[arg(long)]
    pub cf: Option<String>,
    #[arg(long, default_value_t = 40)]
    pub depth: u32,
    #[arg(long)]
    pub cutoff: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PenetrationArgs {
    #[command(flatten)]
    pub common: Common,
    /// Group element "[[a,b],[c,d]]"; its lower-left entry is the denominator.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Denominator q (or c in the Heisenberg setting).
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Args)]
pub struct DualityArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub cf: String,
    #[arg(long, default_value_t = 40)]
    pub depth: u32,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 14)]
    pub word_length: usize,
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    /// Asymptotic-height estimates to compare with the sample (repeatable).
    #[arg(long = "estimate")]
    pub estimates: Vec<f64>,
    /// Periodic words whose excursion limsup joins the estimates (repeatable).
    #[arg(long)]
    pub cf: Vec<String>,
    #[arg(long, default_value_t = 40)]
    pub depth: u32,
}
