//! Command-line surface and the validated run configuration echoed into reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hdx_core::rational::{format, parse};
use hdx_core::Rational;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "hdx", version, about = "Exact analysis of weighted simplicial complexes and their F2 cochains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a complex and write it as `.cplx`.
    Generate(GenerateArgs),
    /// Face counts, weights, cohomology dimensions and link spectra.
    Analyze(AnalysisArgs),
    /// Double-balance constants, their inheritance, dense faces and pseudorandomness.
    Balance(AnalysisArgs),
    /// Link spectra, edge bounds and the complement-walk graph.
    Spectra(AnalysisArgs),
    /// Expansion constants and the δ₁ / cohomology bounds built on them.
    Expansion(AnalysisArgs),
    /// Every check above, scaled to what the enumeration budget allows.
    #[command(name = "verify-all")]
    VerifyAll(AnalysisArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Analyze(_) => "analyze",
            Command::Balance(_) => "balance",
            Command::Spectra(_) => "spectra",
            Command::Expansion(_) => "expansion",
            Command::VerifyAll(_) => "verify-all",
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// complete | rp2_6 | torus_7 | single_simplex | linial_meshulam
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Face probability for linial_meshulam.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout when absent.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse(s).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct AnalysisArgs {
    /// Input complex (`.cplx`).
    pub complex: PathBuf,
    /// A cochain (`.cochain`) to analyse instead of sampled ones.
    #[arg(long)]
    pub cochain: Option<PathBuf>,
    /// Cochain dimension (default 1, capped at d-1).
    #[arg(long)]
    pub k: Option<usize>,
    /// Balance dimension ℓ < k (default: every ℓ < k).
    #[arg(long)]
    pub ell: Option<usize>,
    /// Balance constant α ≥ 1 (default: measured per cochain).
    #[arg(long, value_parser = rational_arg)]
    pub alpha: Option<Rational>,
    /// Density threshold η in (0, 1) (default ε/(k+1)).
    #[arg(long, value_parser = rational_arg)]
    pub eta: Option<Rational>,
    /// ε in (0, 1) (default 1/10).
    #[arg(long, value_parser = rational_arg)]
    pub epsilon: Option<Rational>,
    /// Spectral parameter overriding the measured max(0, λ₂).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Sampled cochains per family.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Exit nonzero when any check was infeasible.
    #[arg(long)]
    pub strict: bool,
    /// Report path; stdout when absent.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

/// Validated parameters; serialized verbatim into the report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub complex: String,
    pub cochain: Option<String>,
    pub k: usize,
    pub ell: Option<usize>,
    #[serde(serialize_with = "opt_pq")]
    pub alpha: Option<Rational>,
    #[serde(serialize_with = "pq")]
    pub eta: Rational,
    #[serde(serialize_with = "pq")]
    pub epsilon: Rational,
    pub lambda: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
    pub format: Format,
    pub strict: bool,
    pub budget: u64,
}

fn pq<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format(x))
}

fn opt_pq<S: serde::Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_str(&format(r)),
        None => s.serialize_none(),
    }
}

/// Enumeration budget: `HDX_BUDGET` when set, else the library default.
pub fn budget_from_env() -> Result<u64, String> {
    match std::env::var("HDX_BUDGET") {
        Ok(v) => v.trim().parse::<u64>().map_err(|_| format!("HDX_BUDGET must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(hdx_core::DEFAULT_BUDGET),
    }
}

impl RunConfig {
    /// Range-checks `args` against a complex of dimension `d`; `cochain_dim`
    /// is the dimension of a supplied cochain.
    pub fn validate(
        command: &str,
        args: &AnalysisArgs,
        d: usize,
        cochain_dim: Option<usize>,
        budget: u64,
    ) -> Result<Self, String> {
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        let k = match (args.k, cochain_dim) {
            (Some(k), Some(c)) if k != c => return Err(format!("--k {k} disagrees with the {c}-cochain given")),
            (_, Some(c)) => c,
            (Some(k), None) => k,
            (None, None) => 1.min(d.saturating_sub(1)),
        };
        if k >= d {
            return Err(format!("k = {k} must be below the complex dimension {d}"));
        }
        if let Some(ell) = args.ell {
            if ell >= k {
                return Err(format!("--ell {ell} must be below k = {k}"));
            }
        }
        let epsilon = args.epsilon.clone().unwrap_or_else(|| Rational::new(1.into(), 10.into()));
        if epsilon <= zero || epsilon >= one {
            return Err(format!("--epsilon must lie in (0, 1), got {}", format(&epsilon)));
        }
        let eta = args.eta.clone().unwrap_or_else(|| &epsilon / Rational::from_integer((k as i64 + 1).into()));
        if eta <= zero || eta >= one {
            return Err(format!("--eta must lie in (0, 1), got {}", format(&eta)));
        }
        if let Some(a) = &args.alpha {
            if *a < one {
                return Err(format!("--alpha must be at least 1, got {}", format(a)));
            }
        }
        if let Some(l) = args.lambda {
            if !(-1.0..=1.0).contains(&l) {
                return Err(format!("--lambda must lie in [-1, 1], got {l}"));
            }
        }
        if args.samples == 0 || args.samples > 100_000 {
            return Err(format!("--samples must lie in 1..=100000, got {}", args.samples));
        }
        if args.workers == 0 || args.workers > 256 {
            return Err(format!("--workers must lie in 1..=256, got {}", args.workers));
        }
        Ok(RunConfig {
            command: command.to_string(),
            complex: args.complex.display().to_string(),
            cochain: args.cochain.as_ref().map(|p| p.display().to_string()),
            k,
            ell: args.ell,
            alpha: args.alpha.clone(),
            eta,
            epsilon,
            lambda: args.lambda,
            samples: args.samples,
            seed: args.seed,
            workers: args.workers,
            format: args.format,
            strict: args.strict,
            budget,
        })
    }
}
