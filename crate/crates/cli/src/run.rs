//! Argument handling, execution and exit codes.
//!
//! Exit codes: 0 when no check is violated, 1 when some check is violated,
//! 2 for usage errors and unreadable inputs, 3 under `--strict` when some
//! check was infeasible (and none violated).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;
use std::time::Instant;

use clap::Parser;
use hdx_core::generators::{GeneratorKind, GeneratorSpec};
use hdx_core::io::{read_cochain, read_complex, write_complex};
use hdx_core::spectral::local_spectral_lambda;
use hdx_core::verdict::fmt_float;
use rayon::prelude::*;

use crate::config::{budget_from_env, AnalysisArgs, Cli, Command, Format, GenerateArgs, RunConfig};
use crate::report::{
    seconds, write_atomic, ComplexSummary, Report, ReportBody, SpectralSummary, Summary, Timing, Timings, Tool,
    SCHEMA_VERSION,
};
use crate::suite::{Context, Family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: hdx_core::Error },
    #[error(transparent)]
    Core(#[from] hdx_core::Error),
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => write_atomic(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Generate(g) => generate(g),
        Command::Analyze(a)
        | Command::Balance(a)
        | Command::Spectra(a)
        | Command::Expansion(a)
        | Command::VerifyAll(a) => analyse(cli.command.name(), a).map(|(report, code)| {
            let s = &report.body.summary;
            eprintln!(
                "hdx {}: {} checks, {} verified, {} violated, {} hypothesis not met, {} infeasible",
                cli.command.name(),
                s.total,
                s.verified,
                s.violated,
                s.hypothesis_not_met,
                s.infeasible
            );
            code
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hdx: {e}");
            EXIT_USAGE
        }
    }
}

fn generate(args: &GenerateArgs) -> Result<i32, CliError> {
    let kind: GeneratorKind = args.kind.parse().map_err(|e: hdx_core::Error| CliError::Usage(e.to_string()))?;
    let spec = GeneratorSpec { kind, n: args.n, d: args.d, p: args.p, seed: args.seed };
    let built = spec.build().map_err(|e| CliError::Usage(e.to_string()))?;
    emit(args.output.as_deref(), &write_complex(&built.complex))?;
    eprintln!(
        "hdx generate: {} vertices, {} top faces of dimension {}, {} uncovered faces dropped",
        built.complex.num_vertices(),
        built.complex.num_top_faces(),
        built.complex.dim(),
        built.dropped_faces
    );
    Ok(EXIT_OK)
}

/// Runs an analysis command, writes the report, and returns it with the exit code.
pub fn analyse(command: &str, args: &AnalysisArgs) -> Result<(Report, i32), CliError> {
    let start = Instant::now();
    let path = args.complex.display().to_string();
    let x =
        read_complex(&read_file(&args.complex)?).map_err(|source| CliError::Input { path: path.clone(), source })?;
    let cochain = match &args.cochain {
        Some(p) => Some(
            read_cochain(&x, &read_file(p)?)
                .map_err(|source| CliError::Input { path: p.display().to_string(), source })?,
        ),
        None => None,
    };
    let budget = budget_from_env().map_err(CliError::Usage)?;
    if x.dim() == 0 {
        return Err(CliError::Usage("analysis needs a complex of dimension at least 1".into()));
    }
    let cfg = RunConfig::validate(command, args, x.dim(), cochain.as_ref().map(|c| c.dim()), budget)
        .map_err(CliError::Usage)?;
    let spectral = local_spectral_lambda(&x)?;
    let families = Family::for_command(command, cochain.is_some());
    let ctx = Context::new(x, cfg, cochain, spectral);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.cfg.workers)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", ctx.cfg.workers)))?;
    let results: Vec<_> = pool.install(|| {
        families
            .par_iter()
            .map(|f| {
                let t = Instant::now();
                let r = f.run(&ctx);
                (f.name(), t.elapsed(), r)
            })
            .collect()
    });

    let mut checks = Vec::new();
    let mut measurements = BTreeMap::new();
    let mut timings = Vec::new();
    for (name, elapsed, r) in results {
        let outcome = r?;
        checks.extend(outcome.records);
        measurements.extend(outcome.measurements);
        timings.push(Timing { family: name.to_string(), seconds: seconds(elapsed) });
    }

    let sp = &ctx.spectral;
    let spectral_summary = SpectralSummary {
        lambda_one_sided: fmt_float(sp.lambda_one_sided),
        lambda_two_sided: fmt_float(sp.lambda_two_sided),
        lambda_eff: fmt_float(sp.lambda_eff()),
        lambda_used: fmt_float(ctx.lambda),
        max_residual: fmt_float(sp.max_residual),
        links_scanned: sp.links.len(),
        disconnected_links: sp.links.iter().filter(|l| !l.connected).count(),
    };
    let summary = Summary::of(&checks);
    let body = ReportBody {
        schema_version: SCHEMA_VERSION,
        tool: Tool::default(),
        complex: ComplexSummary::new(&path, &ctx.x, spectral_summary),
        config: ctx.cfg.clone(),
        measurements,
        checks,
        summary,
    };
    let report = Report::new(body, Timings { total_seconds: seconds(start.elapsed()), families: timings });
    let text = match ctx.cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    emit(args.output.as_deref(), &text)?;
    let s = &report.body.summary;
    let code = if s.violated > 0 {
        EXIT_VIOLATED
    } else if ctx.cfg.strict && s.infeasible > 0 {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    };
    Ok((report, code))
}
