//! Report assembly, the determinism hash, and JSON/CSV rendering.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use hdx_core::verdict::{fmt_float, CheckRecord};
use hdx_core::{SimplicialComplex, Verdict};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for Tool {
    fn default() -> Self {
        Tool { name: "hdx", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSummary {
    pub lambda_one_sided: String,
    pub lambda_two_sided: String,
    pub lambda_eff: String,
    /// The value used for λ in every bound: `--lambda` or `lambda_eff`.
    pub lambda_used: String,
    pub max_residual: String,
    pub links_scanned: usize,
    pub disconnected_links: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub path: String,
    pub dim: usize,
    pub vertices: usize,
    /// `|X(k)|` for `k = 0..=d`.
    pub face_counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub spectral: SpectralSummary,
}

impl ComplexSummary {
    pub fn new(path: &str, x: &SimplicialComplex, spectral: SpectralSummary) -> Self {
        ComplexSummary {
            path: path.to_string(),
            dim: x.dim(),
            vertices: x.num_vertices(),
            face_counts: (0..=x.dim()).map(|k| x.count(k)).collect(),
            euler_characteristic: x.euler_characteristic(),
            spectral,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub violated: usize,
    pub hypothesis_not_met: usize,
    pub infeasible: usize,
}

impl Summary {
    pub fn of(checks: &[CheckRecord]) -> Self {
        let mut s = Summary { total: checks.len(), ..Default::default() };
        for c in checks {
            match c.verdict {
                Verdict::Verified => s.verified += 1,
                Verdict::Violated => s.violated += 1,
                Verdict::HypothesisNotMet => s.hypothesis_not_met += 1,
                Verdict::Infeasible => s.infeasible += 1,
            }
        }
        s
    }
}

/// Everything covered by the determinism hash.
#[derive(Clone, Debug, Serialize)]
pub struct ReportBody {
    pub schema_version: u32,
    pub tool: Tool,
    pub config: RunConfig,
    pub complex: ComplexSummary,
    pub measurements: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub family: String,
    pub seconds: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_seconds: String,
    pub families: Vec<Timing>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    #[serde(flatten)]
    pub body: ReportBody,
    /// SHA-256 of the compact JSON of every field above.
    pub determinism_hash: String,
    pub timings: Timings,
}

impl Report {
    pub fn new(body: ReportBody, timings: Timings) -> Self {
        let bytes = serde_json::to_vec(&body).expect("report serializes");
        let determinism_hash = hex::encode(Sha256::digest(&bytes));
        Report { body, determinism_hash, timings }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per check.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "anchor", "verdict", "lhs", "rhs", "margin", "witness", "detail"])
            .expect("in-memory write");
        for c in &self.body.checks {
            let opt = |o: &Option<String>| o.clone().unwrap_or_default();
            w.write_record([
                c.name.clone(),
                c.anchor.clone(),
                c.verdict.as_str().to_string(),
                opt(&c.lhs),
                opt(&c.rhs),
                opt(&c.margin),
                opt(&c.witness),
                opt(&c.detail),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

pub fn seconds(d: std::time::Duration) -> String {
    fmt_float(d.as_secs_f64())
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
